#ifndef PSOLV_DRIVER_HPP
#define PSOLV_DRIVER_HPP

#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <future>
#include <random>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "error.hpp"
#include "filtration.hpp"
#include "report.hpp"
#include "series.hpp"
#include "theorems.hpp"

namespace psolv
{

struct BatteryOptions
{
  unsigned p = 2;
  std::uint64_t seed = 0;
  Limits lim;
  unsigned random_pairs = 1000;
  bool timing = false;
  unsigned jobs = 1;
};

/// Orders and series of G at p as a report-only verdict.
inline Verdict analyze(Group const &g, unsigned p, Limits const &lim = {})
{
  if (!is_prime(p))
    throw Error("not a prime: " + std::to_string(p));
  Verdict v;
  v.statement = "analyze";
  v.report_only = true;
  v.hypothesis_holds = true;
  v.parameters["p"] = p;
  v.parameters["degree"] = static_cast<long long>(g.degree());
  v.parameters["order"] = static_cast<long long>(g.order());
  auto ups = upper_p_series(g, p, lim);
  v.parameters["p_length"] = ups.p_length;
  v.parameters["p_solvable"] = ups.is_p_solvable;
  Group P = sylow(g, p, lim);
  v.parameters["sylow_order"] = static_cast<long long>(P.order());
  v.parameters["O_p_order"] = static_cast<long long>(o_p(g, p, lim).order());
  v.parameters["O_pprime_order"] = static_cast<long long>(o_pprime(g, p, lim).order());
  v.parameters["sylow_exponent"] = static_cast<long long>(exponent(P, lim));
  auto lcs = lower_central_series(P);
  v.parameters["sylow_class"] = nilpotency_class(lcs);
  auto ds = derived_series(g);
  v.parameters["solvable"] = ds.terms.back().group.is_trivial();
  for (auto const &t : ups.terms)
    v.witnesses.push_back({"upper " + t.label, describe(t.group)});
  for (auto const &t : lcs.terms)
    v.witnesses.push_back({"sylow " + t.label, describe(t.group)});
  for (auto const &t : ds.terms)
    v.witnesses.push_back({t.label, describe(t.group)});
  if (!ups.is_p_solvable)
    v.notes = "not p-solvable: the upper p-series stalls";
  return v;
}

/// Folds many instances of one statement into a single verdict. The first
/// violating instance supplies the witnesses.
class Tally
{
public:
  explicit Tally(std::string statement, bool report_only = false)
  {
    v_.statement = std::move(statement);
    v_.report_only = report_only;
  }

  void add(Verdict const &x)
  {
    ++instances_;
    if (!x.hypothesis_holds)
      return;
    ++hyp_;
    if (x.conclusion_holds.value_or(false)) {
      ++holds_;
      return;
    }
    if (v_.witnesses.empty()) {
      std::string params;
      for (auto const &[k, val] : x.parameters)
        params += (params.empty() ? "" : " ") + k + "=" + std::to_string(val);
      v_.witnesses.push_back({"first violation", params});
      for (auto const &w : x.witnesses)
        v_.witnesses.push_back(w);
    }
  }

  void note(std::string const &s) { v_.notes += (v_.notes.empty() ? "" : "; ") + s; }
  long long instances() const { return instances_; }

  Verdict finish(unsigned p) const
  {
    Verdict v = v_;
    v.parameters["p"] = p;
    v.parameters["instances"] = instances_;
    v.parameters["hypothesis_count"] = hyp_;
    v.parameters["conclusion_count"] = holds_;
    v.hypothesis_holds = hyp_ > 0;
    if (hyp_ > 0)
      v.conclusion_holds = holds_ == hyp_;
    return v;
  }

private:
  Verdict v_;
  long long instances_ = 0, hyp_ = 0, holds_ = 0;
};

namespace detail
{

inline Verdict error_verdict(std::string const &statement, std::exception const &e)
{
  Verdict v;
  v.statement = statement;
  v.report_only = true;
  v.notes = std::string("not evaluated: ") + e.what();
  return v;
}

inline Verdict linear_action_verdict(Group const &g, Group const &op, unsigned p,
                                     BatteryOptions const &opt)
{
  Verdict v;
  v.statement = "linear_action";
  v.parameters["p"] = p;
  LinearAction act(op, p, opt.lim);
  v.hypothesis_holds = true;
  v.parameters["dim"] = static_cast<long long>(act.dim());
  std::mt19937_64 rng(opt.seed);
  bool hom = true;
  for (unsigned k = 0; k < opt.random_pairs && hom; ++k) {
    auto a = g.random_element_from(rng), b = g.random_element_from(rng);
    if (act.matrix(a * b) != act.matrix(a) * act.matrix(b)) {
      hom = false;
      v.witnesses.push_back({"T(gh) != T(g)T(h) for g", describe(a)});
      v.witnesses.push_back({"h", describe(b)});
    }
  }
  // matrix() re-checks v(T(g)-1) = [v,g] on the basis and throws otherwise
  for (auto const &x : g.generators())
    act.matrix(x);
  v.parameters["random_pairs"] = opt.random_pairs;
  v.parameters["seed"] = static_cast<long long>(opt.seed);
  v.conclusion_holds = hom;
  return v;
}

} // namespace detail

/// Every statement check for one group at one prime.
inline std::vector<Verdict> run_battery(Group const &g, BatteryOptions const &opt)
{
  unsigned p = opt.p;
  auto const &lim = opt.lim;
  std::vector<Verdict> out;
  auto guarded = [&](std::string const &statement, auto &&fn) {
    try {
      fn();
    } catch (Error const &e) {
      out.push_back(detail::error_verdict(statement, e));
    }
  };

  out.push_back(analyze(g, p, lim));
  auto ups = upper_p_series(g, p, lim);
  if (g.order() % p != 0 || !ups.is_p_solvable)
    return out;
  Group P = sylow(g, p, lim);
  EkrFamily fam(P, p, lim);

  unsigned ell_main = 1;
  guarded("main_implies_thm6", [&] {
    Tally t("main_implies_thm6");
    auto c = static_cast<unsigned>(fam.nilpotency_class());
    for (unsigned ell = 1; ell <= c + 1; ++ell)
      t.add(check_hypothesis_implication(fam, ell));
    out.push_back(t.finish(p));
  });
  guarded("main", [&] {
    ell_main = minimal_ell(fam, ChainHypothesis::main);
    out.push_back(verify_main(g, p, ell_main, ChainHypothesis::main, lim));
  });
  guarded("thm6", [&] {
    out.push_back(verify_main(g, p, minimal_ell(fam, ChainHypothesis::thm6),
                              ChainHypothesis::thm6, lim));
  });
  guarded("hall_higman", [&] { out.push_back(check_hall_higman(g, p, lim)); });

  guarded("ekr_candidates", [&] {
    unsigned k = (ell_main - 1) * (p - 1);
    Verdict v;
    v.statement = "ekr_candidates";
    v.report_only = true;
    v.hypothesis_holds = true;
    v.parameters["p"] = p;
    v.parameters["k"] = k;
    v.parameters["r"] = 1;
    v.parameters["l"] = ell_main;
    Tally prop1("prop1_on_ekr");
    long long valid = 0;
    for (auto const &c : ekr_pf_candidates(fam, k, 1, lim)) {
      std::string orders;
      for (auto const &t : c.filtration.terms)
        orders += (orders.empty() ? "" : " > ") + std::to_string(t.order());
      v.witnesses.push_back({"candidate " + c.name + " (" + orders + ")", describe(c.verdict)});
      if (c.verdict.valid) {
        ++valid;
        prop1.add(check_prop1(c.filtration, lim));
      }
    }
    v.parameters["valid_candidates"] = valid;
    v.conclusion_holds = valid > 0;
    out.push_back(v);
    if (valid)
      out.push_back(prop1.finish(p));
  });

  guarded("pf_search", [&] {
    Tally prop1("prop1");
    Tally prop3("prop3");
    Tally prop4("prop4");
    std::vector<unsigned> types{p - 1};
    if (p >= 3)
      types.push_back(p - 2);
    long long found = 0, exhausted = 0;
    for (unsigned ell : types) {
      PFSearcher s(P, p, ell, lim);
      if (!s.in_regime()) {
        prop1.note("Sylow subgroup outside the exhaustive-search range");
        break;
      }
      for (auto const &n : s.normal_subgroups_of_p()) {
        auto r = s.search(n, lim.search_budget);
        exhausted += r.status == SearchStatus::exhausted;
        if (r.status != SearchStatus::found)
          continue;
        ++found;
        prop1.add(check_prop1(*r.filtration, lim));
        if (ell == p - 1)
          prop4.add(verify_prop4(g, p, n, *r.filtration, lim));
        else
          prop3.add(verify_prop3(g, p, n, *r.filtration, lim));
      }
    }
    if (p == 2)
      prop1.note("type 0 is not searched for p = 2");
    auto v1 = prop1.finish(p);
    v1.parameters["filtrations_found"] = found;
    v1.parameters["searches_exhausted"] = exhausted;
    out.push_back(v1);
    if (p >= 3)
      out.push_back(prop3.finish(p));
    out.push_back(prop4.finish(p));
  });

  Group op = o_p(g, p, lim);
  guarded("lemma8", [&] {
    if (!o_pprime(g, p, lim).is_trivial())
      return;
    Tally t("lemma8");
    for (auto const &n : normal_subgroups(g, lim))
      for (unsigned l = 1; l <= 3; ++l)
        t.add(verify_lemma8(g, p, n, l, lim));
    out.push_back(t.finish(p));
  });

  guarded("o24", [&] {
    Tally t("o24");
    for (Group const *m : std::array<Group const *, 3>{&P, &op, &g})
      for (auto [r, l] : {std::pair{1u, 1u}, std::pair{2u, 1u}, std::pair{1u, 2u}})
        t.add(check_O24_inclusion(g, op, *m, p, r, l, lim));
    out.push_back(t.finish(p));
  });

  guarded("linear_action", [&] {
    if (op.is_trivial())
      return;
    try {
      out.push_back(detail::linear_action_verdict(g, op, p, opt));
    } catch (KernelNotElementaryAbelian const &) {
    }
  });

  guarded("question7", [&] {
    out.push_back(to_verdict(question7_entry("", g, p, lim.search_budget, lim), p));
  });
  return out;
}

inline std::vector<Report> battery_reports(std::string const &id, Group const &g,
                                           BatteryOptions const &opt)
{
  auto t0 = std::chrono::steady_clock::now();
  std::vector<Report> res;
  for (auto &v : run_battery(g, opt)) {
    Report r;
    r.group_id = id;
    r.statement_id = v.statement;
    r.verdict = std::move(v);
    res.push_back(std::move(r));
  }
  if (opt.timing && !res.empty()) {
    std::chrono::duration<double, std::milli> dt = std::chrono::steady_clock::now() - t0;
    res.front().timing_ms = dt.count();
  }
  return res;
}

/// Runs the battery over recipes. Groups may be processed concurrently; the
/// output order is the input order.
inline std::vector<Report> run_catalog(std::vector<std::string> const &recipes,
                                       BatteryOptions const &opt)
{
  std::vector<std::vector<Report>> parts(recipes.size());
  auto one = [&](std::size_t i) {
    try {
      parts[i] = battery_reports(recipes[i], build(recipes[i]), opt);
    } catch (Error const &e) {
      Report r;
      r.group_id = recipes[i];
      r.statement_id = "build";
      r.verdict = detail::error_verdict("build", e);
      parts[i] = {r};
    }
  };
  if (opt.jobs <= 1) {
    for (std::size_t i = 0; i < recipes.size(); ++i)
      one(i);
  } else {
    std::vector<std::future<void>> running;
    std::size_t next = 0;
    while (next < recipes.size() || !running.empty()) {
      while (next < recipes.size() && running.size() < opt.jobs) {
        running.push_back(std::async(std::launch::async, one, next));
        ++next;
      }
      running.front().get();
      running.erase(running.begin());
    }
  }
  std::vector<Report> res;
  for (auto &p : parts)
    res.insert(res.end(), p.begin(), p.end());
  return res;
}

inline std::vector<std::string> catalog_recipes()
{
  std::vector<std::string> res;
  for (auto const &e : catalog())
    res.push_back(e.recipe);
  return res;
}

} // namespace psolv

#endif // PSOLV_DRIVER_HPP
