#ifndef PSOLV_THEOREMS_HPP
#define PSOLV_THEOREMS_HPP

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "error.hpp"
#include "filtration.hpp"
#include "fp_matrix.hpp"
#include "group.hpp"
#include "series.hpp"
#include "subgroup.hpp"
#include "verdict.hpp"

namespace psolv
{

namespace detail
{

inline unsigned long long ipow_checked(unsigned long long b, unsigned e)
{
  unsigned long long r = 1;
  while (e--) {
    if (r > (~0ull) / b)
      throw Error("integer overflow in prime power");
    r *= b;
  }
  return r;
}

inline void require_p_solvable(SeriesReport const &ups)
{
  if (!ups.is_p_solvable)
    throw NotPSolvable("group is not " + std::to_string(ups.prime) + "-solvable");
}

} // namespace detail

/// Scan for (r, s) with gamma_{l(p-1)}(P) <= gamma_r(P)^{p^s} and
/// l(p-1) < r + s(p-1), ascending s then r. Every hit is listed.
inline Verdict check_main_hypothesis(EkrFamily &fam, unsigned ell)
{
  if (ell == 0)
    throw Error("l must be at least 1");
  unsigned p = fam.prime();
  unsigned t = ell * (p - 1);
  Verdict v;
  v.statement = "main_hypothesis";
  v.report_only = true;
  v.parameters["p"] = p;
  v.parameters["l"] = ell;
  Group const &gt = fam.gamma_power(t, 0);
  auto c = static_cast<unsigned>(fam.nilpotency_class());
  unsigned r_max = std::max(c + 1, t + 1);
  std::size_t hits = 0;
  for (unsigned s = 0; s <= fam.exponent_log(); ++s)
    for (unsigned r = 1; r <= r_max; ++r) {
      if (t >= r + s * (p - 1))
        continue;
      if (!is_subgroup(gt, fam.gamma_power(r, s)))
        continue;
      if (hits++ == 0) {
        v.parameters["r"] = r;
        v.parameters["s"] = s;
      }
      v.witnesses.push_back({"(r,s)", "(" + std::to_string(r) + "," + std::to_string(s) + ")"});
    }
  v.hypothesis_holds = hits > 0;
  v.parameters["hits"] = static_cast<long long>(hits);
  v.parameters["special_case"] = is_subgroup(gt, fam.gamma_power(1, ell));
  v.parameters["scan_r_max"] = r_max;
  v.parameters["scan_s_max"] = fam.exponent_log();
  if (!hits)
    v.notes = "no qualifying (r,s) in the scanned range";
  return v;
}

inline Verdict check_thm6_hypothesis(EkrFamily &fam, unsigned ell)
{
  if (ell == 0)
    throw Error("l must be at least 1");
  unsigned p = fam.prime();
  unsigned t = ell * (p - 1);
  Verdict v;
  v.statement = "thm6_hypothesis";
  v.report_only = true;
  v.parameters["p"] = p;
  v.parameters["l"] = ell;
  Group const &gt = fam.gamma_power(t, 0);
  Group e = fam.compute(t + 1, 1).subgroup;
  v.hypothesis_holds = is_subgroup(gt, e);
  v.parameters["gamma_order"] = static_cast<long long>(gt.order());
  v.parameters["ekr_order"] = static_cast<long long>(e.order());
  if (auto w = escaping_generator(gt, e))
    v.witnesses.push_back({"gamma_{l(p-1)} element outside E_{l(p-1)+1,1}", describe(*w)});
  return v;
}

/// The (r,s) hypothesis implies gamma_{l(p-1)} <= E_{l(p-1)+1,1} (asserted).
inline Verdict check_hypothesis_implication(EkrFamily &fam, unsigned ell)
{
  auto mh = check_main_hypothesis(fam, ell);
  auto th = check_thm6_hypothesis(fam, ell);
  Verdict v;
  v.statement = "main_implies_thm6";
  v.parameters["p"] = fam.prime();
  v.parameters["l"] = ell;
  v.hypothesis_holds = mh.hypothesis_holds;
  if (v.hypothesis_holds)
    v.conclusion_holds = th.hypothesis_holds;
  v.witnesses = th.witnesses;
  return v;
}

enum class ChainHypothesis { main, thm6 };

/// Least l >= 1 satisfying the chosen hypothesis. gamma_{l(p-1)} = 1 once
/// l(p-1) exceeds the class, so the scan always ends.
inline unsigned minimal_ell(EkrFamily &fam, ChainHypothesis which)
{
  for (unsigned ell = 1;; ++ell) {
    bool ok = which == ChainHypothesis::main ? check_main_hypothesis(fam, ell).hypothesis_holds
                                              : check_thm6_hypothesis(fam, ell).hypothesis_holds;
    if (ok)
      return ell;
    if (ell * (fam.prime() - 1) > static_cast<unsigned>(fam.nilpotency_class()) + 1)
      throw InternalMismatch("hypothesis fails although gamma_{l(p-1)} is trivial");
  }
}

/// The links of the exponent chain with
/// E = E_{(l-1)(p-1),1}(P): (i) E^{p^2} <= O_{p',p}(G); (ii) P/E^{p^2} has
/// exponent dividing p^{l+1}, and P^{p^{l+1}} <= E^{p^2}; (iii) the exponent
/// of P O_{p',p}/O_{p',p} divides that of P/E^{p^2}.
inline Verdict verify_main(Group const &g, unsigned p, unsigned ell,
                           ChainHypothesis which = ChainHypothesis::main,
                           Limits const &lim = {})
{
  if (ell == 0)
    throw Error("l must be at least 1");
  auto ups = upper_p_series(g, p, lim);
  detail::require_p_solvable(ups);
  Group P = sylow(g, p, lim);
  EkrFamily fam(P, p, lim);

  Verdict v;
  v.statement = which == ChainHypothesis::main ? "main" : "thm6";
  v.parameters["p"] = p;
  v.parameters["l"] = ell;
  v.parameters["p_length"] = ups.p_length;
  v.parameters["sylow_order"] = static_cast<long long>(P.order());
  v.parameters["sylow_exponent_log"] = fam.exponent_log();

  auto mh = check_main_hypothesis(fam, ell);
  auto th = check_thm6_hypothesis(fam, ell);
  v.parameters["main_hypothesis"] = mh.hypothesis_holds;
  v.parameters["thm6_hypothesis"] = th.hypothesis_holds;
  if (mh.hypothesis_holds) {
    v.parameters["r"] = mh.parameters["r"];
    v.parameters["s"] = mh.parameters["s"];
  }
  v.hypothesis_holds =
    which == ChainHypothesis::main ? mh.hypothesis_holds || th.hypothesis_holds
                                   : th.hypothesis_holds;

  Group e = fam.compute((ell - 1) * (p - 1), 1).subgroup;
  Group e2 = power_subgroup(e, static_cast<unsigned long long>(p) * p, lim);
  Group opp = ups.terms.size() > 2 ? ups.terms[2].group : g;
  auto bound = detail::ipow_checked(p, ell + 1);
  auto exp_e2 = exponent_modulo(P, e2, lim);
  auto exp_opp = exponent_modulo(P, opp, lim);
  bool link1 = is_subgroup(e2, opp);
  bool link2 = bound % exp_e2 == 0 &&
               is_subgroup(power_subgroup(P, bound, lim), e2);
  bool link3 = exp_e2 % exp_opp == 0;
  v.parameters["E_order"] = static_cast<long long>(e.order());
  v.parameters["E_p2_order"] = static_cast<long long>(e2.order());
  v.parameters["O_pprime_p_order"] = static_cast<long long>(opp.order());
  v.parameters["exp_P_mod_E_p2"] = static_cast<long long>(exp_e2);
  v.parameters["exp_P_mod_O_pprime_p"] = static_cast<long long>(exp_opp);
  v.parameters["bound"] = static_cast<long long>(bound);
  v.parameters["link_i"] = link1;
  v.parameters["link_ii"] = link2;
  v.parameters["link_iii"] = link3;
  v.parameters["exp_image_divides_bound"] = bound % exp_opp == 0;
  if (!link1)
    if (auto w = escaping_generator(e2, opp))
      v.witnesses.push_back({"element of E^{p^2} outside O_{p',p}(G)", describe(*w)});
  if (v.hypothesis_holds)
    v.conclusion_holds = link1 && link2 && link3 && bound % exp_opp == 0;
  return v;
}

namespace detail
{

inline bool is_sylow_of(Group const &g, Group const &P, unsigned p)
{
  return is_subgroup(P, g) && P.order() == p_part(g.order(), p);
}

// Hypothesis shared by the type p-2 and type p-1 embedding checks.
inline Verdict filtration_statement(std::string id, Group const &g, unsigned p,
                                    Group const &n, Filtration const &f,
                                    unsigned want_type, Limits const &lim)
{
  Verdict v;
  v.statement = std::move(id);
  v.parameters["p"] = p;
  v.parameters["l"] = f.type_ell;
  v.parameters["N_order"] = static_cast<long long>(n.order());
  std::string why;
  if (f.prime != p || f.type_ell != want_type)
    why = "filtration has the wrong prime or type";
  else if (!detail::is_sylow_of(g, f.ambient, p))
    why = "filtration ambient group is not a Sylow subgroup of G";
  else if (f.terms.empty() || !same_group(f.terms.front(), n))
    why = "filtration does not start at N";
  else if (auto pv = verify_potent_filtration(f, lim); !pv.valid)
    why = "filtration " + describe(pv);
  v.hypothesis_holds = why.empty();
  v.notes = why;
  return v;
}

} // namespace detail

/// N PF-embedded of type p-2 in P implies N <= O_{p',p}(G); p >= 3.
inline Verdict verify_prop3(Group const &g, unsigned p, Group const &n,
                            Filtration const &f, Limits const &lim = {})
{
  if (p < 3)
    throw PreconditionViolated("type p-2 needs p >= 3");
  auto ups = upper_p_series(g, p, lim);
  detail::require_p_solvable(ups);
  auto v = detail::filtration_statement("prop3", g, p, n, f, p - 2, lim);
  Group opp = ups.terms.size() > 2 ? ups.terms[2].group : g;
  v.parameters["O_pprime_p_order"] = static_cast<long long>(opp.order());
  if (v.hypothesis_holds) {
    v.conclusion_holds = is_subgroup(n, opp);
    if (auto w = escaping_generator(n, opp))
      v.witnesses.push_back({"element of N outside O_{p',p}(G)", describe(*w)});
  }
  return v;
}

/// N PF-embedded of type p-1 in P implies N^p (p >= 5), N^{p^2} (p = 3),
/// or N (p = 2) lies in O_{p',p}(G).
inline Verdict verify_prop4(Group const &g, unsigned p, Group const &n,
                            Filtration const &f, Limits const &lim = {})
{
  auto ups = upper_p_series(g, p, lim);
  detail::require_p_solvable(ups);
  auto v = detail::filtration_statement("prop4", g, p, n, f, p - 1, lim);
  Group opp = ups.terms.size() > 2 ? ups.terms[2].group : g;
  v.parameters["O_pprime_p_order"] = static_cast<long long>(opp.order());
  unsigned long long q = p >= 5 ? p : p == 3 ? 9 : 1;
  v.parameters["power"] = static_cast<long long>(q);
  if (v.hypothesis_holds) {
    Group nq = power_subgroup(n, q, lim);
    v.conclusion_holds = is_subgroup(nq, opp);
    if (auto w = escaping_generator(nq, opp))
      v.witnesses.push_back({"element of N^q outside O_{p',p}(G)", describe(*w)});
  }
  return v;
}

/// With O_{p'}(G) = 1 and N normal: [O_p(G), N, ..., N] = 1 (l copies)
/// implies N <= O_p(G).
inline Verdict verify_lemma8(Group const &g, unsigned p, Group const &n, unsigned l,
                             Limits const &lim = {})
{
  auto ups = upper_p_series(g, p, lim);
  detail::require_p_solvable(ups);
  if (!o_pprime(g, p, lim).is_trivial())
    throw PreconditionViolated("O_{p'}(G) is not trivial");
  if (!is_subgroup(n, g) || !is_normal(g, n))
    throw NotNormal("N is not a normal subgroup of G");
  Group op = o_p(g, p, lim);
  Group lhs = l == 0 ? op : iterated_commutator(op, n, l);
  Verdict v;
  v.statement = "lemma8";
  v.parameters["p"] = p;
  v.parameters["l"] = l;
  v.parameters["N_order"] = static_cast<long long>(n.order());
  v.parameters["O_p_order"] = static_cast<long long>(op.order());
  v.parameters["commutator_order"] = static_cast<long long>(lhs.order());
  v.hypothesis_holds = lhs.is_trivial();
  if (v.hypothesis_holds) {
    v.conclusion_holds = is_subgroup(n, op);
    if (auto w = escaping_generator(n, op))
      v.witnesses.push_back({"element of N outside O_p(G)", describe(*w)});
  }
  return v;
}

/// [V, M^{p^{r+l}}] <= [V,M]^{p^{r+l}} * prod_{i=1}^{r+l} [V,_{p^i} M]^{p^{r+l-i}}
/// for a p-subgroup V normalized by M.
inline Verdict check_O24_inclusion(Group const &parent, Group const &vg, Group const &m,
                                   unsigned p, unsigned r, unsigned l,
                                   Limits const &lim = {})
{
  check_degree(parent, vg);
  check_degree(parent, m);
  if (!is_prime(p))
    throw Error("not a prime: " + std::to_string(p));
  Verdict v;
  v.statement = "o24";
  v.parameters["p"] = p;
  v.parameters["r"] = r;
  v.parameters["l"] = l;
  v.parameters["V_order"] = static_cast<long long>(vg.order());
  v.parameters["M_order"] = static_cast<long long>(m.order());
  bool inside = is_subgroup(vg, parent) && is_subgroup(m, parent);
  bool normalized = is_normal(join(vg, m), vg);
  v.hypothesis_holds = inside && is_p_group(vg, p) && normalized;
  if (!v.hypothesis_holds) {
    v.notes = !inside ? "V or M is not inside the parent group"
                      : "V is not a p-group normalized by M";
    return v;
  }
  unsigned n = r + l;
  auto big = detail::ipow_checked(p, n);
  Group lhs = commutator(vg, power_subgroup(m, big, lim));
  std::vector<Group> parts{power_subgroup(commutator(vg, m), big, lim)};
  for (unsigned i = 1; i <= n; ++i) {
    // stops as soon as the series is stable, so large p^i are cheap
    Group c = iterated_commutator(vg, m, static_cast<unsigned>(detail::ipow_checked(p, i)));
    parts.push_back(power_subgroup(c, detail::ipow_checked(p, n - i), lim));
  }
  Group rhs = join_all(parent.degree(), parts);
  v.parameters["lhs_order"] = static_cast<long long>(lhs.order());
  v.parameters["rhs_order"] = static_cast<long long>(rhs.order());
  v.conclusion_holds = is_subgroup(lhs, rhs);
  if (auto w = escaping_generator(lhs, rhs))
    v.witnesses.push_back({"element of the left side outside the right side", describe(*w)});
  return v;
}

/// An elementary abelian p-group V as a vector space over the p-element
/// field. The basis is the greedy selection from V's generators: each kept
/// generator lies outside the span of the earlier ones.
class LinearAction
{
public:
  explicit LinearAction(Group v, unsigned p = 0, Limits const &lim = {})
  : v_(std::move(v))
  , p_(p)
  {
    auto const &gens = v_.generators();
    for (auto const &a : gens) {
      auto o = a.order();
      if (p_ == 0)
        p_ = static_cast<unsigned>(o);
      if (o != p_ || !is_prime(o))
        throw KernelNotElementaryAbelian("generator of order " + std::to_string(o));
      for (auto const &b : gens)
        if (a * b != b * a)
          throw KernelNotElementaryAbelian("kernel is not abelian");
    }
    if (p_ == 0)
      p_ = 2;
    for (auto const &a : gens)
      if (!Group(v_.degree(), basis_).contains(a))
        basis_.push_back(a);

    auto n = v_.order();
    if (n > lim.enum_cap)
      throw CapExceeded("vector space enumeration", n, lim.enum_cap);
    std::vector<Perm> elems{Perm(v_.degree())};
    std::vector<std::vector<unsigned>> coords{std::vector<unsigned>(basis_.size(), 0)};
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      auto size = elems.size();
      Perm step = basis_[i];
      for (unsigned c = 1; c < p_; ++c, step *= basis_[i])
        for (std::size_t k = 0; k < size; ++k) {
          elems.push_back(elems[k] * step);
          coords.push_back(coords[k]);
          coords.back()[i] = c;
        }
    }
    for (std::size_t k = 0; k < elems.size(); ++k)
      table_.emplace(std::move(elems[k]), std::move(coords[k]));
  }

  unsigned prime() const { return p_; }
  std::size_t dim() const { return basis_.size(); }
  std::vector<Perm> const &basis() const { return basis_; }
  Group const &space() const { return v_; }

  std::vector<unsigned> coords(Perm const &x) const
  {
    auto it = table_.find(x);
    if (it == table_.end())
      throw PreconditionViolated("element " + x.to_cycles() + " is not in V");
    return it->second;
  }

  /// T(g): row i holds the coordinates of b_i^g. Re-checks
  /// v(T(g) - 1) = [v, g] on the basis.
  FpMatrix matrix(Perm const &g) const
  {
    auto d = dim();
    FpMatrix t(p_, d);
    for (std::size_t i = 0; i < d; ++i) {
      Perm img = basis_[i].conjugate_by(g);
      if (!v_.contains(img))
        throw PreconditionViolated("element does not normalize V");
      auto row = coords(img);
      auto comm = coords(commutator(basis_[i], g));
      for (std::size_t j = 0; j < d; ++j) {
        t.set(i, j, row[j]);
        auto expect = (row[j] + p_ - (i == j ? 1u : 0u)) % p_;
        if (expect != comm[j])
          throw InternalMismatch("v(T(g)-1) differs from [v,g]");
      }
    }
    return t;
  }

private:
  Group v_;
  unsigned p_;
  std::vector<Perm> basis_;
  std::unordered_map<Perm, std::vector<unsigned>, PermHash> table_;
};

inline FpMatrix action_matrix(QuotientGroup const &q, Perm const &g)
{ return LinearAction(q.kernel).matrix(g); }

/// p_length(G) <= log_p exp(P) for odd p; report-only for p = 2.
inline Verdict check_hall_higman(Group const &g, unsigned p, Limits const &lim = {})
{
  auto ups = upper_p_series(g, p, lim);
  detail::require_p_solvable(ups);
  Group P = sylow(g, p, lim);
  auto e = log_p(exponent(P, lim), p);
  Verdict v;
  v.statement = "hall_higman";
  v.report_only = p == 2;
  v.parameters["p"] = p;
  v.parameters["p_length"] = ups.p_length;
  v.parameters["sylow_exponent_log"] = e;
  v.hypothesis_holds = !P.is_trivial();
  if (v.hypothesis_holds)
    v.conclusion_holds = ups.p_length <= e;
  return v;
}

struct Question7Row
{
  std::string n;
  unsigned long long n_order = 0;
  bool in_o_pprime_p = false;
  bool in_o_p_pprime = false;
  std::string filtration;
};

struct Question7Entry
{
  std::string group_id;
  bool scanned = false;
  std::string reason;
  unsigned long long searched = 0;
  unsigned long long exhausted = 0;
  std::vector<Question7Row> rows;
};

/// O_{p,p'}(G): preimage of O_{p'}(G/O_p(G)).
inline Group o_p_pprime(Group const &g, unsigned p, Limits const &lim = {})
{
  Group k = o_p(g, p, lim);
  if (k.is_trivial())
    return o_pprime(g, p, lim);
  auto q = quotient(g, k, lim);
  return preimage(q, o_pprime(q.image, p, lim));
}

/// For one group: every normal N of a Sylow p-subgroup that the exact search
/// shows PF-embedded of type p-1, with its containment in O_{p',p}(G) (and,
/// for comparison, O_{p,p'}(G)). Never asserts.
inline Question7Entry question7_entry(std::string id, Group const &g, unsigned p,
                                      unsigned long long budget, Limits const &lim = {})
{
  Question7Entry e{std::move(id)};
  auto ups = upper_p_series(g, p, lim);
  if (!ups.is_p_solvable) {
    e.reason = "not p-solvable";
    return e;
  }
  Group P = sylow(g, p, lim);
  if (P.is_trivial()) {
    e.reason = "trivial Sylow subgroup";
    return e;
  }
  PFSearcher s(P, p, p - 1, lim);
  if (!s.in_regime()) {
    e.reason = "Sylow subgroup too large for exhaustive search";
    return e;
  }
  e.scanned = true;
  Group opp = ups.terms.size() > 2 ? ups.terms[2].group : g;
  Group oppr = o_p_pprime(g, p, lim);
  for (auto const &n : s.normal_subgroups_of_p()) {
    auto r = s.search(n, budget);
    ++e.searched;
    if (r.status == SearchStatus::exhausted)
      ++e.exhausted;
    if (r.status != SearchStatus::found)
      continue;
    Question7Row row{describe(n), n.order(), is_subgroup(n, opp), is_subgroup(n, oppr), {}};
    for (auto const &t : r.filtration->terms)
      row.filtration += (row.filtration.empty() ? "" : " > ") + std::to_string(t.order());
    e.rows.push_back(std::move(row));
  }
  return e;
}

inline std::vector<Question7Entry>
question7_scan(std::vector<std::pair<std::string, Group>> const &selection, unsigned p,
               unsigned long long budget, Limits const &lim = {})
{
  std::vector<Question7Entry> res;
  for (auto const &[id, g] : selection)
    res.push_back(question7_entry(id, g, p, budget, lim));
  return res;
}

inline Verdict to_verdict(Question7Entry const &e, unsigned p)
{
  Verdict v;
  v.statement = "question7";
  v.report_only = true;
  v.parameters["p"] = p;
  v.notes = "containment checked against O_{p',p}(G); O_{p,p'}(G) recorded alongside";
  if (!e.scanned) {
    v.notes = "skipped: " + e.reason;
    return v;
  }
  long long supporting = 0, candidates = 0;
  for (auto const &row : e.rows) {
    if (row.in_o_pprime_p)
      ++supporting;
    else {
      ++candidates;
      v.witnesses.push_back({"N outside O_{p',p}(G), filtration orders " + row.filtration, row.n});
    }
  }
  v.hypothesis_holds = !e.rows.empty();
  if (v.hypothesis_holds)
    v.conclusion_holds = candidates == 0;
  v.parameters["normal_subgroups_searched"] = static_cast<long long>(e.searched);
  v.parameters["searches_exhausted"] = static_cast<long long>(e.exhausted);
  v.parameters["pf_embedded"] = static_cast<long long>(e.rows.size());
  v.parameters["supporting"] = supporting;
  v.parameters["counterexample_candidates"] = candidates;
  long long in_other = 0;
  for (auto const &row : e.rows)
    in_other += row.in_o_p_pprime;
  v.parameters["in_O_p_pprime"] = in_other;
  return v;
}

} // namespace psolv

#endif // PSOLV_THEOREMS_HPP
