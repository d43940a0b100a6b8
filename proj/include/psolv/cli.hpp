#ifndef PSOLV_CLI_HPP
#define PSOLV_CLI_HPP

#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "catalog.hpp"
#include "driver.hpp"
#include "filtration.hpp"
#include "group_io.hpp"
#include "report.hpp"
#include "series.hpp"
#include "theorems.hpp"

namespace psolv::cli
{

struct Invocation
{
  std::string recipe;
  std::string file;
  unsigned p = 2;
  std::optional<unsigned> ell;
  std::optional<unsigned> k;
  std::optional<unsigned> r;
  std::optional<unsigned> s;
  std::string normal;
  std::string m;
  std::vector<std::string> terms;
  std::vector<std::string> recipes;
  Limits lim;
  std::uint64_t seed = 0;
  std::string format = "text";
  unsigned jobs = 1;
  bool timing = false;
};

inline std::uint64_t default_seed()
{
  if (char const *s = std::getenv("PSOLV_SEED")) {
    try {
      return std::stoull(s);
    } catch (std::exception const &) {
      throw Error(std::string("PSOLV_SEED is not a number: ") + s);
    }
  }
  return 0;
}

/// Resolves subgroup names against a group G at the prime p.
///   trivial, whole, sylow, op, opp (O_{p',p}), oppr (O_{p'}), derived,
///   frattini, gamma:i, ekr:k:r (the last three inside the Sylow subgroup),
///   V4 (a normal Klein four-group), gens:<cycles>;<cycles>;...
class SubgroupNames
{
public:
  SubgroupNames(Group g, unsigned p, Limits lim) : g_(std::move(g)), p_(p), lim_(lim) {}

  Group const &group() const { return g_; }

  Group const &sylow_subgroup()
  {
    if (!sylow_)
      sylow_ = sylow(g_, p_, lim_);
    return *sylow_;
  }

  EkrFamily &family()
  {
    if (!fam_)
      fam_.emplace(sylow_subgroup(), p_, lim_);
    return *fam_;
  }

  Group resolve(std::string const &name)
  {
    auto fields = split(name, ':');
    auto const &head = fields.front();
    auto arity = [&](std::size_t n) {
      if (fields.size() != n + 1)
        throw Error("subgroup name '" + name + "' expects " + std::to_string(n) + " argument(s)");
    };
    if (head == "gens")
      return from_gens(name.substr(5));
    if (head == "gamma") {
      arity(1);
      unsigned i = number(fields[1], name);
      if (i == 0)
        throw Error("gamma:i needs i >= 1");
      return gamma(family().lower_central(), i);
    }
    if (head == "ekr") {
      arity(2);
      return compute_ekr(sylow_subgroup(), p_, number(fields[1], name), number(fields[2], name), lim_);
    }
    arity(0);
    if (head == "trivial")
      return Group::trivial(g_.degree());
    if (head == "whole")
      return g_;
    if (head == "sylow")
      return sylow_subgroup();
    if (head == "op")
      return o_p(g_, p_, lim_);
    if (head == "oppr")
      return o_pprime(g_, p_, lim_);
    if (head == "opp")
      return o_pprime_p(g_, p_, lim_);
    if (head == "derived")
      return commutator(g_, g_);
    if (head == "frattini")
      return frattini_p(sylow_subgroup(), p_, lim_);
    if (head == "V4") {
      for (auto const &n : normal_subgroups(g_, lim_))
        if (n.order() == 4 && exponent(n, lim_) == 2)
          return n;
      throw Error("no normal Klein four-subgroup");
    }
    throw Error("unknown subgroup name '" + name + "'");
  }

private:
  static std::vector<std::string> split(std::string const &s, char sep)
  {
    std::vector<std::string> out(1);
    for (char c : s) {
      if (c == sep)
        out.emplace_back();
      else
        out.back() += c;
    }
    return out;
  }

  static unsigned number(std::string const &s, std::string const &name)
  {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw Error("bad number in subgroup name '" + name + "'");
    return static_cast<unsigned>(std::stoul(s));
  }

  Group from_gens(std::string const &text)
  {
    std::vector<Perm> gens;
    for (auto const &c : split(text, ';'))
      if (!c.empty())
        gens.push_back(Perm::from_cycles(c, g_.degree()));
    Group h(g_.degree(), std::move(gens));
    if (!is_subgroup(h, g_))
      throw PreconditionViolated("generators do not lie in the group");
    return h;
  }

  Group g_;
  unsigned p_;
  Limits lim_;
  std::optional<Group> sylow_;
  std::optional<EkrFamily> fam_;
};

namespace detail
{

struct Source
{
  std::string id;
  Group group;
};

inline Source load_source(Invocation const &inv)
{
  if (inv.recipe.empty() == inv.file.empty())
    throw Error("give exactly one of --recipe or --file");
  if (!inv.recipe.empty())
    return {inv.recipe, build(inv.recipe)};
  return {"from_file:" + inv.file, read_group_file(inv.file)};
}

inline void check_prime(unsigned p)
{
  if (!is_prime(p))
    throw Error("--p must be prime, got " + std::to_string(p));
}

inline Report make_report(std::string const &id, Verdict v)
{
  Report r;
  r.group_id = id;
  r.statement_id = v.statement;
  r.verdict = std::move(v);
  return r;
}

inline std::string chain_orders(Filtration const &f)
{
  std::string s;
  for (auto const &t : f.terms)
    s += (s.empty() ? "" : " > ") + std::to_string(t.order());
  return s;
}

inline Filtration named_filtration(SubgroupNames &names, Invocation const &inv, unsigned ell)
{
  Filtration f{names.sylow_subgroup(), inv.p, ell, {}};
  for (auto const &t : inv.terms)
    f.terms.push_back(names.resolve(t));
  return f;
}

// The filtration a statement is checked on: the --terms chain when given,
// otherwise whatever the exact search finds starting at N.
inline std::optional<Filtration> obtain_filtration(SubgroupNames &names, Invocation const &inv,
                                                   Group const &n, unsigned ell, Verdict &note_to)
{
  if (!inv.terms.empty())
    return named_filtration(names, inv, ell);
  auto res = pf_embedded_search(names.sylow_subgroup(), inv.p, n, ell, inv.lim.search_budget, inv.lim);
  note_to.parameters["search_nodes"] = static_cast<long long>(res.nodes);
  note_to.notes = std::string("search: ") + to_string(res.status);
  return res.filtration;
}

inline Verdict ekr_table(SubgroupNames &names, Invocation const &inv)
{
  auto &fam = names.family();
  Verdict v;
  v.statement = "ekr";
  v.report_only = true;
  v.hypothesis_holds = true;
  v.conclusion_holds = true;
  int c = fam.nilpotency_class();
  unsigned e = fam.exponent_log();
  v.parameters["p"] = inv.p;
  v.parameters["class"] = c;
  v.parameters["exponent_log"] = e;
  unsigned kmax = static_cast<unsigned>(c) + e * (inv.p - 1) + 1;
  unsigned rmax = static_cast<unsigned>(c) + 1;
  std::vector<unsigned> ks, rs;
  for (unsigned k = inv.k.value_or(1); k <= inv.k.value_or(kmax); ++k)
    ks.push_back(k);
  for (unsigned r = inv.r.value_or(1); r <= inv.r.value_or(rmax); ++r)
    rs.push_back(r);
  for (unsigned r : rs)
    for (unsigned k : ks) {
      if (r == 0)
        throw Error("--r must be at least 1");
      auto res = fam.compute(k, r);
      std::string label = "E_{" + std::to_string(k) + "," + std::to_string(r) + "}";
      v.parameters["order " + label] = static_cast<long long>(res.subgroup.order());
      v.witnesses.push_back({label, describe(res.subgroup)});
    }
  return v;
}

inline Verdict pf_verify(SubgroupNames &names, Invocation const &inv)
{
  if (inv.terms.empty())
    throw Error("pf verify needs --terms");
  unsigned ell = inv.ell.value_or(inv.p - 1);
  auto f = named_filtration(names, inv, ell);
  auto pv = verify_potent_filtration(f, inv.lim);
  Verdict v;
  v.statement = "pf_verify";
  v.report_only = true;
  v.hypothesis_holds = true;
  v.conclusion_holds = pv.valid;
  v.parameters["p"] = inv.p;
  v.parameters["l"] = ell;
  v.parameters["terms"] = static_cast<long long>(f.terms.size());
  v.witnesses.push_back({"chain orders", chain_orders(f)});
  v.witnesses.push_back({"verdict", describe(pv)});
  if (ell == 0)
    v.notes = "type 0 read literally: N_i <= N_{i+1}^p";
  return v;
}

inline Verdict pf_search(SubgroupNames &names, Invocation const &inv)
{
  unsigned ell = inv.ell.value_or(inv.p - 1);
  Group n = names.resolve(inv.normal.empty() ? "sylow" : inv.normal);
  auto res = pf_embedded_search(names.sylow_subgroup(), inv.p, n, ell, inv.lim.search_budget, inv.lim);
  Verdict v;
  v.statement = "pf_search";
  v.report_only = true;
  v.hypothesis_holds = true;
  v.conclusion_holds = res.status == SearchStatus::found;
  v.parameters["p"] = inv.p;
  v.parameters["l"] = ell;
  v.parameters["nodes"] = static_cast<long long>(res.nodes);
  v.parameters["N_order"] = static_cast<long long>(n.order());
  v.witnesses.push_back({"status", to_string(res.status)});
  if (res.filtration) {
    v.witnesses.push_back({"chain orders", chain_orders(*res.filtration)});
    for (std::size_t i = 0; i < res.filtration->terms.size(); ++i)
      v.witnesses.push_back({"N_" + std::to_string(i + 1), describe(res.filtration->terms[i])});
  }
  v.notes = res.note;
  return v;
}

inline Verdict verify_statement(std::string const &which, SubgroupNames &names,
                                Invocation const &inv)
{
  Group const &g = names.group();
  unsigned p = inv.p;
  if (which == "main" || which == "thm6") {
    auto hyp = which == "main" ? ChainHypothesis::main : ChainHypothesis::thm6;
    auto &fam = names.family();
    unsigned ell = inv.ell ? *inv.ell : minimal_ell(fam, hyp);
    auto v = verify_main(g, p, ell, hyp, inv.lim);
    if (inv.r && inv.s) {
      // the given pair, checked directly against gamma_{l(p-1)}
      if (*inv.r == 0)
        throw Error("--r must be at least 1");
      unsigned t = ell * (p - 1);
      bool range = t < *inv.r + *inv.s * (p - 1);
      bool inside = is_subgroup(gamma(fam.lower_central(), t), fam.gamma_power(*inv.r, *inv.s));
      v.parameters["given_r"] = *inv.r;
      v.parameters["given_s"] = *inv.s;
      v.parameters["given_pair_qualifies"] = range && inside;
    }
    return v;
  }
  if (which == "prop1") {
    unsigned ell = inv.ell.value_or(p - 1);
    Group n = names.resolve(inv.normal.empty() ? "sylow" : inv.normal);
    Verdict probe;
    auto f = obtain_filtration(names, inv, n, ell, probe);
    if (!f) {
      probe.statement = "prop1";
      probe.hypothesis_holds = false;
      probe.parameters["p"] = p;
      probe.parameters["l"] = ell;
      return probe;
    }
    auto v = check_prop1(*f, inv.lim);
    if (!probe.notes.empty())
      v.notes = probe.notes + (v.notes.empty() ? "" : "; " + v.notes);
    return v;
  }
  if (which == "prop3" || which == "prop4") {
    if (which == "prop3" && p < 3)
      throw PreconditionViolated("prop3 needs p >= 3");
    unsigned ell = which == "prop3" ? p - 2 : p - 1;
    Group n = names.resolve(inv.normal.empty() ? "sylow" : inv.normal);
    Verdict probe;
    auto f = obtain_filtration(names, inv, n, ell, probe);
    if (!f) {
      probe.statement = which;
      probe.hypothesis_holds = false;
      probe.parameters["p"] = p;
      probe.parameters["l"] = ell;
      return probe;
    }
    auto v = which == "prop3" ? verify_prop3(g, p, n, *f, inv.lim) : verify_prop4(g, p, n, *f, inv.lim);
    if (!probe.notes.empty())
      v.notes = probe.notes + (v.notes.empty() ? "" : "; " + v.notes);
    return v;
  }
  if (which == "lemma8") {
    if (inv.normal.empty())
      throw Error("verify lemma8 needs --normal");
    return verify_lemma8(g, p, names.resolve(inv.normal), inv.ell.value_or(1), inv.lim);
  }
  if (which == "o24") {
    Group vg = names.resolve(inv.normal.empty() ? "op" : inv.normal);
    Group m = names.resolve(inv.m.empty() ? "sylow" : inv.m);
    return check_O24_inclusion(g, vg, m, p, inv.r.value_or(1), inv.ell.value_or(1), inv.lim);
  }
  throw Error("unknown statement '" + which + "'");
}

inline std::string catalog_listing(bool structured)
{
  if (structured) {
    auto doc = nlohmann::json::array();
    for (auto const &e : catalog())
      doc.push_back({{"recipe", e.recipe}, {"description", e.description}});
    return doc.dump(2) + "\n";
  }
  std::ostringstream os;
  for (auto const &e : catalog())
    os << std::left << std::setw(44) << e.recipe << e.description << "\n";
  return os.str();
}

} // namespace detail

/// 2 if any verdict is a FINDING, else 0.
inline int exit_code(std::vector<Report> const &reports) { return any_finding(reports) ? 2 : 0; }

/// Runs one invocation. Exit codes: 0 consistent, 2 a FINDING, 1 usage or error.
inline int run(int argc, char const *const *argv, std::ostream &out, std::ostream &err)
{
  Invocation inv;
  CLI::App app{"Finite p-solvable group analysis and statement checks", "psolv"};
  app.require_subcommand(1);

  auto add_source = [&](CLI::App *c) {
    c->add_option("--recipe", inv.recipe, "group recipe, e.g. symmetric:4");
    c->add_option("--file", inv.file, "group file (JSON: degree, generators)");
  };
  auto add_common = [&](CLI::App *c) {
    c->add_option("--p", inv.p, "prime")->capture_default_str();
    c->add_option("--enum-cap", inv.lim.enum_cap, "element enumeration cap")->capture_default_str();
    c->add_option("--coset-cap", inv.lim.coset_cap, "coset enumeration cap")->capture_default_str();
    c->add_option("--search-budget", inv.lim.search_budget, "node budget for filtration search")
      ->capture_default_str();
    c->add_option("--seed", inv.seed, "random seed (default: PSOLV_SEED or 0)");
    c->add_option("--format", inv.format, "text or structured")
      ->check(CLI::IsMember({"text", "structured", "json"}))
      ->capture_default_str();
  };
  auto add_params = [&](CLI::App *c) {
    c->add_option("--l", inv.ell, "type / exponent parameter l");
    c->add_option("--k", inv.k, "k parameter");
    c->add_option("--r", inv.r, "r parameter");
    c->add_option("--s", inv.s, "s parameter");
    c->add_option("--normal", inv.normal, "named subgroup N (or V for o24)");
    c->add_option("--m", inv.m, "named subgroup M for o24");
    c->add_option("--terms", inv.terms, "filtration terms as subgroup names")->delimiter(',');
  };

  auto *analyze_cmd = app.add_subcommand("analyze", "orders, series, Sylow, O_p, O_p', p-length");
  add_source(analyze_cmd);
  add_common(analyze_cmd);

  auto *ekr_cmd = app.add_subcommand("ekr", "table of E_{k,r} for the Sylow subgroup");
  add_source(ekr_cmd);
  add_common(ekr_cmd);
  add_params(ekr_cmd);

  std::string pf_mode;
  auto *pf_cmd = app.add_subcommand("pf", "potent filtrations of the Sylow subgroup");
  pf_cmd->add_option("mode", pf_mode, "verify or search")
    ->required()
    ->check(CLI::IsMember({"verify", "search"}));
  add_source(pf_cmd);
  add_common(pf_cmd);
  add_params(pf_cmd);

  std::string statement;
  auto *verify_cmd = app.add_subcommand("verify", "check one statement on one group");
  verify_cmd->add_option("statement", statement, "main|thm6|prop1|prop3|prop4|lemma8|o24")
    ->required()
    ->check(CLI::IsMember({"main", "thm6", "prop1", "prop3", "prop4", "lemma8", "o24"}));
  add_source(verify_cmd);
  add_common(verify_cmd);
  add_params(verify_cmd);

  std::string scan_what;
  auto *scan_cmd = app.add_subcommand("scan", "empirical scans");
  scan_cmd->add_option("what", scan_what, "question7")->required()->check(CLI::IsMember({"question7"}));
  scan_cmd->add_option("--recipe", inv.recipes, "recipes to scan (default: the catalog)");
  add_common(scan_cmd);

  std::string catalog_mode;
  auto *catalog_cmd = app.add_subcommand("catalog", "the built-in group catalog");
  catalog_cmd->add_option("mode", catalog_mode, "list or run")
    ->required()
    ->check(CLI::IsMember({"list", "run"}));
  catalog_cmd->add_option("--recipe", inv.recipes, "run only these recipes");
  catalog_cmd->add_option("--jobs", inv.jobs, "parallel workers")->capture_default_str();
  catalog_cmd->add_flag("--timing", inv.timing, "record wall time per group");
  add_common(catalog_cmd);

  try {
    inv.seed = default_seed();
    app.parse(argc, argv);
  } catch (CLI::ParseError const &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  } catch (Error const &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  auto fmt = inv.format == "text" ? ReportFormat::text : ReportFormat::structured;
  try {
    detail::check_prime(inv.p);
    std::vector<Report> reports;

    if (catalog_cmd->parsed() && catalog_mode == "list") {
      out << detail::catalog_listing(fmt == ReportFormat::structured);
      return 0;
    }
    if (catalog_cmd->parsed()) {
      if (inv.jobs == 0)
        throw Error("--jobs must be at least 1");
      BatteryOptions opt;
      opt.p = inv.p;
      opt.seed = inv.seed;
      opt.lim = inv.lim;
      opt.jobs = inv.jobs;
      opt.timing = inv.timing;
      reports = run_catalog(inv.recipes.empty() ? catalog_recipes() : inv.recipes, opt);
    } else if (scan_cmd->parsed()) {
      std::vector<std::pair<std::string, Group>> sel;
      for (auto const &id : inv.recipes.empty() ? catalog_recipes() : inv.recipes)
        sel.emplace_back(id, build(id));
      for (auto const &e : question7_scan(sel, inv.p, inv.lim.search_budget, inv.lim))
        reports.push_back(detail::make_report(e.group_id, to_verdict(e, inv.p)));
    } else {
      auto src = detail::load_source(inv);
      SubgroupNames names(src.group, inv.p, inv.lim);
      Verdict v;
      if (analyze_cmd->parsed())
        v = analyze(src.group, inv.p, inv.lim);
      else if (ekr_cmd->parsed())
        v = detail::ekr_table(names, inv);
      else if (pf_cmd->parsed())
        v = pf_mode == "verify" ? detail::pf_verify(names, inv) : detail::pf_search(names, inv);
      else
        v = detail::verify_statement(statement, names, inv);
      reports.push_back(detail::make_report(src.id, std::move(v)));
    }
    out << emit_report(reports, fmt);
    return exit_code(reports);
  } catch (Error const &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

} // namespace psolv::cli

#endif // PSOLV_CLI_HPP
