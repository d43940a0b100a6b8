#ifndef PSOLV_FILTRATION_HPP
#define PSOLV_FILTRATION_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "error.hpp"
#include "group.hpp"
#include "series.hpp"
#include "subgroup.hpp"
#include "verdict.hpp"

namespace psolv
{

inline constexpr std::size_t filtration_length_cap = 64;

/// Candidate chain N_1 >= ... >= N_k of normal subgroups of a p-group.
/// type_ell = 0 is accepted and read literally: N_i <= N_{i+1}^p.
struct Filtration
{
  Group ambient;
  unsigned prime = 0;
  unsigned type_ell = 1;
  std::vector<Group> terms;
};

struct PFFailure
{
  /// 0 = a term is not a normal subgroup of the ambient group, 1-4 as in the
  /// definition.
  unsigned condition = 0;
  std::size_t term = 0;  // 1-based
  std::optional<Perm> witness;
  std::string detail;
};

struct PFVerdict
{
  bool valid = true;
  std::optional<PFFailure> first_failure;
};

inline PFVerdict verify_potent_filtration(Filtration const &f, Limits const &lim = {})
{
  require_p_group(f.ambient, f.prime);
  auto fail = [](unsigned cond, std::size_t i, std::optional<Perm> w, std::string d) {
    return PFVerdict{false, PFFailure{cond, i, std::move(w), std::move(d)}};
  };
  auto const &n = f.terms;
  auto const &p = f.ambient;
  if (n.empty())
    return fail(2, 0, std::nullopt, "empty filtration");

  for (std::size_t i = 0; i < n.size(); ++i) {
    check_degree(p, n[i]);
    if (auto w = escaping_generator(n[i], p))
      return fail(0, i + 1, w, "term is not contained in the ambient group");
    for (auto const &x : p.generators())
      for (auto const &y : n[i].generators())
        if (!n[i].contains(y.conjugate_by(x)))
          return fail(0, i + 1, y, "term is not normal");
  }

  for (std::size_t i = 1; i < n.size(); ++i)
    if (auto w = escaping_generator(n[i], n[i - 1]))
      return fail(1, i + 1, w, "term is not contained in its predecessor");

  if (!n.back().is_trivial())
    return fail(2, n.size(), n.back().generators().front(), "last term is not trivial");

  for (std::size_t i = 0; i + 1 < n.size(); ++i)
    if (auto w = escaping_generator(commutator(n[i], p), n[i + 1]))
      return fail(3, i + 1, w, "[N_i, P] is not contained in N_{i+1}");

  for (std::size_t i = 0; i + 1 < n.size(); ++i) {
    Group lhs = f.type_ell == 0 ? n[i] : iterated_commutator(n[i], p, f.type_ell);
    if (lhs.is_trivial())
      continue;
    if (auto w = escaping_generator(lhs, power_subgroup(n[i + 1], f.prime, lim)))
      return fail(4, i + 1, w, "[N_i, P, ..., P] is not contained in N_{i+1}^p");
  }
  return {};
}

inline std::string describe(PFVerdict const &v)
{
  if (v.valid)
    return "valid";
  auto const &f = *v.first_failure;
  std::string res = "fails condition " + std::to_string(f.condition) + " at term " +
                    std::to_string(f.term);
  if (f.witness)
    res += " (witness " + f.witness->to_cycles() + ")";
  return res;
}

/// Termwise [N_i^p, P] == [N_i, P]^p, and the filtrations ([N_i, P]) and
/// (N_i^p) of the same type.
inline Verdict check_prop1(Filtration const &f, Limits const &lim = {})
{
  Verdict v;
  v.statement = "prop1";
  v.parameters["p"] = f.prime;
  v.parameters["l"] = f.type_ell;
  v.parameters["terms"] = static_cast<long long>(f.terms.size());
  auto base = verify_potent_filtration(f, lim);
  v.hypothesis_holds = base.valid;
  if (!base.valid) {
    v.notes = "input filtration " + describe(base);
    return v;
  }

  Filtration comm{f.ambient, f.prime, f.type_ell, {}};
  Filtration pow{f.ambient, f.prime, f.type_ell, {}};
  bool identity = true;
  for (std::size_t i = 0; i < f.terms.size(); ++i) {
    auto const &n = f.terms[i];
    Group c = commutator(n, f.ambient);
    Group np = power_subgroup(n, f.prime, lim);
    Group lhs = commutator(np, f.ambient);
    Group rhs = power_subgroup(c, f.prime, lim);
    if (!same_group(lhs, rhs)) {
      identity = false;
      v.witnesses.push_back({"[N_" + std::to_string(i + 1) + "^p, P]", describe(lhs)});
      v.witnesses.push_back({"[N_" + std::to_string(i + 1) + ", P]^p", describe(rhs)});
    }
    comm.terms.push_back(std::move(c));
    pow.terms.push_back(std::move(np));
  }
  auto vc = verify_potent_filtration(comm, lim);
  auto vp = verify_potent_filtration(pow, lim);
  v.parameters["power_commutator_identity"] = identity;
  v.parameters["commutator_filtration_valid"] = vc.valid;
  v.parameters["power_filtration_valid"] = vp.valid;
  if (!vc.valid)
    v.witnesses.push_back({"([N_i, P])", describe(vc)});
  if (!vp.valid)
    v.witnesses.push_back({"(N_i^p)", describe(vp)});
  v.conclusion_holds = identity && vc.valid && vp.valid;
  return v;
}

struct EkrTerm
{
  unsigned i = 0;
  unsigned j = 0;
  unsigned long long order = 0;
};

struct EkrResult
{
  Group subgroup;
  unsigned k = 0;
  unsigned r = 0;
  int nilpotency_class = 0;
  unsigned exponent_log = 0;  // p^e = exp(P)
  std::vector<EkrTerm> terms;  // nontrivial gamma_i^{p^j} with least qualifying j
};

/// gamma_i(P)^{p^j} with memoization, for repeated E_{k,r}(P) queries.
class EkrFamily
{
public:
  EkrFamily(Group p, unsigned prime, Limits const &lim = {})
  : p_(std::move(p))
  , prime_(prime)
  , lim_(lim)
  {
    require_p_group(p_, prime_);
    lcs_ = lower_central_series(p_);
    class_ = psolv::nilpotency_class(lcs_);
    exp_log_ = log_p(exponent(p_, lim_), prime_);
  }

  Group const &ambient() const { return p_; }
  unsigned prime() const { return prime_; }
  int nilpotency_class() const { return class_; }
  unsigned exponent_log() const { return exp_log_; }
  SeriesReport const &lower_central() const { return lcs_; }

  Group const &gamma_power(unsigned i, unsigned j)
  {
    auto key = std::make_pair(i, j);
    auto it = cache_.find(key);
    if (it != cache_.end())
      return it->second;
    Group g = j == 0 ? gamma(lcs_, i)
                     : power_subgroup(gamma_power(i, j - 1), prime_, lim_);
    return cache_.emplace(key, std::move(g)).first->second;
  }

  /// E_{k,r}(P). Only i in [r, c] and j in [0, e] can contribute; for each i
  /// the least qualifying j gives the largest term.
  EkrResult compute(unsigned k, unsigned r)
  {
    if (r == 0)
      throw Error("E_{k,r} needs r >= 1");
    EkrResult res{Group::trivial(p_.degree()), k, r, class_, exp_log_, {}};
    std::vector<Group> parts;
    for (unsigned i = r; static_cast<int>(i) <= class_; ++i) {
      unsigned j = 0;
      if (k > i)
        j = (k - i + prime_ - 2) / (prime_ - 1);
      if (j > exp_log_)
        continue;
      Group const &t = gamma_power(i, j);
      if (t.is_trivial())
        continue;
      res.terms.push_back({i, j, t.order()});
      parts.push_back(t);
    }
    res.subgroup = join_all(p_.degree(), parts);
    return res;
  }

private:
  Group p_;
  unsigned prime_;
  Limits lim_;
  SeriesReport lcs_;
  int class_ = 0;
  unsigned exp_log_ = 0;
  std::map<std::pair<unsigned, unsigned>, Group> cache_;
};

inline Group compute_ekr(Group const &p, unsigned prime, unsigned k, unsigned r,
                         Limits const &lim = {})
{
  return EkrFamily(p, prime, lim).compute(k, r).subgroup;
}

struct PFCandidate
{
  std::string name;
  Filtration filtration;
  PFVerdict verdict;
};

namespace detail
{

template<typename Next>
Filtration grow_filtration(Group const &p, unsigned prime, unsigned ell,
                           Group first, Next &&next)
{
  Filtration f{p, prime, ell, {std::move(first)}};
  for (std::size_t i = 2; !f.terms.back().is_trivial(); ++i) {
    if (i > filtration_length_cap)
      throw LengthCapExceeded("filtration longer than " +
                              std::to_string(filtration_length_cap) + " terms");
    Group g = next(i, f.terms.back());
    if (!same_group(g, f.terms.back()))
      f.terms.push_back(std::move(g));
  }
  return f;
}

} // namespace detail

/// Three type-(p-1) chains starting at E_{k,r}(P):
/// (a) E_{k+i-1, r+i-1}, (b) E_{k+i-1, r}, (c) lower central from E.
/// Consecutive repeats are dropped.
inline std::vector<PFCandidate> ekr_pf_candidates(EkrFamily &fam, unsigned k, unsigned r,
                                                  Limits const &lim = {})
{
  auto const &p = fam.ambient();
  unsigned prime = fam.prime();
  Group e = fam.compute(k, r).subgroup;
  std::vector<PFCandidate> res;
  auto add = [&](std::string name, Filtration f) {
    auto v = verify_potent_filtration(f, lim);
    res.push_back({std::move(name), std::move(f), std::move(v)});
  };
  add("a", detail::grow_filtration(p, prime, prime - 1, e, [&](std::size_t i, Group const &) {
        auto s = static_cast<unsigned>(i - 1);
        return fam.compute(k + s, r + s).subgroup;
      }));
  add("b", detail::grow_filtration(p, prime, prime - 1, e, [&](std::size_t i, Group const &) {
        return fam.compute(k + static_cast<unsigned>(i - 1), r).subgroup;
      }));
  add("c", detail::grow_filtration(p, prime, prime - 1, e, [&](std::size_t, Group const &last) {
        return commutator(last, p);
      }));
  return res;
}

inline std::vector<PFCandidate> ekr_pf_candidates(Group const &p, unsigned prime, unsigned k,
                                                  unsigned r, Limits const &lim = {})
{
  EkrFamily fam(p, prime, lim);
  return ekr_pf_candidates(fam, k, r, lim);
}

enum class SearchStatus { found, not_pf_embedded, exhausted };

inline char const *to_string(SearchStatus s)
{
  switch (s) {
  case SearchStatus::found: return "found";
  case SearchStatus::not_pf_embedded: return "not_pf_embedded";
  case SearchStatus::exhausted: return "exhausted";
  }
  return "?";
}

struct SearchResult
{
  SearchStatus status = SearchStatus::exhausted;
  std::optional<Filtration> filtration;
  unsigned long long nodes = 0;
  std::string note;
};

/// Largest p-group order for which normal subgroups are enumerated.
inline unsigned long long pf_search_order_limit(unsigned p)
{
  switch (p) {
  case 2: return 512;
  case 3: return 729;
  case 5: return 3125;
  default: return static_cast<unsigned long long>(p) * p * p * p;
  }
}

/// Exact search for potent filtrations of type ell through the normal
/// subgroups of P. Whether a chain can continue from M to 1 depends only on
/// M, so failed subgroups are remembered across queries.
class PFSearcher
{
public:
  PFSearcher(Group p, unsigned prime, unsigned ell, Limits const &lim = {})
  : p_(std::move(p))
  , prime_(prime)
  , ell_(ell)
  , lim_(lim)
  {
    require_p_group(p_, prime_);
    if (p_.order() > pf_search_order_limit(prime_)) {
      note_ = "group order " + std::to_string(p_.order()) + " above the search limit";
      return;
    }
    try {
      normals_ = normal_subgroups(p_, lim_);
      classes_ = conjugacy_classes(p_, lim_);
    } catch (CapExceeded const &e) {
      note_ = e.what();
      normals_.clear();
      return;
    }
    ready_ = true;
    std::stable_sort(normals_.begin(), normals_.end(), [](Group const &a, Group const &b) {
      return a.order() > b.order();
    });
    for (std::size_t m = 0; m < normals_.size(); ++m) {
      keys_.push_back(key_of(normals_[m]));
      by_key_.emplace(keys_.back(), m);
    }
    state_.assign(normals_.size(), unknown);
    next_.assign(normals_.size(), 0);
    derived_.resize(normals_.size());
  }

  bool in_regime() const { return ready_; }
  std::vector<Group> const &normal_subgroups_of_p() const { return normals_; }

  SearchResult search(Group const &n, unsigned long long budget)
  {
    SearchResult res;
    if (!ready_) {
      res.note = note_;
      return res;
    }
    check_degree(p_, n);
    if (!is_subgroup(n, p_) || !is_normal(p_, n)) {
      res.status = SearchStatus::not_pf_embedded;
      res.note = "not a normal subgroup of P";
      return res;
    }
    auto start = by_key_.at(key_of(n));
    nodes_ = 0;
    budget_ = budget;
    auto r = solve(start);
    res.nodes = nodes_;
    if (r == dead) {
      res.status = SearchStatus::not_pf_embedded;
      return res;
    }
    if (r == unknown) {
      res.note = "search budget exhausted";
      return res;
    }
    Filtration f{p_, prime_, ell_, {}};
    for (std::size_t m = start;; m = next_[m]) {
      f.terms.push_back(normals_[m]);
      if (normals_[m].is_trivial())
        break;
    }
    res.status = SearchStatus::found;
    res.filtration = std::move(f);
    return res;
  }

private:
  using Key = std::vector<bool>;
  enum State : unsigned char { unknown, alive, dead };

  struct Derived
  {
    bool ready = false;
    Key comm;     // [M, P]
    Key iter;     // [M, P, ..., P], or M for type 0
    Key power;    // M^p
  };

  Key key_of(Group const &g) const
  {
    Key k(classes_.reps.size());
    for (std::size_t c = 0; c < k.size(); ++c)
      k[c] = g.contains(classes_.elements[classes_.reps[c]]);
    return k;
  }

  static bool subset(Key const &a, Key const &b)
  {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] && !b[i])
        return false;
    return true;
  }

  Derived const &derived(std::size_t m)
  {
    auto &d = derived_[m];
    if (!d.ready) {
      auto const &g = normals_[m];
      d.comm = key_of(commutator(g, p_));
      d.iter = ell_ == 0 ? keys_[m] : key_of(iterated_commutator(g, p_, ell_));
      d.power = key_of(power_subgroup(g, prime_, lim_));
      d.ready = true;
    }
    return d;
  }

  State solve(std::size_t m)
  {
    if (normals_[m].is_trivial())
      return alive;
    if (state_[m] != unknown)
      return state_[m];
    if (++nodes_ > budget_)
      return unknown;
    auto const &dm = derived(m);
    // smallest first, so short chains are preferred
    for (std::size_t c = normals_.size(); c-- > m + 1;) {
      if (normals_[c].order() == normals_[m].order())
        continue;
      if (!subset(keys_[c], keys_[m]) || !subset(dm.comm, keys_[c]))
        continue;
      if (!subset(dm.iter, derived(c).power))
        continue;
      auto r = solve(c);
      if (r == unknown)
        return unknown;
      if (r == alive) {
        next_[m] = c;
        return state_[m] = alive;
      }
    }
    return state_[m] = dead;
  }

  Group p_;
  unsigned prime_;
  unsigned ell_;
  Limits lim_;
  bool ready_ = false;
  std::string note_;
  std::vector<Group> normals_;
  ClassTable classes_;
  std::vector<Key> keys_;
  std::unordered_map<Key, std::size_t> by_key_;
  std::vector<State> state_;
  std::vector<std::size_t> next_;
  std::vector<Derived> derived_;
  unsigned long long nodes_ = 0;
  unsigned long long budget_ = 0;
};

inline SearchResult pf_embedded_search(Group const &p, unsigned prime, Group const &n,
                                       unsigned ell, unsigned long long budget,
                                       Limits const &lim = {})
{
  if (n.is_trivial()) {
    require_p_group(p, prime);
    return {SearchStatus::found, Filtration{p, prime, ell, {n}}, 0, {}};
  }
  PFSearcher s(p, prime, ell, lim);
  return s.search(n, budget);
}

} // namespace psolv

#endif // PSOLV_FILTRATION_HPP
