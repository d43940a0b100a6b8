#ifndef PSOLV_SERIES_HPP
#define PSOLV_SERIES_HPP

#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "group.hpp"
#include "subgroup.hpp"

namespace psolv
{

enum class SeriesKind { lower_central, derived, upper_p };

inline char const *to_string(SeriesKind k)
{
  switch (k) {
  case SeriesKind::lower_central: return "lower_central";
  case SeriesKind::derived: return "derived";
  case SeriesKind::upper_p: return "upper_p";
  }
  return "?";
}

struct SeriesTerm
{
  std::string label;
  Group group;
};

struct SeriesReport
{
  SeriesKind kind;
  unsigned prime = 0;
  std::vector<SeriesTerm> terms;
  unsigned p_length = 0;
  bool is_p_solvable = false;
};

namespace detail
{

// Iterates next(term) from `start`. A repeated nontrivial term is kept once
// so non-nilpotent (or non-solvable) groups show where the series stalls.
template<typename Next>
SeriesReport descending_series(SeriesKind kind, Group const &start,
                               std::string const &symbol, Next &&next)
{
  SeriesReport rep{kind};
  rep.terms.push_back({symbol + "_1", start});
  for (unsigned i = 2;; ++i) {
    auto const &last = rep.terms.back().group;
    if (last.is_trivial())
      break;
    Group g = next(last);
    bool stable = same_group(g, last);
    if (stable && g.is_trivial())
      break;
    rep.terms.push_back({symbol + "_" + std::to_string(i), std::move(g)});
    if (stable)
      break;
  }
  return rep;
}

} // namespace detail

/// gamma_1 = P, gamma_{i+1} = [gamma_i, P].
inline SeriesReport lower_central_series(Group const &p)
{
  return detail::descending_series(SeriesKind::lower_central, p, "gamma",
                                   [&](Group const &x) { return commutator(x, p); });
}

inline SeriesReport derived_series(Group const &g)
{
  return detail::descending_series(SeriesKind::derived, g, "delta",
                                   [](Group const &x) { return commutator(x, x); });
}

/// gamma_i(P) for any i >= 1, continuing the stable tail of the series.
inline Group gamma(SeriesReport const &lcs, unsigned i)
{
  if (i == 0)
    throw Error("lower central series is indexed from 1");
  if (i <= lcs.terms.size())
    return lcs.terms[i - 1].group;
  return lcs.terms.back().group;
}

/// Nilpotency class c (gamma_{c+1} = 1), or -1 if the series stalls above 1.
inline int nilpotency_class(SeriesReport const &lcs)
{
  if (!lcs.terms.back().group.is_trivial())
    return -1;
  return static_cast<int>(lcs.terms.size()) - 1;
}

inline void require_p_group(Group const &p, unsigned prime)
{
  if (!is_prime(prime))
    throw Error("not a prime: " + std::to_string(prime));
  if (!is_p_group(p, prime))
    throw NotAPGroup("group of order " + std::to_string(p.order()) +
                     " is not a " + std::to_string(prime) + "-group");
}

/// P^p [P, P] for a p-group P.
inline Group frattini_p(Group const &p, unsigned prime, Limits const &lim = {})
{
  require_p_group(p, prime);
  return join(power_subgroup(p, prime, lim), commutator(p, p));
}

inline bool is_p_element(Perm const &x, unsigned p) { return is_p_power(x.order(), p); }

/// A Sylow p-subgroup, grown from one p-element through normalizers: a
/// proper p-subgroup S always has a p-element of N_G(S) outside S.
inline Group sylow(Group const &g, unsigned p, Limits const &lim = {})
{
  if (!is_prime(p))
    throw Error("not a prime: " + std::to_string(p));
  auto target = p_part(g.order(), p);
  if (target == 1)
    return Group::trivial(g.degree());
  if (target == g.order())
    return g;

  std::optional<Perm> seed;
  g.for_each_element(lim.enum_cap, [&](Perm const &x) {
    if (seed)
      return;
    auto o = x.order();
    if (o % p == 0)
      seed = x.pow(static_cast<long long>(o / p_part(o, p)));
  });
  Group s(g.degree(), {*seed});

  while (s.order() < target) {
    Group n = normalizer(g, s, lim);
    std::optional<Perm> ext;
    n.for_each_element(lim.enum_cap, [&](Perm const &y) {
      if (!ext && is_p_element(y, p) && !s.contains(y))
        ext = y;
    });
    if (!ext)
      throw InternalMismatch("Sylow growth stalled");
    s = join(s, Group(g.degree(), {*ext}));
  }
  return s;
}

/// Intersection of the G-conjugates of H.
inline Group core(Group const &g, Group const &h, Limits const &lim = {})
{
  Group c = h;
  for (bool changed = true; changed;) {
    changed = false;
    for (auto const &x : g.generators()) {
      std::vector<Perm> gens;
      for (auto const &y : c.generators())
        gens.push_back(y.conjugate_by(x));
      Group d(g.degree(), std::move(gens));
      if (is_subgroup(d, c))
        continue;
      c = intersect(c, d, lim);
      changed = true;
    }
  }
  return c;
}

namespace detail
{

// <x in G : keep(x) and the normal closure of x has order accepted by ok>
template<typename Keep, typename Ok>
Group generated_normal(Group const &g, Limits const &lim, Keep &&keep, Ok &&ok)
{
  Group res = Group::trivial(g.degree());
  g.for_each_element(lim.enum_cap, [&](Perm const &x) {
    if (!keep(x) || res.contains(x))
      return;
    auto n = normal_closure_of(g, {x}, [&](unsigned long long o) { return !ok(o); });
    if (n)
      res = join(res, *n);
  });
  return res;
}

} // namespace detail

/// O_p(G) by the core of a Sylow subgroup, cross-checked against the join of
/// p-elements with p-group normal closures. A disagreement is a bug.
inline Group o_p(Group const &g, unsigned p, Limits const &lim = {})
{
  if (!is_prime(p))
    throw Error("not a prime: " + std::to_string(p));
  Group by_core = core(g, sylow(g, p, lim), lim);
  Group by_elements = detail::generated_normal(
    g, lim, [&](Perm const &x) { return is_p_element(x, p); },
    [&](unsigned long long o) { return is_p_power(o, p); });
  if (!same_group(by_core, by_elements))
    throw InternalMismatch("O_p computations disagree: orders " +
                           std::to_string(by_core.order()) + " and " +
                           std::to_string(by_elements.order()));
  return by_core;
}

inline Group o_pprime(Group const &g, unsigned p, Limits const &lim = {})
{
  if (!is_prime(p))
    throw Error("not a prime: " + std::to_string(p));
  return detail::generated_normal(
    g, lim, [&](Perm const &x) { return x.order() % p != 0; },
    [&](unsigned long long o) { return o % p != 0; });
}

/// 1 <= O_{p'} <= O_{p',p} <= ... computed through quotients and preimages.
/// Stops at G, or at the first step after the initial one that adds nothing
/// (then G is not p-solvable).
inline SeriesReport upper_p_series(Group const &g, unsigned p,
                                   Limits const &lim = {})
{
  SeriesReport rep{SeriesKind::upper_p, p};
  Group k = Group::trivial(g.degree());
  rep.terms.push_back({"1", k});

  std::string ps = std::to_string(p);
  std::string seq;
  bool pprime_step = true;
  for (bool first = true; k.order() != g.order(); first = false) {
    Group next(g.degree());
    if (k.is_trivial()) {
      next = pprime_step ? o_pprime(g, p, lim) : o_p(g, p, lim);
    } else {
      auto q = quotient(g, k, lim);
      Group c = pprime_step ? o_pprime(q.image, p, lim) : o_p(q.image, p, lim);
      next = preimage(q, c);
    }
    seq += (seq.empty() ? "" : ",") + ps + (pprime_step ? "'" : "");
    bool grew = next.order() != k.order();
    rep.terms.push_back({"O_{" + seq + "}", next});
    if (!grew && !first)
      break;
    if (grew && !pprime_step)
      ++rep.p_length;
    k = std::move(next);
    pprime_step = !pprime_step;
  }
  rep.is_p_solvable = k.order() == g.order();
  return rep;
}

inline unsigned p_length(Group const &g, unsigned p, Limits const &lim = {})
{ return upper_p_series(g, p, lim).p_length; }

inline bool is_p_solvable(Group const &g, unsigned p, Limits const &lim = {})
{ return upper_p_series(g, p, lim).is_p_solvable; }

/// O_{p',p}(G), the third term of the upper p-series.
inline Group o_pprime_p(Group const &g, unsigned p, Limits const &lim = {})
{
  Group k = o_pprime(g, p, lim);
  if (k.is_trivial())
    return o_p(g, p, lim);
  auto q = quotient(g, k, lim);
  return preimage(q, o_p(q.image, p, lim));
}

} // namespace psolv

#endif // PSOLV_SERIES_HPP
