#ifndef PSOLV_SUBGROUP_HPP
#define PSOLV_SUBGROUP_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <numeric>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "error.hpp"
#include "group.hpp"
#include "perm.hpp"

// Subgroups are plain Group values inside Sym(n); "same parent" means equal
// degree. Predicates that need a parent G take it explicitly.

namespace psolv
{

inline void check_degree(Group const &a, Group const &b)
{
  if (a.degree() != b.degree())
    throw DegreeMismatch(a.degree(), b.degree());
}

inline Group join(Group const &a, Group const &b)
{
  check_degree(a, b);
  std::vector<Perm> gens = a.generators();
  StabChain c(a.degree());
  for (auto const &g : a.generators())
    c.insert(g);
  for (auto const &g : b.generators())
    if (c.insert(g))
      gens.push_back(g);
  return Group::from_chain(std::move(gens), std::move(c));
}

inline Group join_all(std::size_t degree, std::vector<Group> const &parts)
{
  std::vector<Perm> gens;
  StabChain c(degree);
  for (auto const &h : parts) {
    if (h.degree() != degree)
      throw DegreeMismatch(degree, h.degree());
    for (auto const &g : h.generators())
      if (c.insert(g))
        gens.push_back(g);
  }
  return Group::from_chain(std::move(gens), std::move(c));
}

/// Smallest subgroup normalized by G that contains `seed`. If `abort` is
/// given it is called with the running order after every growth step; a
/// true return stops the computation and yields nullopt.
inline std::optional<Group>
normal_closure_of(Group const &g, std::vector<Perm> const &seed,
                  std::function<bool(unsigned long long)> const &abort = {})
{
  StabChain c(g.degree());
  std::vector<Perm> gens;
  for (auto const &s : seed) {
    if (s.degree() != g.degree())
      throw DegreeMismatch(g.degree(), s.degree());
    if (c.insert(s)) {
      gens.push_back(s);
      if (abort && abort(c.order()))
        return std::nullopt;
    }
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (auto const &x : g.generators()) {
      Perm conj = gens[i].conjugate_by(x);
      if (c.insert(conj)) {
        gens.push_back(std::move(conj));
        if (abort && abort(c.order()))
          return std::nullopt;
      }
    }
  }
  return Group::from_chain(std::move(gens), std::move(c));
}

inline Group normal_closure(Group const &g, Group const &s)
{
  check_degree(g, s);
  return *normal_closure_of(g, s.generators());
}

inline bool is_normal(Group const &g, Group const &n)
{
  check_degree(g, n);
  for (auto const &x : g.generators())
    for (auto const &y : n.generators())
      if (!n.contains(y.conjugate_by(x)))
        return false;
  return true;
}

/// [A, B] = <[a, b] : a in A, b in B>, the normal closure in <A, B> of the
/// commutators of generators.
inline Group commutator(Group const &a, Group const &b)
{
  check_degree(a, b);
  std::vector<Perm> seed;
  for (auto const &x : a.generators())
    for (auto const &y : b.generators()) {
      Perm c = commutator(x, y);
      if (!c.is_identity())
        seed.push_back(std::move(c));
    }
  return *normal_closure_of(join(a, b), seed);
}

/// [N, M, ..., M] with M appearing k times.
inline Group iterated_commutator(Group const &n, Group const &m, unsigned k)
{
  if (k == 0)
    throw Error("iterated commutator needs k >= 1");
  Group cur = commutator(n, m);
  for (unsigned i = 1; i < k; ++i) {
    Group next = commutator(cur, m);
    if (same_group(next, cur))
      break;
    cur = std::move(next);
  }
  return cur;
}

/// <n^q : n in N>, over all elements of N.
inline Group power_subgroup(Group const &n, unsigned long long q,
                            Limits const &lim = {})
{
  if (q == 0)
    throw Error("power subgroup needs q >= 1");
  if (q == 1)
    return n;
  StabChain c(n.degree());
  std::vector<Perm> gens;
  n.for_each_element(lim.enum_cap, [&](Perm const &x) {
    Perm y = x.pow(static_cast<long long>(q));
    if (c.insert(y))
      gens.push_back(std::move(y));
  });
  return Group::from_chain(std::move(gens), std::move(c));
}

namespace detail
{

template<typename Pred>
Group filter_subgroup(Group const &g, Limits const &lim, Pred &&keep)
{
  StabChain c(g.degree());
  std::vector<Perm> gens;
  g.for_each_element(lim.enum_cap, [&](Perm const &x) {
    if (c.contains(x) || !keep(x))
      return;
    c.insert(x);
    gens.push_back(x);
  });
  return Group::from_chain(std::move(gens), std::move(c));
}

} // namespace detail

inline Group normalizer(Group const &g, Group const &h, Limits const &lim = {})
{
  check_degree(g, h);
  return detail::filter_subgroup(g, lim, [&](Perm const &x) {
    for (auto const &y : h.generators())
      if (!h.contains(y.conjugate_by(x)))
        return false;
    return true;
  });
}

inline Group centralizer(Group const &g, Group const &s, Limits const &lim = {})
{
  check_degree(g, s);
  return detail::filter_subgroup(g, lim, [&](Perm const &x) {
    for (auto const &y : s.generators())
      if (x * y != y * x)
        return false;
    return true;
  });
}

inline Group intersect(Group const &a, Group const &b, Limits const &lim = {})
{
  check_degree(a, b);
  if (is_subgroup(a, b))
    return a;
  if (is_subgroup(b, a))
    return b;
  auto const &small = a.order() <= b.order() ? a : b;
  auto const &other = a.order() <= b.order() ? b : a;
  return detail::filter_subgroup(small, lim,
                                 [&](Perm const &x) { return other.contains(x); });
}

/// lcm of element orders.
inline unsigned long long exponent(Group const &g, Limits const &lim = {})
{
  unsigned long long res = 1;
  g.for_each_element(lim.enum_cap,
                     [&](Perm const &x) { res = std::lcm(res, x.order()); });
  return res;
}

/// Exponent of the image of H in G/K for K normal: lcm over h in H of the
/// least m with h^m in K.
inline unsigned long long exponent_modulo(Group const &h, Group const &k,
                                          Limits const &lim = {})
{
  check_degree(h, k);
  unsigned long long res = 1;
  h.for_each_element(lim.enum_cap, [&](Perm const &x) {
    Perm y = x;
    unsigned long long m = 1;
    while (!k.contains(y)) {
      y *= x;
      ++m;
    }
    res = std::lcm(res, m);
  });
  return res;
}

/// G acting on the right cosets of a normal subgroup.
struct QuotientGroup
{
  Group base;
  Group kernel;
  Group image;
  std::vector<Perm> reps;  // canonical coset representatives; reps[0] is in the kernel
  std::unordered_map<Perm, Point, PermHash> coset_index;

  Point coset_of(Perm const &x) const
  {
    return coset_index.at(kernel.chain().canonical_coset_rep(x));
  }

  Perm project(Perm const &x) const
  {
    std::vector<Point> img(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i)
      img[i] = coset_of(reps[i] * x);
    return Perm(std::move(img));
  }

  /// Coset representative mapping to `y`. The image acts regularly, so y is
  /// determined by where it sends the trivial coset.
  Perm section(Perm const &y) const { return reps.at(y[0]); }

  Group project(Group const &h) const
  {
    std::vector<Perm> gens;
    for (auto const &x : h.generators())
      gens.push_back(project(x));
    return Group(image.degree(), std::move(gens));
  }
};

inline QuotientGroup quotient(Group const &g, Group const &n,
                              Limits const &lim = {})
{
  check_degree(g, n);
  if (!is_subgroup(n, g) || !is_normal(g, n))
    throw NotNormal("kernel is not a normal subgroup");
  auto index = g.order() / n.order();
  if (index > lim.coset_cap)
    throw CapExceeded("coset enumeration", index, lim.coset_cap);

  QuotientGroup q{g, n, Group(1), {}, {}};
  auto const &chain = n.chain();
  q.reps.push_back(chain.canonical_coset_rep(g.identity()));
  q.coset_index.emplace(q.reps[0], 0);
  for (std::size_t i = 0; i < q.reps.size(); ++i) {
    for (auto const &s : g.generators()) {
      Perm c = chain.canonical_coset_rep(q.reps[i] * s);
      if (q.coset_index.count(c))
        continue;
      q.coset_index.emplace(c, static_cast<Point>(q.reps.size()));
      q.reps.push_back(std::move(c));
    }
  }
  if (q.reps.size() != index)
    throw InternalMismatch("coset count differs from index");

  std::vector<Perm> gens;
  for (auto const &s : g.generators())
    gens.push_back(q.project(s));
  q.image = Group(q.reps.size(), std::move(gens));
  return q;
}

/// Subgroup of the base generated by the kernel and sections of S.
inline Group preimage(QuotientGroup const &q, Group const &s)
{
  check_degree(q.image, s);
  std::vector<Perm> gens = q.kernel.generators();
  for (auto const &y : s.generators())
    gens.push_back(q.section(y));
  return Group(q.base.degree(), std::move(gens));
}

/// Conjugacy classes of G, as index lists into `elements`.
struct ClassTable
{
  std::vector<Perm> elements;
  std::unordered_map<Perm, std::size_t, PermHash> index;
  std::vector<std::size_t> class_of;
  std::vector<std::size_t> reps;  // element index of each class representative
};

inline ClassTable conjugacy_classes(Group const &g, Limits const &lim = {})
{
  ClassTable t;
  t.elements = g.elements(lim.enum_cap);
  for (std::size_t i = 0; i < t.elements.size(); ++i)
    t.index.emplace(t.elements[i], i);
  constexpr auto none = static_cast<std::size_t>(-1);
  t.class_of.assign(t.elements.size(), none);
  for (std::size_t i = 0; i < t.elements.size(); ++i) {
    if (t.class_of[i] != none)
      continue;
    auto cls = t.reps.size();
    t.reps.push_back(i);
    t.class_of[i] = cls;
    std::vector<std::size_t> queue{i};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      for (auto const &x : g.generators()) {
        auto j = t.index.at(t.elements[queue[q]].conjugate_by(x));
        if (t.class_of[j] == none) {
          t.class_of[j] = cls;
          queue.push_back(j);
        }
      }
    }
  }
  return t;
}

/// All normal subgroups of G, trivial first, in a deterministic order.
/// Throws CapExceeded past `lim.normal_subgroup_cap` subgroups.
inline std::vector<Group> normal_subgroups(Group const &g, Limits const &lim = {})
{
  auto t = conjugacy_classes(g, lim);
  auto key_of = [&](Group const &n) {
    std::vector<bool> key(t.reps.size());
    for (std::size_t c = 0; c < t.reps.size(); ++c)
      key[c] = n.contains(t.elements[t.reps[c]]);
    return key;
  };

  std::vector<Group> res{Group::trivial(g.degree())};
  std::vector<std::vector<bool>> keys{key_of(res[0])};
  std::unordered_set<std::vector<bool>> seen{keys[0]};
  for (std::size_t i = 0; i < res.size(); ++i) {
    for (std::size_t c = 0; c < t.reps.size(); ++c) {
      if (keys[i][c])
        continue;
      auto seed = res[i].generators();
      seed.push_back(t.elements[t.reps[c]]);
      Group m = *normal_closure_of(g, seed);
      auto key = key_of(m);
      if (!seen.insert(key).second)
        continue;
      if (res.size() >= lim.normal_subgroup_cap)
        throw CapExceeded("normal subgroup enumeration", res.size() + 1,
                          lim.normal_subgroup_cap);
      res.push_back(std::move(m));
      keys.push_back(std::move(key));
    }
  }
  return res;
}

} // namespace psolv

#endif // PSOLV_SUBGROUP_HPP
