#ifndef PSOLV_TESTS_ORACLE_HPP
#define PSOLV_TESTS_ORACLE_HPP

// Brute-force group algebra over explicit element sets. Only Perm arithmetic
// is shared with the library; no stabilizer chains are involved.

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include <psolv/perm.hpp>

namespace oracle
{

using psolv::Perm;
using Set = std::set<Perm>;

inline Set closure(std::size_t degree, std::vector<Perm> const &gens)
{
  Set res{Perm(degree)};
  std::vector<Perm> queue{Perm(degree)};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (auto const &g : gens) {
      Perm y = queue[i] * g;
      if (res.insert(y).second)
        queue.push_back(std::move(y));
    }
  return res;
}

// Generated subgroup of a set, picking generators greedily.
inline Set closure(std::size_t degree, Set const &s)
{
  std::vector<Perm> gens;
  Set res{Perm(degree)};
  for (auto const &x : s)
    if (!res.count(x)) {
      gens.push_back(x);
      res = closure(degree, gens);
    }
  return res;
}

inline std::size_t degree_of(Set const &s) { return s.begin()->degree(); }

inline bool subset(Set const &a, Set const &b)
{ return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

inline Set join(Set const &a, Set const &b)
{
  Set u = a;
  u.insert(b.begin(), b.end());
  return closure(degree_of(a), u);
}

inline Set meet(Set const &a, Set const &b)
{
  Set res;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(res, res.end()));
  return res;
}

inline Set commutator(Set const &a, Set const &b)
{
  Set s;
  for (auto const &x : a)
    for (auto const &y : b)
      s.insert(x.inverse() * y.inverse() * x * y);
  return closure(degree_of(a), s);
}

inline Set iterated_commutator(Set const &n, Set const &m, unsigned k)
{
  Set cur = commutator(n, m);
  for (unsigned i = 1; i < k; ++i)
    cur = commutator(cur, m);
  return cur;
}

inline Set conj_set(Set const &s, Perm const &g)
{
  Set res;
  for (auto const &x : s)
    res.insert(g.inverse() * x * g);
  return res;
}

inline Set normal_closure(Set const &g, Set const &s)
{
  Set all;
  for (auto const &x : g) {
    auto c = conj_set(s, x);
    all.insert(c.begin(), c.end());
  }
  return closure(degree_of(g), all);
}

inline bool is_normal(Set const &g, Set const &n)
{
  for (auto const &x : g)
    if (conj_set(n, x) != n)
      return false;
  return true;
}

inline Set power(Set const &n, unsigned long long q)
{
  Set s;
  for (auto const &x : n)
    s.insert(x.pow(static_cast<long long>(q)));
  return closure(degree_of(n), s);
}

inline Set centralizer(Set const &g, Set const &s)
{
  Set res;
  for (auto const &x : g)
    if (std::all_of(s.begin(), s.end(), [&](Perm const &y) { return x * y == y * x; }))
      res.insert(x);
  return res;
}

inline Set normalizer(Set const &g, Set const &h)
{
  Set res;
  for (auto const &x : g)
    if (conj_set(h, x) == h)
      res.insert(x);
  return res;
}

inline unsigned long long element_order(Perm const &x)
{
  Perm y = x;
  unsigned long long k = 1;
  while (!y.is_identity()) {
    y *= x;
    ++k;
  }
  return k;
}

inline unsigned long long exponent(Set const &g)
{
  unsigned long long e = 1;
  for (auto const &x : g)
    e = std::lcm(e, element_order(x));
  return e;
}

inline bool is_p_power(unsigned long long n, unsigned long long p)
{
  while (n % p == 0)
    n /= p;
  return n == 1;
}

/// Every normal subgroup, as a union of conjugacy classes closed under
/// products.
inline std::vector<Set> normal_subgroups(Set const &g)
{
  std::vector<Set> classes;
  Set seen;
  for (auto const &x : g) {
    if (seen.count(x))
      continue;
    Set cls;
    for (auto const &y : g)
      cls.insert(y.inverse() * x * y);
    seen.insert(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  auto deg = degree_of(g);
  std::set<Set> found{Set{Perm(deg)}};
  std::vector<Set> queue{Set{Perm(deg)}};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (auto const &cls : classes) {
      if (subset(cls, queue[i]))
        continue;
      Set u = queue[i];
      u.insert(cls.begin(), cls.end());
      Set n = closure(deg, u);
      if (found.insert(n).second)
        queue.push_back(std::move(n));
    }
  return {found.begin(), found.end()};
}

/// Largest normal L >= K of G with |L:K| a p-power (pprime = false) or
/// coprime to p (pprime = true), from the normal subgroup list.
inline Set largest_normal_over(std::vector<Set> const &normals, Set const &k,
                               unsigned p, bool pprime)
{
  Set best = k;
  for (auto const &l : normals) {
    if (!subset(k, l))
      continue;
    auto idx = l.size() / k.size();
    bool ok = pprime ? idx % p != 0 : is_p_power(idx, p);
    if (ok && l.size() > best.size())
      best = l;
  }
  return best;
}

struct UpperSeries
{
  std::vector<Set> terms;
  unsigned p_length = 0;
  bool solvable = false;
};

inline UpperSeries upper_p_series(Set const &g, unsigned p)
{
  auto normals = normal_subgroups(g);
  UpperSeries res;
  Set k{Perm(degree_of(g))};
  res.terms.push_back(k);
  bool pprime = true;
  for (bool first = true; k.size() != g.size(); first = false) {
    Set l = largest_normal_over(normals, k, p, pprime);
    res.terms.push_back(l);
    bool grew = l.size() != k.size();
    if (!grew && !first)
      break;
    if (grew && !pprime)
      ++res.p_length;
    k = l;
    pprime = !pprime;
  }
  res.solvable = k.size() == g.size();
  return res;
}

} // namespace oracle

#endif // PSOLV_TESTS_ORACLE_HPP
