#ifndef PSOLV_GROUP_HPP
#define PSOLV_GROUP_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <random>
#include <utility>
#include <vector>

#include "error.hpp"
#include "perm.hpp"

namespace psolv
{

/// Stabilizer chain with explicit transversals, built by deterministic
/// Schreier-Sims. Levels are appended on demand; the base point of a new
/// level is the first point moved by the element that forced it.
class StabChain
{
public:
  struct Level
  {
    Point base;
    std::vector<Perm> gens;
    std::vector<Point> orbit;
    std::vector<std::int32_t> index;      // point -> position in orbit, or -1
    std::vector<Perm> transversal;        // base^transversal[k] == orbit[k]
    std::vector<Perm> transversal_inv;
  };

  explicit StabChain(std::size_t degree = 1)
  : degree_(degree)
  {}

  std::size_t degree() const { return degree_; }
  std::vector<Level> const &levels() const { return levels_; }

  std::vector<Point> base() const
  {
    std::vector<Point> res;
    for (auto const &lv : levels_)
      res.push_back(lv.base);
    return res;
  }

  /// Strips g through the levels starting at `from`. Returns the residue and
  /// sets `failed` to the level where stripping stopped (levels().size() if
  /// it went all the way through).
  Perm sift(Perm g, std::size_t from, std::size_t &failed) const
  {
    for (std::size_t i = from; i < levels_.size(); ++i) {
      auto const &lv = levels_[i];
      auto k = lv.index[g[lv.base]];
      if (k < 0) {
        failed = i;
        return g;
      }
      g *= lv.transversal_inv[k];
    }
    failed = levels_.size();
    return g;
  }

  bool contains(Perm const &g) const
  {
    if (g.degree() != degree_)
      throw DegreeMismatch(degree_, g.degree());
    std::size_t failed;
    return sift(g, 0, failed).is_identity();
  }

  /// Adds g to the group. Returns false if g was already a member.
  bool insert(Perm const &g)
  {
    if (g.degree() != degree_)
      throw DegreeMismatch(degree_, g.degree());
    std::size_t failed;
    Perm r = sift(g, 0, failed);
    if (r.is_identity())
      return false;
    add_generator(0, g);
    return true;
  }

  unsigned long long order() const
  {
    unsigned long long res = 1;
    for (auto const &lv : levels_) {
      if (__builtin_mul_overflow(res, lv.orbit.size(), &res))
        throw Error("group order overflows 64 bits");
    }
    return res;
  }

  /// Visits every element exactly once, in a fixed order determined by the
  /// chain.
  template<typename F>
  void for_each_element(F &&fn) const
  {
    if (levels_.empty()) {
      fn(Perm(degree_));
      return;
    }
    visit(levels_.size() - 1, Perm(degree_), fn);
  }

  template<typename URBG>
  Perm random_element(URBG &rng) const
  {
    Perm res(degree_);
    for (std::size_t i = levels_.size(); i-- > 0;) {
      auto const &lv = levels_[i];
      std::uniform_int_distribution<std::size_t> dist(0, lv.orbit.size() - 1);
      res *= lv.transversal[dist(rng)];
    }
    return res;
  }

  /// Canonical representative of the right coset H g, H the group of this
  /// chain: the coset element whose sequence of base images is
  /// lexicographically least.
  Perm canonical_coset_rep(Perm g) const
  {
    for (auto const &lv : levels_) {
      std::size_t best = 0;
      Point best_img = g[lv.orbit[0]];
      for (std::size_t k = 1; k < lv.orbit.size(); ++k) {
        Point img = g[lv.orbit[k]];
        if (img < best_img) {
          best_img = img;
          best = k;
        }
      }
      g = lv.transversal[best] * g;
    }
    return g;
  }

private:
  template<typename F>
  void visit(std::size_t i, Perm const &acc, F &fn) const
  {
    for (auto const &u : levels_[i].transversal) {
      Perm next = acc * u;
      if (i == 0)
        fn(next);
      else
        visit(i - 1, next, fn);
    }
  }

  void rebuild_orbit(Level &lv)
  {
    lv.orbit.assign(1, lv.base);
    lv.index.assign(degree_, -1);
    lv.index[lv.base] = 0;
    lv.transversal.assign(1, Perm(degree_));
    lv.transversal_inv.assign(1, Perm(degree_));
    for (std::size_t k = 0; k < lv.orbit.size(); ++k) {
      for (auto const &s : lv.gens) {
        Point y = s[lv.orbit[k]];
        if (lv.index[y] >= 0)
          continue;
        lv.index[y] = static_cast<std::int32_t>(lv.orbit.size());
        lv.orbit.push_back(y);
        lv.transversal.push_back(lv.transversal[k] * s);
        lv.transversal_inv.push_back(lv.transversal.back().inverse());
      }
    }
  }

  // g lies in the stabilizer of the first i base points and is not in the
  // group described by levels i.. .
  void add_generator(std::size_t i, Perm g)
  {
    if (i == levels_.size()) {
      Level lv;
      lv.base = g.first_moved();
      levels_.push_back(std::move(lv));
    }
    levels_[i].gens.push_back(std::move(g));
    rebuild_orbit(levels_[i]);

    // Schreier generators of level i must lie in the group of level i+1.
    // Deeper recursion never touches level i, so indices stay valid.
    for (std::size_t k = 0; k < levels_[i].orbit.size(); ++k) {
      for (std::size_t s = 0; s < levels_[i].gens.size(); ++s) {
        auto const &lv = levels_[i];
        Perm h = lv.transversal[k] * lv.gens[s];
        h *= lv.transversal_inv[lv.index[h[lv.base]]];
        if (h.is_identity())
          continue;
        std::size_t failed;
        Perm r = sift(std::move(h), i + 1, failed);
        if (!r.is_identity())
          add_generator(i + 1, std::move(r));
      }
    }
  }

  std::size_t degree_;
  std::vector<Level> levels_;
};

/// A permutation group given by generators. The stabilizer chain is built on
/// first use and shared between copies; a Group is immutable once built, so
/// concurrent queries are safe.
class Group
{
public:
  explicit Group(std::size_t degree = 1, std::vector<Perm> gens = {})
  : degree_(degree), cache_(std::make_shared<Cache>())
  {
    if (degree == 0)
      throw Error("degree must be at least 1");
    for (auto &g : gens) {
      if (g.degree() != degree)
        throw DegreeMismatch(degree, g.degree());
      if (!g.is_identity())
        gens_.push_back(std::move(g));
    }
  }

  /// Wraps an already complete chain for the group generated by `gens`.
  static Group from_chain(std::vector<Perm> gens, StabChain chain)
  {
    Group res(chain.degree(), std::move(gens));
    std::call_once(res.cache_->once, [&] {
      res.cache_->chain = std::move(chain);
    });
    return res;
  }

  static Group trivial(std::size_t degree) { return Group(degree); }

  std::size_t degree() const { return degree_; }
  std::vector<Perm> const &generators() const { return gens_; }

  StabChain const &chain() const
  {
    std::call_once(cache_->once, [this] {
      StabChain c(degree_);
      for (auto const &g : gens_)
        c.insert(g);
      cache_->chain = std::move(c);
    });
    return cache_->chain;
  }

  unsigned long long order() const { return chain().order(); }
  bool is_trivial() const { return order() == 1; }
  bool contains(Perm const &g) const { return chain().contains(g); }

  /// Throws CapExceeded when the group has more than `cap` elements.
  template<typename F>
  void for_each_element(unsigned long long cap, F &&fn) const
  {
    auto n = order();
    if (n > cap)
      throw CapExceeded("enumeration", n, cap);
    chain().for_each_element(fn);
  }

  std::vector<Perm> elements(unsigned long long cap = Limits{}.enum_cap) const
  {
    std::vector<Perm> res;
    for_each_element(cap, [&](Perm const &g) { res.push_back(g); });
    return res;
  }

  Perm random_element(std::uint64_t seed) const
  {
    std::mt19937_64 rng(seed);
    return chain().random_element(rng);
  }

  template<typename URBG>
  Perm random_element_from(URBG &rng) const
  { return chain().random_element(rng); }

  Perm identity() const { return Perm(degree_); }

private:
  struct Cache
  {
    std::once_flag once;
    StabChain chain;
  };

  std::size_t degree_;
  std::vector<Perm> gens_;
  std::shared_ptr<Cache> cache_;
};

inline Group build_chain(Group const &g)
{
  g.chain();
  return g;
}

/// A <= B, tested by sifting A's generators through B's chain.
inline bool is_subgroup(Group const &a, Group const &b)
{
  if (a.degree() != b.degree())
    throw DegreeMismatch(a.degree(), b.degree());
  for (auto const &g : a.generators())
    if (!b.contains(g))
      return false;
  return true;
}

inline bool same_group(Group const &a, Group const &b)
{ return a.order() == b.order() && is_subgroup(a, b); }

inline bool is_p_power(unsigned long long n, unsigned long long p)
{
  if (n == 0)
    return false;
  while (n % p == 0)
    n /= p;
  return n == 1;
}

inline bool coprime_to(unsigned long long n, unsigned long long p)
{ return n % p != 0; }

inline unsigned long long p_part(unsigned long long n, unsigned long long p)
{
  unsigned long long res = 1;
  while (n % p == 0) {
    n /= p;
    res *= p;
  }
  return res;
}

/// e with p^e == n; n must be a power of p.
inline unsigned log_p(unsigned long long n, unsigned long long p)
{
  unsigned e = 0;
  while (n > 1) {
    n /= p;
    ++e;
  }
  return e;
}

inline bool is_prime(unsigned long long p)
{
  if (p < 2)
    return false;
  for (unsigned long long d = 2; d * d <= p; ++d)
    if (p % d == 0)
      return false;
  return true;
}

inline bool is_p_group(Group const &g, unsigned long long p)
{ return is_p_power(g.order(), p); }

} // namespace psolv

#endif // PSOLV_GROUP_HPP
