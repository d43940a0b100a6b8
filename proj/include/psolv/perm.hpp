#ifndef PSOLV_PERM_HPP
#define PSOLV_PERM_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace psolv
{

using Point = std::uint32_t;

/// A bijection on {0, ..., n-1}. Permutations act on the right: x^(ab) is
/// (x^a)^b, so `a * b` means "apply a, then b".
class Perm
{
public:
  Perm() = default;

  explicit Perm(std::size_t degree)
  : images_(degree)
  { std::iota(images_.begin(), images_.end(), Point{0}); }

  /// Throws Error if `images` is not a bijection of {0..n-1}.
  explicit Perm(std::vector<Point> images)
  : images_(std::move(images))
  {
    if (!is_bijection(images_))
      throw Error("image list is not a bijection");
  }

  static bool is_bijection(std::span<Point const> images)
  {
    std::vector<bool> seen(images.size(), false);
    for (Point x : images) {
      if (x >= images.size() || seen[x])
        return false;
      seen[x] = true;
    }
    return true;
  }

  static Perm identity(std::size_t degree) { return Perm(degree); }

  std::size_t degree() const { return images_.size(); }
  Point operator[](Point x) const { return images_[x]; }
  std::span<Point const> images() const { return images_; }

  bool is_identity() const
  {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i)
        return false;
    return true;
  }

  Perm inverse() const
  {
    Perm res;
    res.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
      res.images_[images_[i]] = static_cast<Point>(i);
    return res;
  }

  Perm &operator*=(Perm const &rhs)
  {
    if (rhs.degree() != degree())
      throw DegreeMismatch(degree(), rhs.degree());
    if (&rhs == this) {
      Perm copy = rhs;
      return *this *= copy;
    }
    for (auto &x : images_)
      x = rhs.images_[x];
    return *this;
  }

  friend Perm operator*(Perm lhs, Perm const &rhs) { return lhs *= rhs; }

  friend bool operator==(Perm const &, Perm const &) = default;
  friend auto operator<=>(Perm const &, Perm const &) = default;

  Perm pow(long long e) const
  {
    Perm base = e < 0 ? inverse() : *this;
    unsigned long long k = e < 0 ? -static_cast<unsigned long long>(e) : e;
    Perm res(degree());
    while (k) {
      if (k & 1u)
        res *= base;
      base *= base;
      k >>= 1u;
    }
    return res;
  }

  /// g^-1 x g
  Perm conjugate_by(Perm const &g) const { return g.inverse() * *this * g; }

  /// lcm of cycle lengths
  unsigned long long order() const
  {
    std::vector<bool> seen(degree(), false);
    unsigned long long res = 1;
    for (Point i = 0; i < degree(); ++i) {
      if (seen[i])
        continue;
      unsigned long long len = 0;
      for (Point j = i; !seen[j]; j = images_[j]) {
        seen[j] = true;
        ++len;
      }
      res = std::lcm(res, len);
    }
    return res;
  }

  /// Smallest point moved, or degree() for the identity.
  Point first_moved() const
  {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i)
        return static_cast<Point>(i);
    return static_cast<Point>(images_.size());
  }

  /// Cycle notation with 1-based points, e.g. "(1,2,3)(4,5)"; "()" for the
  /// identity.
  std::string to_cycles() const
  {
    std::string res;
    std::vector<bool> seen(degree(), false);
    for (Point i = 0; i < degree(); ++i) {
      if (seen[i] || images_[i] == i)
        continue;
      res += '(';
      for (Point j = i; !seen[j]; j = images_[j]) {
        seen[j] = true;
        if (j != i)
          res += ',';
        res += std::to_string(j + 1);
      }
      res += ')';
    }
    return res.empty() ? "()" : res;
  }

  /// Parses 1-based cycle notation ("(1,2)(3,4)", spaces also separate).
  static Perm from_cycles(std::string_view text, std::size_t degree)
  {
    std::vector<Point> images(degree);
    std::iota(images.begin(), images.end(), Point{0});
    std::size_t pos = 0;
    auto fail = [&](std::string const &msg) {
      throw ParseError(msg, 1, pos + 1);
    };
    while (pos < text.size()) {
      if (std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
        continue;
      }
      if (text[pos] != '(')
        fail("expected '('");
      ++pos;
      std::vector<Point> cycle;
      for (;;) {
        while (pos < text.size() &&
               (text[pos] == ',' ||
                std::isspace(static_cast<unsigned char>(text[pos]))))
          ++pos;
        if (pos >= text.size())
          fail("unterminated cycle");
        if (text[pos] == ')') {
          ++pos;
          break;
        }
        if (!std::isdigit(static_cast<unsigned char>(text[pos])))
          fail("expected point");
        unsigned long long v = 0;
        while (pos < text.size() &&
               std::isdigit(static_cast<unsigned char>(text[pos])))
          v = v * 10 + static_cast<unsigned>(text[pos++] - '0');
        if (v < 1 || v > degree)
          fail("point out of range");
        cycle.push_back(static_cast<Point>(v - 1));
      }
      // cycles compose left to right
      std::vector<Point> step(degree);
      std::iota(step.begin(), step.end(), Point{0});
      std::vector<bool> seen(degree, false);
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        if (seen[cycle[i]])
          fail("repeated point in cycle");
        seen[cycle[i]] = true;
        step[cycle[i]] = cycle[(i + 1) % cycle.size()];
      }
      for (auto &x : images)
        x = step[x];
    }
    return Perm(std::move(images));
  }

private:
  std::vector<Point> images_;
};

/// x^-1 y^-1 x y
inline Perm commutator(Perm const &x, Perm const &y)
{ return x.inverse() * y.inverse() * x * y; }

inline Perm compose(Perm const &a, Perm const &b) { return a * b; }
inline Perm inverse(Perm const &a) { return a.inverse(); }

struct PermHash
{
  std::size_t operator()(Perm const &p) const noexcept
  {
    std::size_t h = 1469598103934665603ull;
    for (Point x : p.images()) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }
};

} // namespace psolv

#endif // PSOLV_PERM_HPP
