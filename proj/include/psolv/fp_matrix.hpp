#ifndef PSOLV_FP_MATRIX_HPP
#define PSOLV_FP_MATRIX_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"

namespace psolv
{

/// Square matrix over the field with p elements, acting on row vectors.
class FpMatrix
{
public:
  FpMatrix(unsigned p, std::size_t d)
  : p_(p)
  , d_(d)
  , a_(d * d, 0)
  {
    if (p < 2)
      throw Error("matrix modulus must be prime");
  }

  static FpMatrix identity(unsigned p, std::size_t d)
  {
    FpMatrix m(p, d);
    for (std::size_t i = 0; i < d; ++i)
      m.a_[i * d + i] = 1;
    return m;
  }

  unsigned prime() const { return p_; }
  std::size_t dim() const { return d_; }

  unsigned at(std::size_t i, std::size_t j) const { return a_[i * d_ + j]; }
  void set(std::size_t i, std::size_t j, long long v)
  {
    auto r = v % static_cast<long long>(p_);
    a_[i * d_ + j] = static_cast<unsigned>(r < 0 ? r + p_ : r);
  }

  bool is_zero() const
  {
    for (auto x : a_)
      if (x)
        return false;
    return true;
  }

  FpMatrix operator*(FpMatrix const &o) const
  {
    check(o);
    FpMatrix res(p_, d_);
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t k = 0; k < d_; ++k) {
        auto x = at(i, k);
        if (!x)
          continue;
        for (std::size_t j = 0; j < d_; ++j)
          res.a_[i * d_ + j] = (res.a_[i * d_ + j] + x * o.at(k, j)) % p_;
      }
    return res;
  }

  FpMatrix operator-(FpMatrix const &o) const
  {
    check(o);
    FpMatrix res(p_, d_);
    for (std::size_t i = 0; i < a_.size(); ++i)
      res.a_[i] = (a_[i] + p_ - o.a_[i]) % p_;
    return res;
  }

  FpMatrix pow(unsigned long long e) const
  {
    FpMatrix res = identity(p_, d_), base = *this;
    for (; e; e >>= 1) {
      if (e & 1)
        res = res * base;
      base = base * base;
    }
    return res;
  }

  /// Least m >= 1 with M^m = 1, or nullopt if none up to `cap`.
  std::optional<unsigned long long> order(unsigned long long cap = 1u << 20) const
  {
    auto id = identity(p_, d_);
    FpMatrix x = *this;
    for (unsigned long long m = 1; m <= cap; ++m) {
      if (x == id)
        return m;
      x = x * *this;
    }
    return std::nullopt;
  }

  std::vector<unsigned> apply(std::vector<unsigned> const &v) const
  {
    std::vector<unsigned> res(d_, 0);
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t j = 0; j < d_; ++j)
        res[j] = (res[j] + v[i] * at(i, j)) % p_;
    return res;
  }

  std::string to_string() const
  {
    std::string s = "[";
    for (std::size_t i = 0; i < d_; ++i) {
      s += i ? ",[" : "[";
      for (std::size_t j = 0; j < d_; ++j)
        s += (j ? "," : "") + std::to_string(at(i, j));
      s += "]";
    }
    return s + "]";
  }

  friend bool operator==(FpMatrix const &, FpMatrix const &) = default;

private:
  void check(FpMatrix const &o) const
  {
    if (o.p_ != p_ || o.d_ != d_)
      throw Error("matrix shape or field mismatch");
  }

  unsigned p_;
  std::size_t d_;
  std::vector<unsigned> a_;
};

/// Least m with (T - 1)^m = 0; 0 for dimension 0; nullopt when T is not
/// unipotent.
inline std::optional<unsigned> unipotency_degree(FpMatrix const &t)
{
  if (t.dim() == 0)
    return 0;
  auto n = t - FpMatrix::identity(t.prime(), t.dim());
  FpMatrix x = n;
  for (unsigned m = 1; m <= t.dim(); ++m) {
    if (x.is_zero())
      return m;
    x = x * n;
  }
  return std::nullopt;
}

} // namespace psolv

#endif // PSOLV_FP_MATRIX_HPP
