#ifndef PSOLV_ERROR_HPP
#define PSOLV_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace psolv
{

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class DegreeMismatch : public Error
{
public:
  DegreeMismatch(std::size_t a, std::size_t b)
  : Error("degree mismatch: " + std::to_string(a) + " vs " + std::to_string(b))
  {}
};

class CapExceeded : public Error
{
public:
  CapExceeded(std::string const &what, unsigned long long size,
              unsigned long long cap)
  : Error(what + ": size " + std::to_string(size) + " exceeds cap " +
          std::to_string(cap))
  {}
};

class NotNormal : public Error { public: using Error::Error; };
class NotAPGroup : public Error { public: using Error::Error; };
class NotPSolvable : public Error { public: using Error::Error; };
class InternalMismatch : public Error { public: using Error::Error; };
class PreconditionViolated : public Error { public: using Error::Error; };
class LengthCapExceeded : public Error { public: using Error::Error; };
class UnsupportedParameters : public Error { public: using Error::Error; };
class KernelNotElementaryAbelian : public Error { public: using Error::Error; };

class ParseError : public Error
{
public:
  ParseError(std::string const &msg, std::size_t line, std::size_t column)
  : Error("parse error at " + std::to_string(line) + ":" +
          std::to_string(column) + ": " + msg),
    line_(line), column_(column)
  {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

// Size limits for the brute-force paths. Defaults match the documented caps;
// the CLI overrides them per invocation.
struct Limits
{
  unsigned long long enum_cap = 200000;
  unsigned long long coset_cap = 100000;
  unsigned long long search_budget = 1000000;
  unsigned long long normal_subgroup_cap = 20000;
};

} // namespace psolv

#endif // PSOLV_ERROR_HPP
