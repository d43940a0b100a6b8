#ifndef PSOLV_VERDICT_HPP
#define PSOLV_VERDICT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "group.hpp"
#include "perm.hpp"

namespace psolv
{

struct Witness
{
  std::string description;
  std::string value;

  friend bool operator==(Witness const &, Witness const &) = default;
};

/// Outcome of checking one statement on one instance. A true hypothesis with
/// a false conclusion on an asserted statement is a finding.
struct Verdict
{
  std::string statement;
  bool hypothesis_holds = false;
  std::optional<bool> conclusion_holds;
  std::map<std::string, long long> parameters;
  std::vector<Witness> witnesses;
  std::string notes;
  bool report_only = false;

  bool is_finding() const
  {
    return !report_only && hypothesis_holds && conclusion_holds.has_value() &&
           !*conclusion_holds;
  }

  friend bool operator==(Verdict const &, Verdict const &) = default;
};

inline std::string describe(Group const &g)
{
  std::string res = "order " + std::to_string(g.order()) + " <";
  for (std::size_t i = 0; i < g.generators().size(); ++i)
    res += (i ? ", " : "") + g.generators()[i].to_cycles();
  return res + ">";
}

inline std::string describe(Perm const &x) { return x.to_cycles(); }

/// A generator of `a` outside `b`, if any.
inline std::optional<Perm> escaping_generator(Group const &a, Group const &b)
{
  for (auto const &g : a.generators())
    if (!b.contains(g))
      return g;
  return std::nullopt;
}

} // namespace psolv

#endif // PSOLV_VERDICT_HPP
