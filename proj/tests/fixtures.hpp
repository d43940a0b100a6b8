#ifndef PSOLV_TESTS_FIXTURES_HPP
#define PSOLV_TESTS_FIXTURES_HPP

#include <string>
#include <vector>

#include <psolv/catalog.hpp>
#include <psolv/series.hpp>

#include "oracle.hpp"

namespace fixtures
{

struct PGroupCase
{
  std::string name;
  unsigned p;
  psolv::Group g;
  psolv::Group sylow;
};

/// Nontrivial Sylow subgroups of catalog groups for p in {2, 3, 5}.
inline std::vector<PGroupCase> const &catalog_p_groups()
{
  static std::vector<PGroupCase> const cases = [] {
    std::vector<PGroupCase> res;
    for (auto const &e : psolv::catalog()) {
      auto g = psolv::build(e.recipe);
      for (unsigned p : {2u, 3u, 5u}) {
        auto s = psolv::sylow(g, p);
        if (!s.is_trivial())
          res.push_back({e.recipe + " p=" + std::to_string(p), p, g, s});
      }
    }
    return res;
  }();
  return cases;
}

inline oracle::Set elems(psolv::Group const &g)
{ return oracle::closure(g.degree(), g.generators()); }

} // namespace fixtures

#endif // PSOLV_TESTS_FIXTURES_HPP
