#ifndef PSOLV_CATALOG_HPP
#define PSOLV_CATALOG_HPP

#include <array>
#include <cctype>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "group.hpp"
#include "group_io.hpp"
#include "perm.hpp"

namespace psolv
{

/// A constructible group. Text form: `kind:arg:arg` for the parametrized
/// families, `direct_product(A,B)` / `wreath(A,B)` for the constructions, and
/// `from_file:path`.
struct GroupRecipe
{
  std::string kind;
  std::vector<long long> params;
  std::vector<GroupRecipe> parts;
  std::string path;

  std::string id() const
  {
    if (kind == "from_file")
      return "from_file:" + path;
    if (!parts.empty())
      return kind + "(" + parts[0].id() + "," + parts[1].id() + ")";
    std::string res = kind;
    for (auto v : params)
      res += ":" + std::to_string(v);
    return res;
  }
};

namespace detail
{

inline GroupRecipe parse_recipe_at(std::string_view text, std::size_t &pos)
{
  auto fail = [&](std::string const &msg) { throw ParseError(msg, 1, pos + 1); };
  std::size_t start = pos;
  while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                               text[pos] == '_'))
    ++pos;
  GroupRecipe r;
  r.kind = std::string(text.substr(start, pos - start));
  if (r.kind.empty())
    fail("expected recipe kind");

  if (r.kind == "from_file") {
    if (pos >= text.size() || text[pos] != ':')
      fail("from_file needs a path");
    r.path = std::string(text.substr(pos + 1));
    pos = text.size();
    return r;
  }
  if (pos < text.size() && text[pos] == '(') {
    ++pos;
    r.parts.push_back(parse_recipe_at(text, pos));
    if (pos >= text.size() || text[pos] != ',')
      fail("expected ','");
    ++pos;
    r.parts.push_back(parse_recipe_at(text, pos));
    if (pos >= text.size() || text[pos] != ')')
      fail("expected ')'");
    ++pos;
    return r;
  }
  while (pos < text.size() && text[pos] == ':') {
    ++pos;
    std::size_t s = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (s == pos)
      fail("expected integer parameter");
    r.params.push_back(std::stoll(std::string(text.substr(s, pos - s))));
  }
  return r;
}

inline Perm perm_from_map(std::size_t n, std::function<Point(Point)> const &f)
{
  std::vector<Point> img(n);
  for (Point i = 0; i < n; ++i)
    img[i] = f(i);
  return Perm(std::move(img));
}

inline Perm cycle_on(std::size_t n, std::vector<Point> const &pts)
{
  std::vector<Point> img(n);
  for (Point i = 0; i < n; ++i)
    img[i] = i;
  for (std::size_t i = 0; i < pts.size(); ++i)
    img[pts[i]] = pts[(i + 1) % pts.size()];
  return Perm(std::move(img));
}

/// Group of the given elements acting on itself by right multiplication.
/// `mul` works on element indices 0..n-1.
inline Group regular_group(std::size_t n, std::vector<std::size_t> const &gens,
                           std::function<std::size_t(std::size_t, std::size_t)> const &mul)
{
  std::vector<Perm> perms;
  for (auto g : gens)
    perms.push_back(perm_from_map(n, [&](Point x) {
      return static_cast<Point>(mul(x, g));
    }));
  return Group(n, std::move(perms));
}

/// Matrices over F_q acting on the nonzero row vectors of F_q^dim, v -> vM.
inline Group matrix_group(unsigned q, unsigned dim,
                          std::vector<std::vector<unsigned>> const &mats)
{
  std::size_t total = 1;
  for (unsigned i = 0; i < dim; ++i)
    total *= q;
  auto decode = [&](std::size_t code) {
    std::vector<unsigned> v(dim);
    for (unsigned i = dim; i-- > 0;) {
      v[i] = code % q;
      code /= q;
    }
    return v;
  };
  auto encode = [&](std::vector<unsigned> const &v) {
    std::size_t code = 0;
    for (auto c : v)
      code = code * q + c;
    return code;
  };
  std::vector<Perm> gens;
  for (auto const &m : mats) {
    gens.push_back(perm_from_map(total - 1, [&](Point x) {
      auto v = decode(x + 1);
      std::vector<unsigned> w(dim, 0);
      for (unsigned j = 0; j < dim; ++j)
        for (unsigned i = 0; i < dim; ++i)
          w[j] = (w[j] + v[i] * m[i * dim + j]) % q;
      return static_cast<Point>(encode(w) - 1);
    }));
  }
  return Group(total - 1, std::move(gens));
}

inline unsigned primitive_root(unsigned p)
{
  for (unsigned g = 2; g < p; ++g) {
    unsigned x = 1, ord = 0;
    do {
      x = x * g % p;
      ++ord;
    } while (x != 1);
    if (ord == p - 1)
      return g;
  }
  return 1;
}

inline unsigned long long factorial(unsigned n)
{
  unsigned long long r = 1;
  for (unsigned i = 2; i <= n; ++i)
    r *= i;
  return r;
}

inline unsigned long long ipow(unsigned long long b, unsigned e)
{
  unsigned long long r = 1;
  while (e--)
    if (__builtin_mul_overflow(r, b, &r))
      throw UnsupportedParameters("order overflows 64 bits");
  return r;
}

struct Built
{
  Group group;
  std::optional<unsigned long long> expected_order;
};

inline Built build_impl(GroupRecipe const &r)
{
  auto const &k = r.kind;
  auto arg = [&](std::size_t i) -> long long {
    if (i >= r.params.size())
      throw UnsupportedParameters(k + ": missing parameter");
    return r.params[i];
  };
  auto nparams = [&](std::size_t n) {
    if (r.params.size() != n)
      throw UnsupportedParameters(k + ": expected " + std::to_string(n) +
                                  " parameter(s)");
  };
  auto need = [&](bool ok, std::string const &msg) {
    if (!ok)
      throw UnsupportedParameters(r.id() + ": " + msg);
  };
  constexpr long long max_degree = 4096;

  if (k == "cyclic") {
    nparams(1);
    auto n = arg(0);
    need(n >= 1 && n <= max_degree, "n out of range");
    std::vector<Point> pts(n);
    for (Point i = 0; i < n; ++i)
      pts[i] = i;
    return {Group(n, {cycle_on(n, pts)}), static_cast<unsigned long long>(n)};
  }
  if (k == "dihedral") {
    nparams(1);
    auto n = arg(0);
    need(n >= 3 && n <= max_degree, "n must be in [3, 4096]");
    auto rot = perm_from_map(n, [&](Point x) { return static_cast<Point>((x + 1) % n); });
    auto refl = perm_from_map(n, [&](Point x) { return static_cast<Point>((n - x) % n); });
    return {Group(n, {rot, refl}), 2ull * n};
  }
  if (k == "symmetric" || k == "alternating") {
    nparams(1);
    auto n = arg(0);
    need(n >= 1 && n <= 20, "n must be in [1, 20]");
    std::vector<Perm> gens;
    if (k == "symmetric") {
      std::vector<Point> pts(n);
      for (Point i = 0; i < n; ++i)
        pts[i] = i;
      if (n >= 2) {
        gens.push_back(cycle_on(n, pts));
        gens.push_back(cycle_on(n, {0, 1}));
      }
      return {Group(n, std::move(gens)), factorial(n)};
    }
    need(n >= 3, "alternating needs n >= 3");
    for (Point i = 2; i < n; ++i)
      gens.push_back(cycle_on(n, {0, 1, i}));
    return {Group(n, std::move(gens)), factorial(n) / 2};
  }
  if (k == "elementary_abelian") {
    nparams(2);
    auto p = arg(0), e = arg(1);
    need(is_prime(p) && e >= 1 && p * e <= max_degree, "needs prime p, k >= 1");
    std::size_t n = p * e;
    std::vector<Perm> gens;
    for (long long b = 0; b < e; ++b) {
      std::vector<Point> pts;
      for (long long i = 0; i < p; ++i)
        pts.push_back(static_cast<Point>(b * p + i));
      gens.push_back(cycle_on(n, pts));
    }
    return {Group(n, std::move(gens)), ipow(p, static_cast<unsigned>(e))};
  }
  if (k == "direct_product") {
    need(r.parts.size() == 2, "needs two factors");
    auto a = build_impl(r.parts[0]), b = build_impl(r.parts[1]);
    std::size_t da = a.group.degree(), db = b.group.degree(), n = da + db;
    std::vector<Perm> gens;
    for (auto const &g : a.group.generators())
      gens.push_back(perm_from_map(n, [&](Point x) { return x < da ? g[x] : x; }));
    for (auto const &g : b.group.generators())
      gens.push_back(perm_from_map(n, [&](Point x) {
        return x < da ? x : static_cast<Point>(da + g[x - da]);
      }));
    std::optional<unsigned long long> ord;
    if (a.expected_order && b.expected_order)
      ord = *a.expected_order * *b.expected_order;
    return {Group(n, std::move(gens)), ord};
  }
  if (k == "wreath" || k == "wreath_cyclic") {
    GroupRecipe base, top;
    if (k == "wreath") {
      need(r.parts.size() == 2, "needs base and top");
      base = r.parts[0];
      top = r.parts[1];
    } else {
      nparams(2);
      need(is_prime(arg(0)) && arg(1) >= 1 && arg(0) * arg(1) <= 64,
           "needs prime p, q >= 1, p*q <= 64");
      base = GroupRecipe{"cyclic", {arg(0)}, {}, {}};
      top = GroupRecipe{"cyclic", {arg(1)}, {}, {}};
    }
    auto a = build_impl(base), b = build_impl(top);
    std::size_t da = a.group.degree(), db = b.group.degree(), n = da * db;
    need(n <= max_degree, "degree too large");
    std::vector<Perm> gens;
    // base generators on one block of each orbit of the top group
    std::vector<bool> covered(db, false);
    for (Point blk = 0; blk < db; ++blk) {
      if (covered[blk])
        continue;
      std::vector<Point> orbit{blk};
      covered[blk] = true;
      for (std::size_t i = 0; i < orbit.size(); ++i)
        for (auto const &t : b.group.generators())
          if (!covered[t[orbit[i]]]) {
            covered[t[orbit[i]]] = true;
            orbit.push_back(t[orbit[i]]);
          }
      for (auto const &g : a.group.generators())
        gens.push_back(perm_from_map(n, [&](Point x) {
          return x / da == blk ? static_cast<Point>(blk * da + g[x % da]) : x;
        }));
    }
    for (auto const &t : b.group.generators())
      gens.push_back(perm_from_map(n, [&](Point x) {
        return static_cast<Point>(t[x / da] * da + x % da);
      }));
    std::optional<unsigned long long> ord;
    if (a.expected_order && b.expected_order)
      ord = ipow(*a.expected_order, static_cast<unsigned>(db)) * *b.expected_order;
    return {Group(n, std::move(gens)), ord};
  }
  if (k == "affine") {
    nparams(1);
    auto p = arg(0);
    need(is_prime(p) && p <= max_degree, "needs a prime");
    auto g = primitive_root(static_cast<unsigned>(p));
    auto t = perm_from_map(p, [&](Point x) { return static_cast<Point>((x + 1) % p); });
    auto m = perm_from_map(p, [&](Point x) { return static_cast<Point>(x * g % p); });
    return {Group(p, {t, m}), static_cast<unsigned long long>(p * (p - 1))};
  }
  if (k == "sl2" || k == "gl2") {
    nparams(1);
    auto q = static_cast<unsigned>(arg(0));
    need(q == 2 || q == 3, "q must be 2 or 3");
    std::vector<std::vector<unsigned>> mats{{1, 1, 0, 1}, {1, 0, 1, 1}};
    unsigned long long ord = static_cast<unsigned long long>(q) * (q * q - 1);
    if (k == "gl2") {
      mats.push_back({primitive_root(q), 0, 0, 1});
      ord *= q - 1;
    }
    return {matrix_group(q, 2, mats), ord};
  }
  if (k == "extraspecial") {
    nparams(2);
    auto p = arg(0), c = arg(1);
    need(is_prime(p) && p <= 5 && (c == 1 || c == 2),
         "needs p in {2,3,5} and exponent class 1 or 2");
    std::size_t n = p * p * p;
    if (p == 2 && c == 1) {
      // D_8 = <r, s>, element r^i s^j stored as 2i + j
      return {regular_group(8, {2, 1}, [](std::size_t x, std::size_t y) {
                auto i = x / 2, j = x % 2, k = y / 2, l = y % 2;
                auto rot = (j ? i + 4 - k : i + k) % 4;
                return rot * 2 + (j ^ l);
              }),
              8};
    }
    if (p == 2) {
      return {Group(8, {Perm::from_cycles("(1,2,3,4)(5,6,7,8)", 8),
                        Perm::from_cycles("(1,5,3,7)(2,8,4,6)", 8)}),
              8};
    }
    if (c == 1) {
      // unitriangular (a, b, c) * (a', b', c') = (a+a', b+b', c+c'+ab')
      auto enc = [p](long long a, long long b, long long z) {
        return static_cast<std::size_t>(((a % p) * p + b % p) * p + z % p);
      };
      return {regular_group(n, {enc(1, 0, 0), enc(0, 1, 0)},
                            [=](std::size_t x, std::size_t y) {
                              long long a = x / (p * p), b = x / p % p, z = x % p;
                              long long a2 = y / (p * p), b2 = y / p % p, z2 = y % p;
                              return enc(a + a2, b + b2, z + z2 + a * b2);
                            }),
              n};
    }
    // a^i b^j with a^(p^2) = b^p = 1, a^b = a^(1+p)
    long long p2 = p * p;
    auto twist = [=](long long k, long long j) {
      long long m = 1;
      for (long long t = 0; t < j; ++t)
        m = m * (1 + p) % p2;
      return k * m % p2;
    };
    return {regular_group(n, {1, static_cast<std::size_t>(p2)},
                          [=](std::size_t x, std::size_t y) {
                            long long i = x % p2, j = x / p2, k = y % p2, l = y / p2;
                            long long ni = (i + twist(k, j)) % p2;
                            return static_cast<std::size_t>(((j + l) % p) * p2 + ni);
                          }),
            n};
  }
  if (k == "extraspecial_ext") {
    nparams(1);
    auto p = static_cast<unsigned>(arg(0));
    need(p == 3 || p == 5, "p must be 3 or 5");
    // p^{1+2} as unitriangular 3x3 matrices, extended by diag(-1, 1, -1)
    unsigned m1 = p - 1;
    return {matrix_group(p, 3, {{1, 1, 0, 0, 1, 0, 0, 0, 1},
                                {1, 0, 0, 0, 1, 1, 0, 0, 1},
                                {m1, 0, 0, 0, 1, 0, 0, 0, m1}}),
            2ull * p * p * p};
  }
  if (k == "from_file") {
    return {read_group_file(r.path), std::nullopt};
  }
  throw UnsupportedParameters("unknown recipe kind: " + k);
}

} // namespace detail

inline GroupRecipe parse_recipe(std::string_view text)
{
  std::size_t pos = 0;
  auto r = detail::parse_recipe_at(text, pos);
  if (pos != text.size())
    throw ParseError("trailing characters in recipe", 1, pos + 1);
  return r;
}

/// Builds the group and checks its order against the family's closed form.
inline Group build(GroupRecipe const &r)
{
  auto b = detail::build_impl(r);
  if (b.expected_order && b.group.order() != *b.expected_order)
    throw InternalMismatch(r.id() + ": order " + std::to_string(b.group.order()) +
                           " differs from closed form " +
                           std::to_string(*b.expected_order));
  return b.group;
}

inline Group build(std::string_view recipe) { return build(parse_recipe(recipe)); }

/// Closed-form order of a recipe, when the family has one.
inline std::optional<unsigned long long> expected_order(GroupRecipe const &r)
{ return detail::build_impl(r).expected_order; }

struct CatalogEntry
{
  std::string recipe;
  std::string description;
};

/// The fixed test catalog. Every entry has order at most 10^4.
inline std::vector<CatalogEntry> const &catalog()
{
  static std::vector<CatalogEntry> const entries{
    {"cyclic:5", "C_5"},
    {"cyclic:8", "C_8"},
    {"cyclic:9", "C_9"},
    {"cyclic:15", "C_15"},
    {"dihedral:3", "D_6 = S_3"},
    {"dihedral:4", "D_8"},
    {"dihedral:5", "D_10"},
    {"dihedral:8", "D_16"},
    {"dihedral:9", "D_18"},
    {"symmetric:3", "S_3"},
    {"symmetric:4", "S_4"},
    {"symmetric:5", "S_5"},
    {"alternating:4", "A_4"},
    {"alternating:5", "A_5"},
    {"elementary_abelian:2:3", "C_2^3"},
    {"elementary_abelian:3:2", "C_3^2"},
    {"elementary_abelian:5:2", "C_5^2"},
    {"direct_product(symmetric:3,cyclic:3)", "S_3 x C_3"},
    {"direct_product(symmetric:3,symmetric:3)", "S_3 x S_3"},
    {"direct_product(cyclic:9,cyclic:3)", "C_9 x C_3"},
    {"direct_product(dihedral:4,cyclic:2)", "D_8 x C_2"},
    {"wreath_cyclic:2:2", "C_2 wr C_2 = D_8"},
    {"wreath_cyclic:2:3", "C_2 wr C_3"},
    {"wreath_cyclic:3:2", "C_3 wr C_2"},
    {"wreath_cyclic:3:3", "C_3 wr C_3"},
    {"wreath_cyclic:2:4", "C_2 wr C_4"},
    {"wreath_cyclic:5:2", "C_5 wr C_2"},
    {"wreath(cyclic:2,symmetric:3)", "C_2 wr S_3"},
    {"wreath(symmetric:3,cyclic:2)", "S_3 wr C_2"},
    {"wreath(cyclic:3,alternating:4)", "C_3 wr A_4"},
    {"affine:5", "AGL(1,5)"},
    {"affine:7", "AGL(1,7)"},
    {"affine:11", "AGL(1,11)"},
    {"sl2:2", "SL(2,2)"},
    {"sl2:3", "SL(2,3)"},
    {"gl2:3", "GL(2,3)"},
    {"extraspecial:2:1", "D_8 (regular)"},
    {"extraspecial:2:2", "Q_8"},
    {"extraspecial:3:1", "3^{1+2} exponent 3"},
    {"extraspecial:3:2", "3^{1+2} exponent 9"},
    {"extraspecial:5:1", "5^{1+2} exponent 5"},
    {"extraspecial_ext:3", "3^{1+2}:C_2"},
  };
  return entries;
}

} // namespace psolv

#endif // PSOLV_CATALOG_HPP
