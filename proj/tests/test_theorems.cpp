#include <gtest/gtest.h>

#include <random>

#include <psolv/catalog.hpp>
#include <psolv/theorems.hpp>

#include "fixtures.hpp"
#include "oracle.hpp"

using namespace psolv;
using fixtures::elems;
using oracle::Set;

namespace
{

Perm cyc(char const *c, std::size_t n) { return Perm::from_cycles(c, n); }

Group gens(std::size_t n, std::initializer_list<char const *> cs)
{
  std::vector<Perm> g;
  for (auto c : cs)
    g.push_back(cyc(c, n));
  return Group(n, g);
}

Group v4() { return gens(4, {"(1,2)(3,4)", "(1,3)(2,4)"}); }

// Brute-force scan for the main hypothesis over a generous (r, s) box.
bool oracle_main_hypothesis(Set const &p, unsigned prime, unsigned ell)
{
  std::vector<Set> gam{p};
  for (int i = 0; i < 12; ++i)
    gam.push_back(oracle::commutator(gam.back(), p));
  unsigned t = ell * (prime - 1);
  Set const &gt = gam[std::min<std::size_t>(t, gam.size()) - 1];
  unsigned long long q = 1;
  for (unsigned s = 0; s < 8; ++s, q *= prime)
    for (unsigned r = 1; r <= gam.size(); ++r)
      if (t < r + s * (prime - 1) && oracle::subset(gt, oracle::power(gam[r - 1], q)))
        return true;
  return false;
}

bool has_hit(Verdict const &v, std::string const &rs)
{
  for (auto const &w : v.witnesses)
    if (w.value == rs)
      return true;
  return false;
}

std::vector<std::pair<std::string, Group>> p_solvable_cases(unsigned p)
{
  std::vector<std::pair<std::string, Group>> res;
  for (auto const &e : catalog()) {
    auto g = build(e.recipe);
    if (g.order() % p == 0 && is_p_solvable(g, p))
      res.emplace_back(e.recipe, g);
  }
  return res;
}

} // namespace

TEST(GammaPowerHypothesis, Examples)
{
  for (auto [r, p] : {std::pair{"elementary_abelian:3:2", 3u}, std::pair{"cyclic:25", 5u}}) {
    EkrFamily fam(build(r), p);
    auto v = check_main_hypothesis(fam, 1);
    EXPECT_TRUE(v.hypothesis_holds) << r;
    EXPECT_TRUE(has_hit(v, "(1,1)")) << r;
  }
  // C_9 x C_3 is abelian; M(27) is powerful and nonabelian
  EkrFamily m27(build("extraspecial:3:2"), 3);
  auto v = check_main_hypothesis(m27, 1);
  EXPECT_TRUE(v.hypothesis_holds);
  EXPECT_EQ(v.parameters["r"], 1);
  EXPECT_EQ(v.parameters["s"], 1);
  EXPECT_EQ(v.parameters["special_case"], 1);

  EkrFamily w(build("wreath_cyclic:3:3"), 3);
  auto vw = check_main_hypothesis(w, 1);
  EXPECT_FALSE(vw.hypothesis_holds);
  EXPECT_EQ(vw.parameters["hits"], 0);
  EXPECT_FALSE(vw.notes.empty());
  EXPECT_THROW(check_main_hypothesis(w, 0), Error);
}

TEST(GammaPowerHypothesis, MatchesOracleAndImpliesEkrHypothesis)
{
  for (auto const &c : fixtures::catalog_p_groups()) {
    SCOPED_TRACE(c.name);
    EkrFamily fam(c.sylow, c.p);
    Set ps = c.sylow.order() <= 243 ? elems(c.sylow) : Set{};
    for (unsigned ell = 1; ell <= 4; ++ell) {
      auto mh = check_main_hypothesis(fam, ell);
      if (!ps.empty())
        EXPECT_EQ(mh.hypothesis_holds, oracle_main_hypothesis(ps, c.p, ell)) << "l=" << ell;
      if (mh.parameters["special_case"])
        EXPECT_TRUE(mh.hypothesis_holds);
      auto imp = check_hypothesis_implication(fam, ell);
      EXPECT_FALSE(imp.is_finding()) << "l=" << ell;
    }
  }
}

TEST(ExponentChain, Examples)
{
  auto pg = verify_main(build("direct_product(cyclic:9,cyclic:3)"), 3, 1);
  EXPECT_TRUE(pg.hypothesis_holds);
  EXPECT_EQ(pg.conclusion_holds, true);
  EXPECT_EQ(pg.parameters["p_length"], 1);

  // for p = 2 and l = 1 the hypothesis asks gamma_1 = Q_8 inside some
  // gamma_r^{2^s} with r + s > 1, which fails; l = 3 is the least that works
  auto sl2 = build("sl2:3");
  EXPECT_FALSE(verify_main(sl2, 2, 1).hypothesis_holds);
  EkrFamily q8(sylow(sl2, 2), 2);
  EXPECT_EQ(minimal_ell(q8, ChainHypothesis::main), 3u);
  auto sl = verify_main(sl2, 2, 3);
  EXPECT_TRUE(sl.hypothesis_holds);
  EXPECT_EQ(sl.parameters["main_hypothesis"], 1);
  EXPECT_EQ(sl.conclusion_holds, true);
  EXPECT_EQ(sl.parameters["p_length"], 1);
  EXPECT_EQ(sl.parameters["O_pprime_p_order"], 8);

  auto s4 = build("symmetric:4");
  EkrFamily fam(sylow(s4, 2), 2);
  EXPECT_EQ(minimal_ell(fam, ChainHypothesis::main), 3u);
  EXPECT_EQ(minimal_ell(fam, ChainHypothesis::thm6), 3u);
  auto v = verify_main(s4, 2, 3);
  EXPECT_TRUE(v.hypothesis_holds);
  EXPECT_EQ(v.conclusion_holds, true);
  EXPECT_EQ(v.parameters["p_length"], 2);
  EXPECT_FALSE(verify_main(s4, 2, 1).hypothesis_holds);
  EXPECT_FALSE(verify_main(s4, 2, 1).conclusion_holds);

  EXPECT_THROW(verify_main(build("alternating:5"), 2, 1), NotPSolvable);
}

TEST(ExponentChain, CatalogChainAtMinimalEll)
{
  for (unsigned p : {2u, 3u, 5u})
    for (auto const &[id, g] : p_solvable_cases(p)) {
      SCOPED_TRACE(id + " p=" + std::to_string(p));
      Group P = sylow(g, p);
      EkrFamily fam(P, p);
      for (auto which : {ChainHypothesis::main, ChainHypothesis::thm6}) {
        auto ell = minimal_ell(fam, which);
        auto v = verify_main(g, p, ell, which);
        ASSERT_TRUE(v.hypothesis_holds);
        EXPECT_EQ(v.conclusion_holds, true);
        EXPECT_FALSE(v.is_finding());
        // link (ii) directly
        Group e2 = power_subgroup(fam.compute((ell - 1) * (p - 1), 1).subgroup, p * p);
        unsigned long long bound = 1;
        for (unsigned i = 0; i <= ell; ++i)
          bound *= p;
        EXPECT_TRUE(is_subgroup(power_subgroup(P, bound), e2));
      }
    }
}

TEST(TypePMinus2Embedding, Examples)
{
  auto g = build("extraspecial_ext:3");
  auto P = sylow(g, 3);
  Group one = Group::trivial(g.degree());
  auto triv = verify_prop3(g, 3, one, {P, 3, 1, {one}});
  EXPECT_TRUE(triv.hypothesis_holds);
  EXPECT_EQ(triv.conclusion_holds, true);

  // N inside O_3(G) with a type-1 filtration found by search
  auto op = o_p(g, 3);
  PFSearcher s(P, 3, 1);
  int checked = 0;
  for (auto const &n : s.normal_subgroups_of_p()) {
    auto r = s.search(n, 100000);
    if (r.status != SearchStatus::found || !is_subgroup(n, op))
      continue;
    auto v = verify_prop3(g, 3, n, *r.filtration);
    EXPECT_TRUE(v.hypothesis_holds);
    EXPECT_EQ(v.conclusion_holds, true);
    ++checked;
  }
  EXPECT_GT(checked, 1);

  auto s3c3 = build("direct_product(symmetric:3,cyclic:3)");
  auto n = sylow(s3c3, 3);
  Filtration f{n, 3, 1, {n, Group::trivial(s3c3.degree())}};
  ASSERT_TRUE(verify_potent_filtration(f).valid);
  auto v = verify_prop3(s3c3, 3, n, f);
  EXPECT_TRUE(v.hypothesis_holds);
  EXPECT_EQ(v.conclusion_holds, true);

  EXPECT_THROW(verify_prop3(build("symmetric:4"), 2, Group::trivial(4),
                            {sylow(build("symmetric:4"), 2), 2, 0, {Group::trivial(4)}}),
               PreconditionViolated);
  // a filtration that is not valid gives no conclusion
  auto bad = verify_prop3(s3c3, 3, n, {n, 3, 1, {n}});
  EXPECT_FALSE(bad.hypothesis_holds);
  EXPECT_FALSE(bad.conclusion_holds);
}

TEST(TypePMinus1Embedding, Examples)
{
  auto s4 = build("symmetric:4");
  auto P = sylow(s4, 2);
  auto opp = o_pprime_p(s4, 2);
  EXPECT_TRUE(same_group(opp, v4()));
  PFSearcher s(P, 2, 1);
  int found = 0;
  for (auto const &n : s.normal_subgroups_of_p()) {
    auto r = s.search(n, 100000);
    if (r.status != SearchStatus::found)
      continue;
    ++found;
    auto v = verify_prop4(s4, 2, n, *r.filtration);
    EXPECT_TRUE(v.hypothesis_holds);
    EXPECT_EQ(v.conclusion_holds, true);
    EXPECT_TRUE(is_subgroup(n, v4()));
  }
  EXPECT_GE(found, 2);

  auto g = build("extraspecial_ext:3");
  auto P3 = sylow(g, 3);
  PFSearcher s3(P3, 3, 2);
  for (auto const &n : s3.normal_subgroups_of_p()) {
    auto r = s3.search(n, 100000);
    if (r.status != SearchStatus::found)
      continue;
    auto v = verify_prop4(g, 3, n, *r.filtration);
    EXPECT_EQ(v.parameters["power"], 9);
    EXPECT_EQ(v.conclusion_holds, true);
  }
}

TEST(OpContainment, Examples)
{
  auto s4 = build("symmetric:4");
  auto v = verify_lemma8(s4, 2, v4(), 1);
  EXPECT_TRUE(v.hypothesis_holds);
  EXPECT_EQ(v.conclusion_holds, true);

  auto t = verify_lemma8(s4, 2, Group::trivial(4), 3);
  EXPECT_TRUE(t.hypothesis_holds);
  EXPECT_EQ(t.conclusion_holds, true);

  auto a4 = build("alternating:4");
  for (unsigned l = 1; l <= 8; ++l) {
    auto w = verify_lemma8(s4, 2, a4, l);
    EXPECT_FALSE(w.hypothesis_holds);
    EXPECT_FALSE(w.conclusion_holds);
    EXPECT_EQ(w.parameters["commutator_order"], 4);
  }
  EXPECT_THROW(verify_lemma8(build("symmetric:3"), 2, Group::trivial(3), 1),
               PreconditionViolated);
  EXPECT_THROW(verify_lemma8(s4, 2, gens(4, {"(1,2)"}), 1), NotNormal);
  EXPECT_THROW(verify_lemma8(build("alternating:5"), 2, Group::trivial(5), 1), NotPSolvable);
}

TEST(OpContainment, AllNormalSubgroupsOfQualifyingCatalogGroups)
{
  int instances = 0;
  for (unsigned p : {2u, 3u, 5u})
    for (auto const &[id, g] : p_solvable_cases(p)) {
      if (!o_pprime(g, p).is_trivial())
        continue;
      SCOPED_TRACE(id);
      for (auto const &n : normal_subgroups(g))
        for (unsigned l = 1; l <= 3; ++l) {
          auto v = verify_lemma8(g, p, n, l);
          EXPECT_FALSE(v.is_finding());
          ++instances;
        }
    }
  EXPECT_GT(instances, 20);
}

TEST(CommutatorPowerInclusion, Examples)
{
  auto c = build("cyclic:8");
  auto t = check_O24_inclusion(c, c, Group::trivial(8), 2, 1, 1);
  EXPECT_TRUE(t.hypothesis_holds);
  EXPECT_EQ(t.parameters["lhs_order"], 1);
  EXPECT_EQ(t.parameters["rhs_order"], 1);
  EXPECT_EQ(t.conclusion_holds, true);

  auto ab = build("direct_product(cyclic:9,cyclic:3)");
  auto w = check_O24_inclusion(ab, ab, ab, 3, 1, 2);
  EXPECT_EQ(w.parameters["lhs_order"], 1);
  EXPECT_EQ(w.conclusion_holds, true);

  auto s4 = build("symmetric:4");
  auto v = v4();
  auto m = sylow(s4, 2);
  auto res = check_O24_inclusion(s4, v, m, 2, 2, 1);
  EXPECT_TRUE(res.hypothesis_holds);
  EXPECT_EQ(res.conclusion_holds, true);

  // both sides by brute force
  Set vs = elems(v), ms = elems(m);
  Set lhs = oracle::commutator(vs, oracle::power(ms, 8));
  Set rhs = oracle::power(oracle::commutator(vs, ms), 8);
  for (unsigned i = 1; i <= 3; ++i) {
    auto part = oracle::power(oracle::iterated_commutator(vs, ms, 1u << i), 1u << (3 - i));
    rhs = oracle::join(rhs, part);
  }
  EXPECT_EQ(res.parameters["lhs_order"], static_cast<long long>(lhs.size()));
  EXPECT_EQ(res.parameters["rhs_order"], static_cast<long long>(rhs.size()));
  EXPECT_EQ(oracle::subset(lhs, rhs), true);

  auto nh = check_O24_inclusion(s4, gens(4, {"(1,2)"}), s4, 2, 1, 1);
  EXPECT_FALSE(nh.hypothesis_holds);
  EXPECT_FALSE(nh.conclusion_holds);
}

TEST(LinearAction, S4OnV4)
{
  auto s4 = build("symmetric:4");
  auto q = quotient(s4, v4());
  auto t = action_matrix(q, cyc("(1,2,3)", 4));
  EXPECT_EQ(t.dim(), 2u);
  EXPECT_EQ(t.prime(), 2u);
  EXPECT_EQ(t.order(), 3u);
  EXPECT_FALSE(unipotency_degree(t));

  for (auto const &x : v4().elements())
    EXPECT_EQ(action_matrix(q, x), FpMatrix::identity(2, 2));

  LinearAction act(v4());
  std::mt19937_64 rng(11);
  for (int k = 0; k < 1000; ++k) {
    auto g = s4.random_element_from(rng), h = s4.random_element_from(rng);
    EXPECT_EQ(act.matrix(g * h), act.matrix(g) * act.matrix(h));
  }
  // every vector, not just the basis
  for (auto const &g : s4.generators()) {
    auto tg = act.matrix(g);
    for (auto const &x : v4().elements())
      EXPECT_EQ(tg.apply(act.coords(x)), act.coords(x.conjugate_by(g)));
  }
  EXPECT_THROW(LinearAction(build("cyclic:4")), KernelNotElementaryAbelian);
  EXPECT_THROW(LinearAction(gens(4, {"(1,2)"})).matrix(cyc("(1,3)", 4)), PreconditionViolated);
}

TEST(LinearAction, CatalogElementaryAbelianOp)
{
  int groups = 0;
  for (auto const &e : catalog()) {
    auto g = build(e.recipe);
    for (unsigned p : {2u, 3u, 5u}) {
      if (g.order() % p)
        continue;
      auto op = o_p(g, p);
      if (op.is_trivial())
        continue;
      std::unique_ptr<LinearAction> act;
      try {
        act = std::make_unique<LinearAction>(op, p);
      } catch (KernelNotElementaryAbelian const &) {
        continue;
      }
      SCOPED_TRACE(e.recipe + " p=" + std::to_string(p));
      ++groups;
      std::mt19937_64 rng(5);
      for (int k = 0; k < 1000; ++k) {
        auto a = g.random_element_from(rng), b = g.random_element_from(rng);
        ASSERT_EQ(act->matrix(a * b), act->matrix(a) * act->matrix(b));
      }
      for (auto const &x : g.generators())
        EXPECT_NO_THROW(act->matrix(x));
    }
  }
  EXPECT_GT(groups, 10);
}

TEST(Unipotency, Examples)
{
  EXPECT_EQ(unipotency_degree(FpMatrix::identity(3, 4)), 1u);
  EXPECT_EQ(unipotency_degree(FpMatrix(2, 0)), 0u);
  for (unsigned p : {2u, 3u, 5u}) {
    auto j = FpMatrix::identity(p, 2);
    j.set(0, 1, 1);
    EXPECT_EQ(unipotency_degree(j), 2u);
  }
  auto j3 = FpMatrix::identity(3, 3);
  j3.set(0, 1, 1);
  j3.set(1, 2, 1);
  EXPECT_EQ(unipotency_degree(j3), 3u);
  FpMatrix m(3, 2);
  m.set(0, 0, -1);
  m.set(1, 1, 1);
  EXPECT_EQ(m.at(0, 0), 2u);
  EXPECT_FALSE(unipotency_degree(m));
}

TEST(PLengthBound, OddPrimesOnCatalog)
{
  for (unsigned p : {3u, 5u})
    for (auto const &[id, g] : p_solvable_cases(p)) {
      auto v = check_hall_higman(g, p);
      EXPECT_FALSE(v.report_only);
      EXPECT_EQ(v.conclusion_holds, true) << id;
    }
  auto c = check_hall_higman(build("wreath(cyclic:3,alternating:4)"), 3);
  EXPECT_EQ(c.parameters["p_length"], 2);
  EXPECT_TRUE(check_hall_higman(build("symmetric:4"), 2).report_only);
}

TEST(EmbeddedInOppScan, Scan)
{
  EXPECT_TRUE(question7_scan({}, 2, 1000).empty());

  auto res = question7_scan({{"symmetric:4", build("symmetric:4")},
                             {"alternating:5", build("alternating:5")}},
                            2, 100000);
  ASSERT_EQ(res.size(), 2u);
  EXPECT_TRUE(res[0].scanned);
  EXPECT_FALSE(res[0].rows.empty());
  for (auto const &row : res[0].rows)
    EXPECT_TRUE(row.in_o_pprime_p) << row.n;
  auto v = to_verdict(res[0], 2);
  EXPECT_TRUE(v.report_only);
  EXPECT_EQ(v.parameters["counterexample_candidates"], 0);
  EXPECT_FALSE(res[1].scanned);
  EXPECT_EQ(res[1].reason, "not p-solvable");
  EXPECT_FALSE(to_verdict(res[1], 2).hypothesis_holds);
}
