#include <gtest/gtest.h>

#include <set>
#include <tuple>
#include <vector>

#include "recip/drinfeld.hpp"
#include "recip/presentation.hpp"

using namespace recip;

namespace {

FieldPtr field(uint32_t q) { return q == 4 ? FiniteField::create(2, 2) : FiniteField::create(q, 1); }

ModuleSpace space(uint32_t q, uint32_t r, uint32_t n) { return ModuleSpace(field(q), r, n); }

EngineConfig prob() { return EngineConfig{}; }

EngineConfig exact() {
  EngineConfig c;
  c.mode = EngineConfig::Mode::Exact;
  return c;
}

std::set<Monomial> support(const std::vector<LinComb>& xs) {
  std::set<Monomial> s;
  for (const auto& x : xs) {
    EXPECT_EQ(x.size(), 1u);
    s.insert(x.begin()->first);
  }
  return s;
}

}  // namespace

// ---------------------------------------------------------------- closed forms

TEST(Formulas, DimFormula) {
  EXPECT_EQ(dim_formula(2, 2, 1, 4), 9u);
  EXPECT_EQ(dim_formula(2, 2, 2, 1), 12u);
  for (uint32_t d = 1; d <= 5; ++d) {
    EXPECT_EQ(dim_formula(2, 2, 1, d), 2 * d + 1);
    EXPECT_EQ(dim_formula(2, 1, 2, d), 2u);
  }
  EXPECT_EQ(dim_formula(3, 2, 1, 0), 1u);
}

TEST(Formulas, CuspAndGroupOrder) {
  EXPECT_EQ(cusp_dim(2, 3, 2), 4u);
  EXPECT_EQ(cusp_dim(2, 1, 2), 0u);
  EXPECT_EQ(unipotent_order(2, 2, 1), 2u);
  EXPECT_EQ(unipotent_order(2, 2, 2), 32u);
  EXPECT_EQ(special_set_size(2, 2, 2, 2), 8u);
  EXPECT_EQ(binom(3, 5), 0u);
  EXPECT_EQ(binom(-1, 0), 0u);
}

TEST(Formulas, JsExpected) {
  // q=2, r=2: s=0 is the full ring; s=1 keeps F[f_2] Delta_2; s=2 keeps only degree 0.
  for (uint32_t d = 1; d <= 4; ++d) {
    EXPECT_EQ(js_expected(2, 2, 0, d), dim_formula(2, 2, 1, d));
    EXPECT_EQ(js_expected(2, 2, 1, d), 2u);
    EXPECT_EQ(js_expected(2, 2, 2, d), 0u);
  }
  EXPECT_EQ(js_expected(2, 2, 2, 0), 1u);
}

// ---------------------------------------------------------------- generators and ranks

TEST(Monomials, Counts) {
  EXPECT_EQ(monomials(space(2, 2, 1), 1).size(), 3u);
  EXPECT_EQ(monomials(space(2, 2, 1), 2).size(), 6u);
  EXPECT_EQ(monomials(space(2, 1, 2), 2).size(), 6u);
  EXPECT_EQ(monomials(space(3, 2, 1), 3).size(), binom(8 + 2, 3));
}

TEST(RankEngine, SmallExamplesBothModes) {
  const auto V = space(2, 2, 1);
  for (const auto& cfg : {prob(), exact()}) {
    EXPECT_EQ(rank_of(V, monomial_vectors(V, 1), cfg), 3u);
    EXPECT_EQ(rank_of(V, monomial_vectors(V, 2), cfg), 5u);
    auto dup = monomial_vectors(V, 2);
    const auto again = dup;
    dup.insert(dup.end(), again.begin(), again.end());
    EXPECT_EQ(rank_of(V, dup, cfg), 5u);
    EXPECT_EQ(rank_of(V, {}, cfg), 0u);
  }
}

TEST(RankEngine, ProbabilisticAgreesWithExact) {
  for (auto [q, r, n, dmax] : std::vector<std::tuple<uint32_t, uint32_t, uint32_t, uint32_t>>{
           {2, 2, 1, 3}, {2, 1, 2, 3}, {3, 2, 1, 2}, {2, 1, 3, 2}, {2, 2, 2, 1}}) {
    const auto V = space(q, r, n);
    for (uint32_t d = 1; d <= dmax; ++d) EXPECT_EQ(dim_graded(V, d, prob()), dim_graded(V, d, exact())) << V.label() << " d=" << d;
  }
}

TEST(RankEngine, DeterministicForAFixedSeed) {
  const auto V = space(2, 2, 2);
  EngineStats a, b;
  const uint64_t x = dim_graded(V, 2, prob(), &a), y = dim_graded(V, 2, prob(), &b);
  EXPECT_EQ(x, y);
  EXPECT_EQ(a.points, b.points);
  EXPECT_EQ(a.max_trial_bound, b.max_trial_bound);
  EngineConfig other = prob();
  other.seed = 7;
  EXPECT_EQ(dim_graded(V, 2, other), x);
}

TEST(RankEngine, TrialBoundIsSmall) {
  EngineStats st;
  dim_graded(space(2, 2, 2), 2, prob(), &st);
  EXPECT_GT(st.max_trial_bound, 0.0);
  EXPECT_LT(st.max_trial_bound, 0.05);
  EXPECT_GE(st.max_ext_m, 20u);
}

TEST(RankEngine, RejectsTooSmallEvaluationField) {
  EngineConfig c = prob();
  c.ext_m = 1;
  EXPECT_THROW(dim_graded(space(2, 2, 1), 2, c), Error);
}

TEST(RankEngine, TinyFieldNeverOverestimates) {
  // GF(4) without escalation: every answer is a lower bound, or the trials disagree.
  const auto V = space(2, 2, 1);
  const uint64_t truth = dim_graded(V, 3, exact());
  int answered = 0;
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    EngineConfig c = prob();
    c.ext_m = 2;
    c.max_order = 4;
    c.margin = 0;
    c.seed = seed;
    try {
      EXPECT_LE(dim_graded(V, 3, c), truth);
      ++answered;
    } catch (const EngineDisagreement&) {
    }
  }
  SUCCEED() << answered << " of 20 seeds answered";
}

// ---------------------------------------------------------------- graded dimensions

TEST(DimGraded, Examples) {
  const auto A = space(2, 2, 1), B = space(2, 1, 2);
  for (uint32_t d = 1; d <= 3; ++d) {
    EXPECT_EQ(dim_graded(A, d, prob()), 2 * d + 1);
    EXPECT_EQ(dim_graded(B, d, prob()), 2u);
  }
  EXPECT_EQ(dim_graded(space(2, 2, 2), 1, prob()), 12u);
}

TEST(DimGraded, SingleRelationInDegreeOne) {
  // (2,1,2): generators a = [1/X11], b = [1/X12], c = [1/(X11+X12)]; Rel = t a - b - c.
  const auto V = space(2, 1, 2);
  const auto rel = relation(V, V.basis(1, 2));
  const RatFunc t = RatFunc::t(V.gf());
  LinComb expect = lc_term({V.basis(1, 1).index}, t);
  expect = lc_sub(expect, lc_gen(V, V.basis(1, 2)));
  expect = lc_sub(expect, lc_gen(V, V.add(V.basis(1, 1), V.basis(1, 2))));
  EXPECT_EQ(rel, expect);
  EXPECT_EQ(relation_span(V, 1).size(), 2u);
  EXPECT_EQ(rank_of(V, relation_span(V, 1), exact()), 1u);
}

TEST(Relations, VanishUnderCarlitzLevelT2) {
  const auto c = carlitz_level_t2();
  const ModuleSpace& V = c.rho.space();
  const auto& K = c.t.context();
  auto coeff = [&](const RatFunc& x) { return K->from_base(x); };
  for (uint32_t d = 1; d <= 3; ++d)
    for (const auto& x : relation_span(V, d)) EXPECT_TRUE(lc_evaluate(x, c.rho.values(), K->zero(), coeff).is_zero());
  // The monomials themselves do not vanish.
  EXPECT_FALSE(lc_evaluate(lc_gen(V, V.basis(1, 1)), c.rho.values(), K->zero(), coeff).is_zero());
}

// ---------------------------------------------------------------- special sets and the free basis

TEST(SpecialSets, Examples) {
  {
    const auto V = space(2, 2, 1);
    const auto s = special_sets(V);
    ASSERT_EQ(s.delta.size(), 2u);
    ASSERT_EQ(s.delta[0].size(), 1u);
    EXPECT_EQ(s.delta[0][0], lc_one(V));
    EXPECT_EQ(support(s.E[0]), (std::set<Monomial>{{V.basis(1, 1).index}}));
    EXPECT_EQ(s.f[0], lc_gen(V, V.basis(1, 1)));
    const ModElem x1 = V.basis(1, 1), x2 = V.basis(2, 1);
    EXPECT_EQ(support(s.E[1]), (std::set<Monomial>{{x2.index}, {V.add(x2, x1).index}}));
    EXPECT_EQ(s.f[1], lc_add(lc_gen(V, x2), lc_gen(V, V.add(x1, x2))));
  }
  {
    const auto V = space(2, 1, 2);
    const auto s = special_sets(V);
    const ModElem a = V.basis(1, 1), b = V.basis(1, 2);
    EXPECT_EQ(support(s.E[0]), (std::set<Monomial>{{b.index}, {V.add(a, b).index}}));
  }
}

TEST(SpecialSets, Cardinalities) {
  for (auto [q, r, n] : std::vector<std::tuple<uint32_t, uint32_t, uint32_t>>{{2, 2, 2}, {3, 2, 1}, {2, 3, 1}, {2, 1, 3}}) {
    const auto V = space(q, r, n);
    const auto s = special_sets(V);
    for (uint32_t k = 1; k <= r; ++k) {
      EXPECT_EQ(s.delta[k - 1].size(), special_set_size(q, r, n, k));
      EXPECT_EQ(s.E[k - 1].size(), special_set_size(q, r, n, k));
    }
  }
}

TEST(FreeBasis, Examples) {
  for (auto [q, r, n, dmax] : std::vector<std::tuple<uint32_t, uint32_t, uint32_t, uint32_t>>{
           {2, 2, 1, 3}, {2, 1, 2, 3}, {2, 2, 2, 2}, {3, 2, 1, 2}}) {
    const auto V = space(q, r, n);
    for (uint32_t d = 1; d <= dmax; ++d) {
      const auto rep = verify_free_basis(V, d, prob());
      EXPECT_TRUE(rep.pass) << V.label() << " d=" << d << " card=" << rep.cardinality << " rank=" << rep.rank
                            << " dim=" << rep.dim;
      EXPECT_EQ(rep.cardinality, dim_formula(q, r, n, d));
    }
  }
}

TEST(FreeBasis, ExactModeOnTheSmallestSpaces) {
  EXPECT_TRUE(verify_free_basis(space(2, 2, 1), 2, exact()).pass);
  EXPECT_TRUE(verify_free_basis(space(2, 1, 2), 2, exact()).pass);
}

TEST(GroupU, OrbitOfAnEProductIsFree) {
  for (auto [r, n] : std::vector<std::pair<uint32_t, uint32_t>>{{2, 1}, {1, 2}, {2, 2}}) {
    const auto V = space(2, r, n);
    const auto U = MatrixGroup::unipotent(V);
    Monomial m;
    for (uint32_t k = 1; k <= r; ++k) m.push_back(V.basis(k, n).index);
    std::sort(m.begin(), m.end());
    std::set<Monomial> orbit;
    for (size_t g = 0; g < U.size(); ++g) {
      Monomial hm;
      for (uint32_t v : m) hm.push_back(U.act(g, {v}).index);
      std::sort(hm.begin(), hm.end());
      orbit.insert(hm);
    }
    EXPECT_EQ(orbit.size(), U.size());
    // The orbit is exactly the set of E-products.
    std::set<Monomial> products;
    for (const auto& [x, deg] : set_products(V, special_sets(V).E)) products.insert(x.begin()->first);
    EXPECT_EQ(orbit, products);
  }
}

// ---------------------------------------------------------------- homomorphisms

TEST(PiApply, Examples) {
  const auto V = space(2, 2, 2);
  const auto W = space(2, 1, 2);
  const LinearMap i = LinearMap::from_generators(W, V, {V.basis(1, 2)});
  // Off the image: zero.
  EXPECT_TRUE(pi_apply(i, lc_gen(V, V.basis(2, 1))).empty());
  EXPECT_TRUE(pi_apply(i, lc_term({V.basis(1, 1).index, V.basis(2, 2).index}, rf_one(V))).empty());
  // Relations go to relations.
  for (uint32_t w = W.torsion_size(1); w < W.size(); ++w) EXPECT_EQ(pi_apply(i, relation(V, i({w}))), relation(W, {w}));
  // Identity.
  const auto x = lc_add(lc_gen(V, V.basis(1, 1)), lc_term({3, 5}, rf_one(V)));
  EXPECT_EQ(pi_apply(LinearMap::identity(V), x), x);
}

TEST(EpsApply, QuotientFormula) {
  const auto V = ModuleSpace::plain(field(2), 2);
  const ModElem x = V.unit(0), y = V.unit(1);
  const auto m = subspace_maps(span_fq(V, {y}));
  const ModuleSpace& Q = m.quotient.dst();
  const auto img = eps_apply(m.quotient, lc_gen(Q, m.quotient(x)));
  EXPECT_EQ(img, lc_add(lc_gen(V, x), lc_gen(V, V.add(x, y))));
}

TEST(EpsApply, SectionOfPi) {
  const auto L = ModuleSpace::plain(field(2), 2);
  const auto V = ModuleSpace::plain(field(2), 3);
  const LinearMap i(L, V, {V.unit(0), V.add(V.unit(1), V.unit(2))});
  for (uint32_t d = 1; d <= 3; ++d)
    for (const auto& x : monomial_vectors(L, d)) EXPECT_EQ(pi_apply(i, eps_apply(i, x)), x);
}

TEST(EpsApply, QuotientPreservesRank) {
  const auto V = ModuleSpace::plain(field(2), 3);
  const auto m = subspace_maps(span_fq(V, {V.unit(2)}));
  const ModuleSpace& Q = m.quotient.dst();
  for (uint32_t d = 1; d <= 3; ++d) {
    std::vector<LinComb> img;
    for (const auto& x : monomial_vectors(Q, d)) img.push_back(eps_apply(m.quotient, x));
    EXPECT_EQ(rank_of(V, img, prob()), dim_graded(Q, d, prob())) << "d=" << d;
  }
}

TEST(LevelMap, Examples) {
  const auto V1 = space(2, 1, 1), V2 = space(2, 1, 2);
  const auto x = lc_gen(V2, V2.basis(1, 2));
  EXPECT_EQ(level_map_apply(V2, V2, x), x);
  EXPECT_EQ(level_map_rank(V1, V2, 1, prob()), 1u);
  EXPECT_THROW(level_map_apply(V2, V1, x), Error);
}

TEST(LevelMap, ImageMatchesReductionKernelInvariants) {
  for (uint32_t r : {1u, 2u}) {
    const auto lo = space(2, r, 1), hi = space(2, r, 2);
    const auto H = MatrixGroup::reduction_kernel(hi);
    for (uint32_t d = 1; d <= 2; ++d) {
      const uint64_t img = level_map_rank(lo, hi, d, prob());
      EXPECT_EQ(img, dim_formula(2, r, 1, d));
      EXPECT_EQ(invariant_dim(hi, H, d, prob()), img) << "r=" << r << " d=" << d;
    }
  }
}

// ---------------------------------------------------------------- boundary ideal

TEST(Boundary, BasisOfTheSmallestCase) {
  const auto V = space(2, 2, 1);
  const auto B = boundary_basis(V, 2);
  const uint32_t x1 = V.basis(1, 1).index, x2 = V.basis(2, 1).index, x12 = V.add(V.basis(1, 1), V.basis(2, 1)).index;
  EXPECT_EQ(support(B), (std::set<Monomial>{{x1, x2}, {x1, x12}}));
}

TEST(Boundary, Dimensions) {
  const auto V = space(2, 2, 1);
  const std::vector<uint64_t> want{0, 2, 4};
  for (uint32_t d = 1; d <= 3; ++d) {
    const auto rep = boundary_ideal(V, d, prob());
    EXPECT_TRUE(rep.pass) << "d=" << d;
    EXPECT_EQ(rep.dim_kernel, want[d - 1]);
    EXPECT_EQ(rep.basis_rank, want[d - 1]);
    EXPECT_TRUE(rep.gens_checked);
  }
  const auto W = space(2, 1, 2);
  for (uint32_t d = 1; d <= 2; ++d) {
    const auto rep = boundary_ideal(W, d, prob());
    EXPECT_TRUE(rep.pass);
    EXPECT_EQ(rep.dim_kernel, 2u);
    EXPECT_EQ(rep.dim_kernel, rep.dim_graded);
  }
}

TEST(Boundary, LevelTwoRankTwo) {
  const auto rep = boundary_ideal(space(2, 2, 2), 2, prob());
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.dim_kernel, 32u);
  EXPECT_EQ(rep.submodules, count_free_submodules(space(2, 2, 2), 1));
}

TEST(Boundary, ExactModeAgrees) {
  const auto a = boundary_ideal(space(2, 2, 1), 3, exact());
  EXPECT_TRUE(a.pass);
  EXPECT_EQ(a.dim_kernel, 4u);
}

TEST(IvIdeal, Examples) {
  EXPECT_EQ(iv_ideal(space(2, 2, 1), 2, prob()).dim_kernel, 2u);
  EXPECT_EQ(iv_ideal(space(2, 2, 1), 3, prob()).dim_kernel, 4u);
  const auto r3 = iv_ideal(space(3, 2, 1), 2, prob());
  EXPECT_TRUE(r3.pass);
  EXPECT_EQ(r3.dim_kernel, 3u);
  EXPECT_EQ(r3.gens_rank, 3u);
  EXPECT_THROW(iv_ideal(space(2, 1, 2), 2, prob()), Error);
}

// ---------------------------------------------------------------- quotients by J_s

TEST(JsQuotient, Examples) {
  const auto V = ModuleSpace::plain(field(2), 2);
  for (uint32_t d = 1; d <= 3; ++d) {
    const auto s0 = js_quotient(V, 0, d, prob());
    EXPECT_TRUE(s0.pass);
    EXPECT_EQ(s0.dim, dim_graded(V, d, prob()));
    const auto s2 = js_quotient(V, 2, d, prob());
    EXPECT_TRUE(s2.pass);
    EXPECT_EQ(s2.dim, 0u);
  }
  // s = 1, d = 1: J kills the single generator [1/x]; 3 - 1 = 2 remain.
  const auto s1 = js_quotient(V, 1, 1, exact());
  EXPECT_EQ(s1.dim, 2u);
  EXPECT_TRUE(s1.pass);
  EXPECT_THROW(js_quotient(V, 3, 1, prob()), Error);
}

TEST(JsQuotient, Dimension3) {
  const auto V = ModuleSpace::plain(field(2), 3);
  for (uint32_t s = 0; s <= 3; ++s)
    for (uint32_t d = 1; d <= 2; ++d) EXPECT_TRUE(js_quotient(V, s, d, prob()).pass) << "s=" << s << " d=" << d;
}

// ---------------------------------------------------------------- invariants

TEST(Invariants, UnderU) {
  const auto A = space(2, 2, 1);
  EXPECT_EQ(invariant_dim(A, MatrixGroup::unipotent(A), 2, prob()), 3u);
  const auto B = space(2, 1, 2);
  EXPECT_EQ(invariant_dim(B, MatrixGroup::unipotent(B), 3, prob()), 1u);
  for (uint32_t d = 1; d <= 3; ++d)
    EXPECT_EQ(invariant_dim(A, MatrixGroup::unipotent(A), d, prob()), binom(d + 1, 1)) << "d=" << d;
}

TEST(Invariants, OrbitSumsAreInvariant) {
  const auto V = space(2, 2, 2);
  const auto U = MatrixGroup::unipotent(V);
  for (const auto& x : orbit_sums(V, U, 2))
    for (size_t g = 0; g < U.size(); ++g) EXPECT_EQ(lc_relabel(x, U.permutation(g)), x);
}

// ---------------------------------------------------------------- localization

TEST(FkScaling, Examples) {
  const auto V = space(2, 1, 2);
  EXPECT_TRUE(fk_scaling_check(V, 1, 2, exact()).difference.empty());
  const auto f = fk_scaling_check(V, 1, 1, exact());
  EXPECT_TRUE(f.pass);
  // The difference is t^{-1} Rel_{X_{1,2}}.
  EXPECT_EQ(f.difference, lc_scale(relation(V, V.basis(1, 2)), RatFunc::t_power(V.gf(), -1)));
}

TEST(FkScaling, AllPositions) {
  for (auto [q, r, n] : std::vector<std::tuple<uint32_t, uint32_t, uint32_t>>{{2, 2, 2}, {3, 1, 2}, {2, 1, 3}})
    for (uint32_t k = 1; k <= r; ++k)
      for (uint32_t nu = 1; nu <= n; ++nu) EXPECT_TRUE(fk_scaling_check(space(q, r, n), k, nu, exact()).pass);
}
