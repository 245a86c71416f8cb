#include <gtest/gtest.h>

#include <set>
#include <tuple>
#include <vector>

#include "recip/drinfeld.hpp"
#include "recip/group.hpp"
#include "recip/identities.hpp"
#include "recip/module_space.hpp"
#include "recip/recip_map.hpp"

using namespace recip;

namespace {

FieldPtr field(uint32_t q) {
  if (q == 4) return FiniteField::create(2, 2);
  if (q == 8) return FiniteField::create(2, 3);
  if (q == 9) return FiniteField::create(3, 2);
  return FiniteField::create(q, 1);
}

/// Independent count: distinct A-spans of all s-tuples whose span has q^{sn} elements.
uint64_t tuple_count(const ModuleSpace& V, uint32_t s) {
  uint64_t want = 1;
  for (uint32_t i = 0; i < s * V.n(); ++i) want *= V.q();
  std::set<std::vector<bool>> seen;
  std::vector<uint32_t> idx(s, 0);
  while (true) {
    std::vector<ModElem> g;
    for (auto i : idx) g.push_back({i});
    Subspace S = span_a(V, g);
    if (S.size() == want) seen.insert(S.member);
    size_t k = 0;
    while (k < s && ++idx[k] == V.size()) idx[k++] = 0;
    if (k == s) break;
  }
  return seen.size();
}

}  // namespace

// ---------------------------------------------------------------- modules

TEST(ModuleSpace, TMultiplication) {
  ModuleSpace V(field(2), 1, 2);
  const ModElem x1 = V.basis(1, 1), x2 = V.basis(1, 2);
  EXPECT_EQ(V.t_mul(V.add(x2, x1)), x1);
  EXPECT_EQ(V.t_mul(x1), ModuleSpace::zero());
  ModuleSpace W(field(3), 2, 3);
  for (uint32_t k = 1; k <= 2; ++k)
    for (uint32_t nu = 2; nu <= 3; ++nu) EXPECT_EQ(W.t_mul(W.basis(k, nu)), W.basis(k, nu - 1));
}

TEST(ModuleSpace, TIsLinearAndNilpotent) {
  ModuleSpace V(field(3), 2, 2);
  for (uint32_t a = 0; a < V.size(); a += 5)
    for (uint32_t b = 0; b < V.size(); b += 7) {
      EXPECT_EQ(V.t_mul(V.add({a}, {b})), V.add(V.t_mul({a}), V.t_mul({b})));
      EXPECT_EQ(V.t_mul(V.scale(2, {a})), V.scale(2, V.t_mul({a})));
    }
  for (uint32_t a = 0; a < V.size(); ++a) EXPECT_EQ(V.t_pow_mul({a}, V.n()), ModuleSpace::zero());
  EXPECT_EQ(V.size(), 81u);
}

TEST(ModuleSpace, Divisors) {
  using D = std::vector<std::pair<uint32_t, uint32_t>>;
  EXPECT_EQ(divisors(ModuleSpace(field(2), 1, 2)), (D{{1, 0}, {1, 1}, {1, 2}}));
  EXPECT_EQ(divisors(ModuleSpace(field(3), 1, 1)), (D{{1, 0}, {2, 0}, {1, 1}, {2, 1}}));
  EXPECT_EQ(divisors(ModuleSpace(field(2), 3, 1)), (D{{1, 0}, {1, 1}}));
}

TEST(FreeSubmodules, SmallCounts) {
  EXPECT_EQ(count_free_submodules(ModuleSpace(field(2), 2, 1), 1), 3u);
  EXPECT_EQ(count_free_submodules(ModuleSpace(field(2), 1, 2), 1), 1u);
  EXPECT_EQ(count_free_submodules(ModuleSpace(field(2), 2, 1), 2), 1u);
}

TEST(FreeSubmodules, EnumerationIsDuplicateFreeAndFree) {
  ModuleSpace V(field(2), 2, 2);
  for (uint32_t s = 1; s <= 2; ++s) {
    auto subs = free_submodules(V, s);
    std::set<std::vector<bool>> seen;
    for (const auto& S : subs) {
      EXPECT_TRUE(seen.insert(S.member).second);
      EXPECT_EQ(S.rank(), s);
      EXPECT_EQ(S.size(), 1u << (2 * s));
    }
  }
}

class FreeSubmoduleCounts : public ::testing::TestWithParam<std::tuple<uint32_t, uint32_t, uint32_t>> {};

TEST_P(FreeSubmoduleCounts, CanonicalMatchesTupleEnumeration) {
  const auto [q, r, n] = GetParam();
  ModuleSpace V(field(q), r, n);
  const auto bfs = brute_force_free_submodule_counts(V);
  for (uint32_t s = 1; s <= r; ++s) {
    const uint64_t c = count_free_submodules(V, s);
    EXPECT_EQ(c, tuple_count(V, s)) << "s=" << s;
    EXPECT_EQ(c, bfs[s]) << "s=" << s;
  }
}

INSTANTIATE_TEST_SUITE_P(Small, FreeSubmoduleCounts,
                         ::testing::Values(std::make_tuple(2u, 2u, 1u), std::make_tuple(2u, 1u, 2u),
                                           std::make_tuple(2u, 2u, 2u), std::make_tuple(3u, 2u, 1u),
                                           std::make_tuple(2u, 3u, 1u), std::make_tuple(2u, 1u, 3u),
                                           std::make_tuple(4u, 2u, 1u), std::make_tuple(3u, 1u, 2u),
                                           std::make_tuple(2u, 2u, 3u)));

TEST(GroupU, Orders) {
  EXPECT_EQ(MatrixGroup::unipotent(ModuleSpace(field(2), 2, 1)).size(), 2u);
  EXPECT_EQ(MatrixGroup::unipotent(ModuleSpace(field(2), 2, 2)).size(), 32u);
  EXPECT_EQ(MatrixGroup::unipotent(ModuleSpace(field(3), 2, 1)).size(), 3u);
  EXPECT_EQ(MatrixGroup::unipotent(ModuleSpace(field(2), 3, 1)).size(), 8u);
}

TEST(GroupU, IdentityActsTrivially) {
  ModuleSpace V(field(2), 2, 2);
  auto U = MatrixGroup::unipotent(V);
  const auto I = RingMatrix::identity(2, 2);
  for (uint32_t v = 0; v < V.size(); ++v) EXPECT_EQ(U.apply(I, {v}), ModElem{v});
}

TEST(GroupU, ClosedUnderProductsAndInverses) {
  ModuleSpace V(field(2), 2, 2);
  auto U = MatrixGroup::unipotent(V);
  std::set<std::vector<uint32_t>> perms;
  for (size_t g = 0; g < U.size(); ++g) perms.insert(U.permutation(g));
  ASSERT_EQ(perms.size(), U.size());
  std::vector<uint32_t> id(V.size());
  for (uint32_t v = 0; v < V.size(); ++v) id[v] = v;
  for (size_t g = 0; g < U.size(); ++g) {
    bool has_inverse = false;
    for (size_t h = 0; h < U.size(); ++h) {
      std::vector<uint32_t> c(V.size());
      for (uint32_t v = 0; v < V.size(); ++v) c[v] = U.permutation(g)[U.permutation(h)[v]];
      EXPECT_TRUE(perms.count(c));
      has_inverse = has_inverse || c == id;
    }
    EXPECT_TRUE(has_inverse);
  }
}

TEST(GroupU, TransitiveOnEachE) {
  for (auto [q, r, n] : std::vector<std::tuple<uint32_t, uint32_t, uint32_t>>{{2, 2, 1}, {2, 2, 2}, {3, 2, 1}, {2, 3, 1}}) {
    ModuleSpace V(field(q), r, n);
    auto U = MatrixGroup::unipotent(V);
    for (uint32_t k = 1; k <= r; ++k) {
      std::set<ModElem> Ek, orbit;
      for (ModElem w : prefix_space(V, k, n).elements) Ek.insert(V.add(V.basis(k, n), w));
      for (size_t g = 0; g < U.size(); ++g) orbit.insert(U.act(g, V.basis(k, n)));
      EXPECT_EQ(orbit, Ek) << "k=" << k;
    }
  }
}

TEST(PrefixSpace, Examples) {
  ModuleSpace V(field(2), 2, 2);
  EXPECT_EQ(prefix_space(V, 1, 1).size(), 1u);
  const auto p21 = prefix_space(V, 2, 1);
  EXPECT_EQ(p21.size(), 2u);
  EXPECT_TRUE(p21.contains(V.basis(1, 1)));
  const auto p12 = prefix_space(V, 1, 2);
  EXPECT_EQ(p12.size(), 4u);
  for (ModElem v : p12.elements) EXPECT_TRUE(V.killed_by_t_power(v, 1));
  for (uint32_t k = 1; k <= 2; ++k)
    for (uint32_t nu = 1; nu <= 2; ++nu) EXPECT_EQ(prefix_space(V, k, nu).dim(), 2 * (nu - 1) + k - 1);
}

TEST(SubspaceMaps, Examples) {
  ModuleSpace V = ModuleSpace::plain(field(2), 2);
  const ModElem e1 = V.unit(0), e2 = V.unit(1);
  auto m = subspace_maps(span_fq(V, {e2}));
  EXPECT_EQ(m.quotient(e1), m.quotient(V.add(e1, e2)));
  EXPECT_NE(m.quotient(e1), ModuleSpace::zero());
  EXPECT_EQ(m.quotient(e2), ModuleSpace::zero());
  for (uint32_t a = 0; a < m.section.src().size(); ++a) EXPECT_EQ(m.quotient(m.section({a})), ModElem{a});

  auto z = subspace_maps(span_fq(V, {}));
  EXPECT_TRUE(z.quotient.injective());
  EXPECT_TRUE(z.quotient.surjective());

  auto full = subspace_maps(span_fq(V, {e1, e2}));
  EXPECT_EQ(full.quotient.dst().size(), 1u);
}

// ---------------------------------------------------------------- reciprocal maps

namespace {

RatFunc tt() { return RatFunc::t(field(2).get()); }

RecipMap<RatFunc> injective_example() {
  // lambda(e1) = 1, lambda(e2) = t on F_2^2.
  ModuleSpace V = ModuleSpace::plain(field(2), 2);
  return from_linear<RatFunc>(V, {tt().one(), tt()});
}

}  // namespace

TEST(FqAxioms, InjectiveLinearMapsAndUniversal) {
  EXPECT_TRUE(check_fq_axioms(injective_example()).ok);
  for (uint32_t q : {2u, 3u})
    for (uint32_t d = 1; d <= 2; ++d) {
      auto rep = check_fq_axioms(universal_map(ModuleSpace::plain(field(q), d)));
      EXPECT_TRUE(rep.ok) << q << " " << d;
      if (d == 2) {
        EXPECT_GT(rep.checked, 0u);
      }
    }
}

TEST(FqAxioms, PerturbationIsDetected) {
  const auto rho = injective_example();
  const auto bad = rho.with_value({1}, rho({1}) + rho.one());
  const auto rep = check_fq_axioms(bad);
  EXPECT_FALSE(rep.ok);
  EXPECT_GT(rep.violation_count, 0u);
}

TEST(AAxioms, Examples) {
  const RatFunc t = tt();
  EXPECT_TRUE(check_a_axioms(universal_map(ModuleSpace::plain(field(3), 2)), FR::constant(field(3).get(), 2, GFElem(field(3).get(), 1))).ok);
  const auto c2 = carlitz_level_t2();
  EXPECT_TRUE(check_a_axioms(c2.rho, c2.t).ok);
  ModuleSpace V(field(2), 1, 2);
  RecipMap<RatFunc> bad(V, {t.zero(), t.inv(), t.one(), t.one()});
  EXPECT_FALSE(check_a_axioms(bad, t).ok);
}

TEST(Pullback, Examples) {
  ModuleSpace V = ModuleSpace::plain(field(2), 2);
  ModuleSpace L = ModuleSpace::plain(field(2), 1);
  const auto rho = universal_map(V);
  const LinearMap i(L, V, {V.unit(0)});
  const auto pb = pullback(rho, i);
  EXPECT_TRUE(check_fq_axioms(pb).ok);
  EXPECT_EQ(pb({1}), FR::reciprocal(V.gf(), {1, 0}, GFElem(V.gf(), 0)));
  EXPECT_EQ(pullback(rho, LinearMap::identity(V)), rho);
  EXPECT_EQ(pullback(push_zero(pb, i), i), pb);
}

TEST(PushZero, CarlitzIntoRankTwo) {
  const auto c = carlitz_level_t();
  ModuleSpace V2(c.rho.space().field_ptr(), 2, 1);
  const LinearMap i = LinearMap::from_generators(c.rho.space(), V2, {V2.add(V2.basis(1, 1), V2.basis(2, 1))});
  const auto pz = push_zero(c.rho, i);
  EXPECT_TRUE(check_a_axioms(pz, c.t).ok);
  EXPECT_TRUE(pz(V2.basis(1, 1)).is_zero());
  EXPECT_EQ(pz(i({1})), c.rho({1}));
  const auto fc = fiber_class(pz);
  EXPECT_EQ(fc.rank, 1u);
  EXPECT_TRUE(fc.W.contains(i({1})));
  EXPECT_EQ(fc.W.size(), 2u);
}

TEST(PushQuot, Examples) {
  ModuleSpace V = ModuleSpace::plain(field(2), 2);
  const ModElem e1 = V.unit(0), e2 = V.unit(1);
  const auto rho = injective_example();
  const auto m = subspace_maps(span_fq(V, {e2}));
  const auto pq = push_quot(rho, m.quotient);
  EXPECT_EQ(pq(m.quotient(e1)), rho(e1) + rho(V.add(e1, e2)));
  EXPECT_TRUE(pq.fiberwise_invertible());
  EXPECT_TRUE(check_fq_axioms(pq).ok);
  EXPECT_EQ(push_quot(rho, LinearMap::identity(V)), rho);
}

TEST(PushQuot, FiberSumFormulaForLinearMaps) {
  // (p_* rho)(p(v)) = sum_{v' in V'} 1/lambda(v - v') for rho = 1/lambda on F_3^2.
  auto f3 = field(3);
  const RatFunc t = RatFunc::t(f3.get());
  ModuleSpace V = ModuleSpace::plain(f3, 2);
  const auto rho = from_linear<RatFunc>(V, {t.one(), t});
  const Subspace sub = span_fq(V, {V.add(V.unit(0), V.unit(1))});
  const auto m = subspace_maps(sub);
  const auto pq = push_quot(rho, m.quotient);
  for (uint32_t v = 1; v < V.size(); ++v) {
    if (sub.contains({v})) continue;
    RatFunc s = t.zero();
    for (ModElem w : sub.elements) {
      const auto c = V.coords(V.sub({v}, w));
      s = s + (t.from_int(c[0]) + t.from_int(c[1]) * t).inv();
    }
    EXPECT_EQ(pq(m.quotient({v})), s);
  }
}

TEST(PushQuot, SectionComposite) {
  // p_* j_* = id for a section j of p.
  ModuleSpace V = ModuleSpace::plain(field(2), 3);
  const auto m = subspace_maps(span_fq(V, {V.unit(2)}));
  const auto rho2 = universal_map(m.quotient.dst());
  EXPECT_EQ(push_quot(push_zero(rho2, m.section), m.quotient), rho2);
}

TEST(PushGeneral, FactorsThroughSpecialCases) {
  ModuleSpace V = ModuleSpace::plain(field(2), 2);
  ModuleSpace L = ModuleSpace::plain(field(2), 1);
  const auto rhoL = universal_map(L);
  const LinearMap i(L, V, {V.unit(1)});
  EXPECT_EQ(push_general(rhoL, i), push_zero(rhoL, i));
  const auto rho = injective_example();
  const auto m = subspace_maps(span_fq(V, {V.unit(0)}));
  EXPECT_EQ(push_general(rho, m.quotient), push_quot(rho, m.quotient));
  // f = i o p: V -> L -> V.
  const LinearMap f(V, V, {ModuleSpace::zero(), V.unit(1)});
  const LinearMap p(V, L, {ModuleSpace::zero(), L.unit(0)});
  const LinearMap i1(L, V, {V.unit(1)});
  EXPECT_EQ(push_general(rho, f), push_zero(push_quot(rho, p), i1));
  EXPECT_THROW(push_general(rho, LinearMap(V, V, {ModuleSpace::zero(), ModuleSpace::zero()})), Error);
}

TEST(ExpPoly, OneFactor) {
  const RatFunc t = tt();
  ModuleSpace V = ModuleSpace::plain(field(2), 1);
  const RecipMap<RatFunc> rho(V, {t.zero(), t.inv()});
  const auto e = exp_poly(rho);
  ASSERT_EQ(e.degree(), 1);
  EXPECT_EQ(e[0], t.one());
  EXPECT_EQ(e[1], -t.inv());
}

TEST(ExpPoly, UniversalDimTwo) {
  const auto rho = universal_map(ModuleSpace::plain(field(2), 2));
  const auto u = exp_poly_uni(rho);
  EXPECT_EQ(u.degree(), 4);
  EXPECT_TRUE(u[3].is_zero());
  EXPECT_FALSE(u[2].is_zero());
  EXPECT_EQ(exp_poly(rho).degree(), 2);
}

TEST(ExpPoly, ZeroSpace) {
  const auto rho = universal_map(ModuleSpace::plain(field(2), 0));
  const auto e = exp_poly(rho);
  ASSERT_EQ(e.degree(), 0);
  EXPECT_EQ(e[0], rho.one());
}

TEST(ExpPoly, AdditiveForUniversalAndRandomMaps) {
  for (auto [q, d] : std::vector<std::pair<uint32_t, uint32_t>>{{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}})
    EXPECT_NO_THROW(exp_poly(universal_map(ModuleSpace::plain(field(q), d))));
  // Random injective maps F_2^3 -> GF(2^8).
  auto big = FiniteField::create(2, 8);
  ModuleSpace V = ModuleSpace::plain(field(2), 3);
  Rng rng = derive_rng(11, 0, 0);
  int made = 0;
  while (made < 100) {
    std::vector<GFElem> im;
    for (int j = 0; j < 3; ++j) im.emplace_back(big.get(), big->sample(rng));
    std::vector<GFElem> lam = linear_values(V, im);
    bool inj = true;
    for (uint32_t v = 1; v < V.size(); ++v) inj = inj && !lam[v].is_zero();
    if (!inj) continue;
    ++made;
    const auto rho = from_linear<GFElem>(V, im);
    ASSERT_TRUE(check_fq_axioms(rho).ok);
    ASSERT_NO_THROW(exp_poly(rho));
  }
}

TEST(FiberClass, Examples) {
  const auto rho = injective_example();
  const auto fc = fiber_class(rho);
  EXPECT_EQ(fc.W.size(), 4u);
  EXPECT_EQ(fc.rank, 2u);
  for (uint32_t v = 1; v < 4; ++v) EXPECT_EQ(fc.lambda[v] * rho({v}), rho.one());

  const RatFunc t = tt();
  ModuleSpace V = ModuleSpace::plain(field(2), 2);
  const RecipMap<RatFunc> zero(V, std::vector<RatFunc>(4, t.zero()));
  const auto fz = fiber_class(zero);
  EXPECT_EQ(fz.W.size(), 1u);
  EXPECT_EQ(fz.rank, 0u);

  const auto ez = fiber_class(carlitz_extension_by_zero().rho);
  EXPECT_EQ(ez.rank, 1u);
  EXPECT_EQ(ez.W.size(), 2u);
}

TEST(FiberClass, SupportNotASubmodule) {
  const RatFunc t = tt();
  ModuleSpace V = ModuleSpace::plain(field(2), 2);
  const RecipMap<RatFunc> bad(V, {t.zero(), t.one(), t.one(), t.zero()});
  EXPECT_THROW(fiber_class(bad), NotSubmodule);
}

TEST(Identities, RhoCExplicit) {
  // (1/x1 + 1/(x1+x2)) * e(x1) = 1 with e(X) = X - X^2/x2.
  const FiniteField* f = field(2).get();
  const GFElem z(f, 0);
  const FR x1 = FR::linear(f, {1, 0}, z), r1 = FR::reciprocal(f, {1, 0}, z);
  const FR r2 = FR::reciprocal(f, {0, 1}, z), r12 = FR::reciprocal(f, {1, 1}, z);
  EXPECT_EQ((r1 + r12) * (x1 - x1 * x1 * r2), x1.one());

  ModuleSpace V = ModuleSpace::plain(field(2), 2);
  IdentityParams<FR> prm;
  prm.sub = span_fq(V, {V.unit(1)});
  prm.v = V.unit(0);
  EXPECT_TRUE(verify_identity<FR>("rho_c", universal_map(V), prm).pass);
}

TEST(Identities, CompositionWithZeroSubspace) {
  ModuleSpace V = ModuleSpace::plain(field(2), 2);
  IdentityParams<FR> prm;
  prm.sub = span_fq(V, {});
  EXPECT_TRUE(verify_identity<FR>("comp_b", universal_map(V), prm).pass);
}

TEST(Identities, ErhoBOnALine) {
  EXPECT_TRUE(verify_identity<FR>("erho_b", universal_map(ModuleSpace::plain(field(2), 1))).pass);
}

TEST(Identities, UnknownName) {
  EXPECT_THROW(verify_identity<FR>("rho_z", universal_map(ModuleSpace::plain(field(2), 1))), UnknownIdentity);
}

TEST(Identities, SweepSmallSpaces) {
  for (auto [q, d] : std::vector<std::pair<uint32_t, uint32_t>>{{2, 1}, {2, 2}, {3, 1}}) {
    const auto sw = identity_sweep(ModuleSpace::plain(field(q), d));
    EXPECT_GT(sw.cases, 0u);
    EXPECT_EQ(sw.failures, 0u) << "q=" << q << " d=" << d;
  }
}

// ---------------------------------------------------------------- Drinfeld modules

TEST(Drinfeld, Carlitz) {
  const auto c = carlitz_level_t();
  const auto phi = phi_from_recip(c.rho, c.t);
  EXPECT_EQ(phi.phi_t(), TauPoly<RatFunc>(c.t, 2, {c.t, c.t.one()}));
  EXPECT_TRUE(check_rank(phi, 1).ok);
  EXPECT_FALSE(check_rank(phi, 2).ok);
}

TEST(Drinfeld, ZeroMapGivesTrivialModule) {
  const RatFunc t = tt();
  ModuleSpace V(field(2), 2, 1);
  const RecipMap<RatFunc> zero(V, std::vector<RatFunc>(V.size(), t.zero()));
  const auto ld = level_from_recip(zero, t);
  EXPECT_EQ(ld.fiber.W.size(), 1u);
  EXPECT_EQ(ld.phi.phi_t(), TauPoly<RatFunc>::scalar(t, 2));
  EXPECT_EQ(ld.phi.phi({0, 1, 1}), TauPoly<RatFunc>::scalar(t * t + t, 2));
}

TEST(Drinfeld, GenericRankTwoTopCoefficient) {
  const auto g = generic_rank2_level_t();
  const auto phi = phi_from_recip(g.rho, g.t);
  const RatTrans u = g.rho({1}).inv(), w = g.rho({2}).inv();
  ASSERT_EQ(phi.phi_t().degree(), 2);
  const RatTrans top = g.t * (u * w * (u + w)).inv();
  EXPECT_EQ(phi.phi_t().leading(), top);
  EXPECT_NE(phi.phi_t().leading(), g.t * (u * w * (u + w)).pow(2).inv());
  EXPECT_TRUE(check_rank(phi, 2).ok);
}

TEST(Drinfeld, LevelFromRecipCarlitz) {
  const auto c = carlitz_level_t();
  const auto ld = level_from_recip(c.rho, c.t);
  EXPECT_TRUE(ld.checks.ok);
  EXPECT_EQ(ld.fiber.W.size(), 2u);
  EXPECT_EQ(ld.fiber.lambda[1], c.t);
}

TEST(Drinfeld, LevelFromRecipCarlitzSquare) {
  const auto c = carlitz_level_t2();
  const auto ld = level_from_recip(c.rho, c.t);
  EXPECT_TRUE(ld.checks.ok);
  EXPECT_EQ(ld.fiber.W.size(), 4u);
  const RatExt one = c.t.one();
  EXPECT_EQ(ld.phi.phi_t(), TauPoly<RatExt>(c.t, 2, {c.t, one}));
  const ModuleSpace& V = c.rho.space();
  const RatExt s = ld.fiber.lambda[V.basis(1, 2).index];
  EXPECT_EQ(s * s + c.t * s + c.t, c.t.zero());
  // t * (1/t) = 1/s + 1/(s + t).
  EXPECT_EQ(c.t * c.rho(V.basis(1, 1)), c.rho(V.basis(1, 2)) + c.rho(V.add(V.basis(1, 1), V.basis(1, 2))));
  EXPECT_TRUE(check_torsion(ld).ok);
}

TEST(Drinfeld, AllExamplesSatisfyTheChecks) {
  auto run = [](const auto& ex) {
    const auto ld = level_from_recip(ex.rho, ex.t);
    EXPECT_TRUE(ld.checks.ok) << ex.name;
    EXPECT_TRUE(check_torsion(ld).ok) << ex.name;
    // d(phi_a) = a for deg a <= 2.
    const uint32_t q = ex.rho.space().q();
    for (uint32_t a0 = 0; a0 < q; ++a0)
      for (uint32_t a1 = 0; a1 < q; ++a1)
        for (uint32_t a2 = 0; a2 < q; ++a2) {
          const std::vector<uint32_t> a{a0, a1, a2};
          EXPECT_EQ(ld.phi.phi(a).d(), ld.phi.element(a)) << ex.name;
        }
  };
  run(carlitz_level_t());
  run(carlitz_level_t2());
  run(generic_rank2_level_t());
  run(carlitz_extension_by_zero());
}

TEST(Drinfeld, DirectFormulaMatchesIteratedPhiT) {
  const auto c = carlitz_level_t2();
  const auto phi = phi_from_recip(c.rho, c.t);
  EXPECT_EQ(phi_direct(c.rho, c.t, 1, 2), phi.phi_t_power(2));
  EXPECT_EQ(phi_direct(c.rho, c.t, 1, 0), TauPoly<RatExt>::scalar(c.t.one(), 2));
}

TEST(Drinfeld, RoundTrips) {
  const auto c = carlitz_level_t();
  const auto ld = level_from_recip(c.rho, c.t);
  const ModuleSpace& V = c.rho.space();
  EXPECT_EQ(recip_from_level(ld.phi, ld.fiber.lambda, LinearMap::identity(V)), c.rho);

  ModuleSpace V2(V.field_ptr(), 2, 1);
  const LinearMap i = LinearMap::from_generators(V, V2, {V2.add(V2.basis(1, 1), V2.basis(2, 1))});
  const auto ez = recip_from_level(ld.phi, ld.fiber.lambda, i);
  EXPECT_EQ(ez, carlitz_extension_by_zero().rho);
  const auto back = level_from_recip(ez, c.t);
  EXPECT_TRUE(back.fiber.W.same_elements(span_a(V2, {i({1})})));
  EXPECT_EQ(back.phi.phi_t(), ld.phi.phi_t());
  EXPECT_EQ(back.fiber.lambda[i({1}).index], c.t);
}

TEST(Drinfeld, CorruptedLevelStructureRejected) {
  const auto c = carlitz_level_t();
  const auto ld = level_from_recip(c.rho, c.t);
  std::vector<RatFunc> lam = ld.fiber.lambda;
  lam[1] = lam[1] + c.t.one();
  EXPECT_THROW(recip_from_level(ld.phi, lam, LinearMap::identity(c.rho.space())), NotLevelStructure);
}
