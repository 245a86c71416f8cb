#pragma once

#include <string>
#include <vector>

#include "recip/extension.hpp"
#include "recip/ratfunc.hpp"
#include "recip/recip_map.hpp"
#include "recip/transcendental.hpp"

namespace recip {

/// A Drinfeld F_q[t]-module over a field K containing F_q(t), given by phi_t.
template <class K>
class DrinfeldModule {
 public:
  DrinfeldModule(TauPoly<K> phi_t, K t, const FiniteField* gf) : phi_t_(std::move(phi_t)), t_(std::move(t)), gf_(gf) {}

  const TauPoly<K>& phi_t() const { return phi_t_; }
  const K& t() const { return t_; }
  uint64_t q() const { return phi_t_.q(); }

  /// phi_a for a = sum_i a[i] t^i (a[i] codes of GF(q)), by Horner in the tau-ring.
  TauPoly<K> phi(const std::vector<uint32_t>& a) const {
    TauPoly<K> acc(t_, q());
    for (size_t i = a.size(); i-- > 0;) {
      acc = phi_t_.compose(acc);
      if (a[i]) acc = acc + TauPoly<K>::scalar(lift_scalar(t_, GFElem(gf_, a[i])), q());
    }
    return acc;
  }
  TauPoly<K> phi_t_power(uint32_t nu) const { return phi_t_.iterate(nu); }
  /// The element a(t) of K.
  K element(const std::vector<uint32_t>& a) const {
    K acc = t_.zero();
    for (size_t i = a.size(); i-- > 0;) {
      acc = acc * t_;
      if (a[i]) acc = acc + lift_scalar(t_, GFElem(gf_, a[i]));
    }
    return acc;
  }

 private:
  TauPoly<K> phi_t_;
  K t_;
  const FiniteField* gf_;
};

/// a X prod_{v in V_nu, v != 0} (1 - rho(v) X) for a = alpha t^nu, in tau-form.
template <class K>
TauPoly<K> phi_direct(const RecipMap<K>& rho, const K& t, uint32_t alpha, uint32_t nu) {
  const ModuleSpace& V = rho.space();
  const K one = rho.one();
  Poly<K> e = Poly<K>::x(one);
  for (uint32_t v = 1; v < V.torsion_size(nu); ++v)
    if (!rho({v}).is_zero()) e = e * Poly<K>(one, {one, -rho({v})});
  const K a = lift_scalar(t, GFElem(V.gf(), alpha)) * power(t, nu);
  return to_tau(e, V.q()).scale(a);
}

/// phi_t from the product formula with a = t.
template <class K>
DrinfeldModule<K> phi_from_recip(const RecipMap<K>& rho, const K& t) {
  return DrinfeldModule<K>(phi_direct(rho, t, 1, 1), t, rho.space().gf());
}

/// Product formula against composition for every alpha t^nu dividing t^n.
template <class K>
AxiomReport check_divisor_products(const RecipMap<K>& rho, const DrinfeldModule<K>& phi) {
  AxiomReport rep;
  const ModuleSpace& V = rho.space();
  for (auto [alpha, nu] : divisors(V)) {
    std::vector<uint32_t> a(nu + 1, 0);
    a[nu] = alpha;
    ++rep.checked;
    if (!(phi_direct(rho, phi.t(), alpha, nu) == phi.phi(a)))
      rep.fail("product formula differs from composition at " + V.field().format(alpha) + "*t^" + std::to_string(nu));
  }
  return rep;
}

/// For a in {t, t^2}: tau-degree r deg(a), nonzero top coefficient, d(phi_a) = a.
template <class K>
AxiomReport check_rank(const DrinfeldModule<K>& phi, uint32_t r) {
  AxiomReport rep;
  for (uint32_t deg = 1; deg <= 2; ++deg) {
    std::vector<uint32_t> a(deg + 1, 0);
    a[deg] = 1;
    const TauPoly<K> pa = phi.phi(a);
    const std::string an = "t^" + std::to_string(deg);
    ++rep.checked;
    if (pa.degree() != static_cast<int>(r * deg))
      rep.fail("phi_" + an + " has tau-degree " + std::to_string(pa.degree()) + ", expected " +
               std::to_string(r * deg));
    else if (pa.leading().is_zero())
      rep.fail("phi_" + an + " has zero top coefficient");
    ++rep.checked;
    if (!(pa.d() == phi.element(a))) rep.fail("d(phi_" + an + ") != " + an);
  }
  return rep;
}

/// Support, level structure and Drinfeld module attached to an A-reciprocal map.
template <class K>
struct LevelData {
  FiberClass<K> fiber;
  DrinfeldModule<K> phi;
  AxiomReport checks;  ///< compatibility, divisor products and rank
};

template <class K>
LevelData<K> level_from_recip(const RecipMap<K>& rho, const K& t) {
  FiberClass<K> fc = fiber_class(rho);
  DrinfeldModule<K> phi = phi_from_recip(rho, t);
  const ModuleSpace& V = rho.space();
  AxiomReport rep = check_divisor_products(rho, phi);
  for (ModElem w : fc.W.elements) {
    ++rep.checked;
    if (!(fc.lambda[V.t_mul(w).index] == phi.phi_t().eval(fc.lambda[w.index])))
      rep.fail("lambda(t v) != phi_t(lambda(v)) at v=" + V.format(w));
    for (uint32_t al = 2; al < V.q(); ++al) {
      ++rep.checked;
      if (!(fc.lambda[V.scale(al, w).index] == lift_scalar(t, GFElem(V.gf(), al)) * fc.lambda[w.index]))
        rep.fail("lambda is not F_q-linear at v=" + V.format(w));
    }
  }
  if (fc.rank > 0) rep.merge(check_rank(phi, fc.rank));
  else if (!(phi.phi_t() == TauPoly<K>::scalar(t, V.q())))
    rep.fail("zero map must give phi_t = t");
  return {std::move(fc), std::move(phi), std::move(rep)};
}

/// Every lambda value is a root of phi_{t^n}, and there are q^{sn} distinct values.
template <class K>
AxiomReport check_torsion(const LevelData<K>& ld) {
  AxiomReport rep;
  const ModuleSpace& V = ld.fiber.W.space;
  const TauPoly<K> ptn = ld.phi.phi_t_power(V.n());
  std::vector<K> seen;
  for (ModElem w : ld.fiber.W.elements) {
    const K& x = ld.fiber.lambda[w.index];
    ++rep.checked;
    if (!ptn.eval(x).is_zero()) rep.fail("lambda(" + V.format(w) + ") is not a root of phi_{t^n}");
    bool dup = false;
    for (const K& y : seen) dup = dup || y == x;
    if (dup) rep.fail("lambda takes a repeated value at " + V.format(w));
    else seen.push_back(x);
  }
  uint64_t expect = 1;
  for (uint32_t i = 0; i < ld.fiber.rank * V.n(); ++i) expect *= V.q();
  ++rep.checked;
  if (seen.size() != expect) rep.fail("found " + std::to_string(seen.size()) + " torsion values, expected " + std::to_string(expect));
  return rep;
}

/// rho(i(w)) = 1/lambda'(w), 0 off the image of i.  lambda' is a table on the
/// source of i and must be an injective level structure for phi.
template <class K>
RecipMap<K> recip_from_level(const DrinfeldModule<K>& phi, const std::vector<K>& lambda, const LinearMap& i) {
  const ModuleSpace& S = i.src();
  if (lambda.size() != S.size()) throw NotLevelStructure("level table has the wrong size");
  if (!i.injective()) throw NotLevelStructure("embedding is not injective");
  for (uint32_t a = 0; a < S.size(); ++a) {
    if (a && lambda[a].is_zero()) throw NotLevelStructure("lambda vanishes at " + S.format({a}));
    if (!(lambda[S.t_mul({a}).index] == phi.phi_t().eval(lambda[a])))
      throw NotLevelStructure("lambda(t v) != phi_t(lambda(v)) at v=" + S.format({a}));
    for (uint32_t b = a; b < S.size(); ++b)
      if (!(lambda[S.add({a}, {b}).index] == lambda[a] + lambda[b]))
        throw NotLevelStructure("lambda is not additive at " + S.format({a}) + ", " + S.format({b}));
  }
  std::vector<K> t(i.dst().size(), phi.t().zero());
  for (uint32_t a = 1; a < S.size(); ++a) t[i({a}).index] = lambda[a].inv();
  return RecipMap<K>(i.dst(), std::move(t));
}

/// A named A-reciprocal map over a concrete field, with t in that field.
template <class K>
struct DrinfeldExample {
  std::string name;
  RecipMap<K> rho;
  K t;
  std::string expected_phi_t;  ///< informational
};

using RatExt = ExtElem<RatFunc>;
using RatTrans = TransElem<RatFunc>;

/// q = 2, r = 1, n = 1: rho([t^-1]) = 1/t over F_2(t).
inline DrinfeldExample<RatFunc> carlitz_level_t() {
  auto gf = FiniteField::create(2, 1);
  ModuleSpace V(gf, 1, 1);
  const RatFunc t = RatFunc::t(gf.get());
  return {"carlitz-n1", RecipMap<RatFunc>(V, {t.zero(), t.inv()}), t, "t*tau^0 + tau^1"};
}

/// q = 2, r = 1, n = 2 over K = F_2(t)[s]/(s^2 + ts + t), lambda([t^-2]) = s.
inline DrinfeldExample<RatExt> carlitz_level_t2() {
  auto gf = FiniteField::create(2, 1);
  ModuleSpace V(gf, 1, 2);
  const RatFunc tr = RatFunc::t(gf.get());
  const RatFunc one = tr.one();
  auto K = ExtensionField<RatFunc>::create(Poly<RatFunc>(tr, {tr, tr, one}), "s");
  const RatExt s = K->gen(), t = K->from_base(tr);
  // Index 1 = [t^-1], 2 = [t^-2], 3 = [t^-2 + t^-1].
  std::vector<RatExt> tab{K->zero(), t.inv(), s.inv(), (s + t).inv()};
  return {"carlitz-n2", RecipMap<RatExt>(V, std::move(tab)), t, "t*tau^0 + tau^1"};
}

/// q = 2, r = 2, n = 1: rho = 1/lambda with lambda(b1/t) = u, lambda(b2/t) = w over F_2(t)(u, w).
inline DrinfeldExample<RatTrans> generic_rank2_level_t() {
  auto gf = FiniteField::create(2, 1);
  ModuleSpace V(gf, 2, 1);
  const RatFunc tr = RatFunc::t(gf.get());
  auto K = TranscendentalField<RatFunc>::create(tr, {"u", "w"});
  return {"generic-r2", from_linear<RatTrans>(V, {K->gen(0), K->gen(1)}), K->from_base(tr),
          "t*tau^0 + ((u^2 + u*w + w^2)*t/(u*w*(u+w)))*tau^1 + (t/(u*w*(u+w)))*tau^2"};
}

/// The level-(t) Carlitz map pushed along V^1 -> V^2, [t^-1] -> [t^-1](b1 + b2).
inline DrinfeldExample<RatFunc> carlitz_extension_by_zero() {
  DrinfeldExample<RatFunc> c = carlitz_level_t();
  ModuleSpace V2(c.rho.space().field_ptr(), 2, 1);
  LinearMap i = LinearMap::from_generators(c.rho.space(), V2, {V2.add(V2.basis(1, 1), V2.basis(2, 1))});
  return {"extzero-r2", push_zero(c.rho, i), c.t, "t*tau^0 + tau^1"};
}

}  // namespace recip
