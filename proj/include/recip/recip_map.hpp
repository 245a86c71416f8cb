#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "recip/factored_rational.hpp"
#include "recip/module_space.hpp"
#include "recip/poly.hpp"
#include "recip/scalars.hpp"
#include "recip/tau_poly.hpp"

namespace recip {

/// Outcome of an exhaustive axiom check.  Only the first few violations are
/// spelled out; violation_count has them all.
struct AxiomReport {
  static constexpr size_t kMaxListed = 16;
  bool ok = true;
  uint64_t checked = 0;
  uint64_t violation_count = 0;
  std::vector<std::string> violations;

  void fail(std::string what) {
    ok = false;
    ++violation_count;
    if (violations.size() < kMaxListed) violations.push_back(std::move(what));
  }
  void merge(const AxiomReport& o) {
    ok = ok && o.ok;
    checked += o.checked;
    violation_count += o.violation_count;
    for (const auto& v : o.violations)
      if (violations.size() < kMaxListed) violations.push_back(v);
  }
};

/// A map rho on the nonzero elements of a module space, stored as a table
/// indexed by element; the slot of 0 holds the ring's zero.
template <class R>
class RecipMap {
 public:
  RecipMap() = default;
  RecipMap(ModuleSpace space, std::vector<R> values) : space_(std::move(space)), values_(std::move(values)) {
    if (values_.size() != space_.size()) throw Error("reciprocal map table has the wrong size");
    values_[0] = values_[0].zero();
  }

  const ModuleSpace& space() const { return space_; }
  const R& operator()(ModElem v) const { return values_[v.index]; }
  const std::vector<R>& values() const { return values_; }
  R zero() const { return values_[0]; }
  R one() const { return values_[0].one(); }

  /// Nonzero at every nonzero vector.
  bool fiberwise_invertible() const {
    for (size_t i = 1; i < values_.size(); ++i)
      if (values_[i].is_zero()) return false;
    return true;
  }
  bool operator==(const RecipMap& o) const { return space_ == o.space_ && values_ == o.values_; }

  RecipMap with_value(ModElem v, R x) const {
    RecipMap m = *this;
    m.values_[v.index] = std::move(x);
    if (v.index == 0) m.values_[0] = m.values_[0].zero();
    return m;
  }
  /// v -> u * rho(v).
  RecipMap scaled(const R& u) const {
    std::vector<R> t(values_.size(), zero());
    for (size_t i = 1; i < values_.size(); ++i) t[i] = u * values_[i];
    return RecipMap(space_, std::move(t));
  }

 private:
  ModuleSpace space_;
  std::vector<R> values_;
};

/// The universal map v -> 1/l_v with l_v = sum_j c_j(v) x_j, one variable per
/// coordinate of the space.
inline RecipMap<FR> universal_map(const ModuleSpace& V) {
  const GFElem proto(V.gf(), 0);
  std::vector<FR> t(V.size(), FR(V.gf(), V.dim(), proto));
  for (uint32_t i = 1; i < V.size(); ++i) t[i] = FR::reciprocal(V.gf(), V.coords({i}), proto);
  return RecipMap<FR>(V, std::move(t));
}

/// The linear form l_v of the universal map.
inline FR linear_form(const ModuleSpace& V, ModElem v) {
  return FR::linear(V.gf(), V.coords(v), GFElem(V.gf(), 0));
}

/// lambda(v) = sum_j c_j(v) unit_images[j].
template <class R>
std::vector<R> linear_values(const ModuleSpace& V, const std::vector<R>& unit_images) {
  if (unit_images.size() != V.dim() || unit_images.empty()) throw Error("need one image per coordinate");
  std::vector<R> scal;
  for (uint32_t c = 0; c < V.q(); ++c) scal.push_back(lift_scalar(unit_images[0], GFElem(V.gf(), c)));
  std::vector<R> lam(V.size(), unit_images[0].zero());
  for (uint32_t i = 1; i < V.size(); ++i) {
    R acc = unit_images[0].zero();
    for (uint32_t j = 0; j < V.dim(); ++j) {
      uint32_t c = V.coord({i}, j);
      if (c) acc = acc + scal[c] * unit_images[j];
    }
    lam[i] = std::move(acc);
  }
  return lam;
}

/// rho = 1/lambda for an injective F_q-linear lambda given on the coordinate vectors.
template <class R>
RecipMap<R> from_linear(const ModuleSpace& V, const std::vector<R>& unit_images) {
  std::vector<R> lam = linear_values(V, unit_images);
  for (uint32_t i = 1; i < V.size(); ++i) {
    if (lam[i].is_zero()) throw Error("linear map is not injective at " + V.format({i}));
    lam[i] = lam[i].inv();
  }
  return RecipMap<R>(V, std::move(lam));
}

/// rho(v) rho(w) = rho(v+w) (rho(v) + rho(w)) for v, w, v+w nonzero, and
/// alpha rho(alpha v) = rho(v).
template <class R>
AxiomReport check_fq_axioms(const RecipMap<R>& rho) {
  AxiomReport rep;
  const ModuleSpace& V = rho.space();
  for (uint32_t a = 1; a < V.size(); ++a)
    for (uint32_t b = a; b < V.size(); ++b) {
      ModElem s = V.add({a}, {b});
      if (s.index == 0) continue;
      ++rep.checked;
      if (!(rho({a}) * rho({b}) == rho(s) * (rho({a}) + rho({b}))))
        rep.fail("product rule fails at v=" + V.format({a}) + ", w=" + V.format({b}));
    }
  for (uint32_t al = 2; al < V.q(); ++al) {
    const R alpha = lift_scalar(rho.zero(), GFElem(V.gf(), al));
    for (uint32_t a = 1; a < V.size(); ++a) {
      ++rep.checked;
      if (!(alpha * rho(V.scale(al, {a})) == rho({a})))
        rep.fail("scaling rule fails at alpha=" + V.field().format(al) + ", v=" + V.format({a}));
    }
  }
  return rep;
}

/// The F_q-axioms, then t rho(tv) = sum_{v' in V_1} rho(v - v') for v outside V_1.
template <class R>
AxiomReport check_a_axioms(const RecipMap<R>& rho, const R& t) {
  AxiomReport rep = check_fq_axioms(rho);
  const ModuleSpace& V = rho.space();
  const uint32_t v1 = V.torsion_size(1);
  for (uint32_t a = v1; a < V.size(); ++a) {
    R sum = rho.zero();
    for (uint32_t w = 0; w < v1; ++w) sum = sum + rho(V.sub({a}, {w}));
    ++rep.checked;
    if (!(t * rho(V.t_mul({a})) == sum)) rep.fail("t-relation fails at v=" + V.format({a}));
  }
  return rep;
}

/// i^* rho = rho o i.
template <class R>
RecipMap<R> pullback(const RecipMap<R>& rho, const LinearMap& i) {
  if (!(i.dst() == rho.space())) throw Error("pullback: map target is not the domain of rho");
  std::vector<R> t(i.src().size(), rho.zero());
  for (uint32_t w = 1; w < i.src().size(); ++w) t[w] = rho(i({w}));
  return RecipMap<R>(i.src(), std::move(t));
}

/// Extension by zero along an injective i.
template <class R>
RecipMap<R> push_zero(const RecipMap<R>& rho, const LinearMap& i) {
  if (!(i.src() == rho.space())) throw Error("push_zero: map source is not the domain of rho");
  if (!i.injective()) throw Error("push_zero needs an injective map");
  std::vector<R> t(i.dst().size(), rho.zero());
  for (uint32_t w = 1; w < i.src().size(); ++w) t[i({w}).index] = rho({w});
  return RecipMap<R>(i.dst(), std::move(t));
}

/// Fiber sums along f: (f_* rho)(y) = sum_{f(v) = y} rho(v), y != 0.
template <class R>
RecipMap<R> push_fibers(const RecipMap<R>& rho, const LinearMap& f) {
  std::vector<R> t(f.dst().size(), rho.zero());
  for (uint32_t v = 1; v < f.src().size(); ++v) {
    uint32_t y = f({v}).index;
    if (y) t[y] = t[y] + rho({v});
  }
  return RecipMap<R>(f.dst(), std::move(t));
}

template <class R>
RecipMap<R> push_quot(const RecipMap<R>& rho, const LinearMap& p) {
  if (!(p.src() == rho.space())) throw Error("push_quot: map source is not the domain of rho");
  if (!p.surjective()) throw Error("push_quot needs a surjective map");
  return push_fibers(rho, p);
}

/// f_* for any nonzero linear f; the zero map has no target convention and is rejected.
template <class R>
RecipMap<R> push_general(const RecipMap<R>& rho, const LinearMap& f) {
  if (!(f.src() == rho.space())) throw Error("push_general: map source is not the domain of rho");
  if (f.is_zero()) throw Error("push_general: the zero map is not supported");
  return push_fibers(rho, f);
}

/// X * prod_{v != 0} (1 - rho(v) X) as an ordinary polynomial.
template <class R>
Poly<R> exp_poly_uni(const RecipMap<R>& rho) {
  const R one = rho.one();
  Poly<R> e = Poly<R>::x(one);
  for (uint32_t v = 1; v < rho.space().size(); ++v) {
    const R& c = rho({v});
    if (c.is_zero()) continue;
    e = e * Poly<R>(one, {one, -c});
  }
  return e;
}

/// e_rho in tau-form; NonAdditive if the product is not F_q-linear.
template <class R>
TauPoly<R> exp_poly(const RecipMap<R>& rho) {
  return to_tau(exp_poly_uni(rho), rho.space().q());
}

/// Support of a field-valued A-reciprocal map and the inverse map on it.
template <class K>
struct FiberClass {
  Subspace W;        ///< {0} union {v : rho(v) != 0}, with an A-basis in W.gens
  uint32_t rank = 0;
  std::vector<K> lambda;  ///< lambda(v) = 1/rho(v) on W, 0 elsewhere
};

template <class K>
FiberClass<K> fiber_class(const RecipMap<K>& rho) {
  const ModuleSpace& V = rho.space();
  std::vector<ModElem> elems{ModElem{0}};
  std::vector<bool> member(V.size(), false);
  member[0] = true;
  for (uint32_t v = 1; v < V.size(); ++v)
    if (!rho({v}).is_zero()) {
      member[v] = true;
      elems.push_back({v});
    }
  for (ModElem a : elems) {
    if (!member[V.t_mul(a).index]) throw NotSubmodule("support is not closed under t at " + V.format(a));
    for (uint32_t al = 2; al < V.q(); ++al)
      if (!member[V.scale(al, a).index]) throw NotSubmodule("support is not closed under scalars at " + V.format(a));
    for (ModElem b : elems)
      if (!member[V.add(a, b).index])
        throw NotSubmodule("support is not closed under addition at " + V.format(a) + ", " + V.format(b));
  }
  uint64_t socle = 0;
  for (ModElem a : elems)
    if (V.killed_by_t_power(a, 1)) ++socle;
  uint64_t pw = 1;
  for (uint32_t i = 0; i < V.n(); ++i) pw *= socle;
  if (pw != elems.size()) throw NotFree("support of size " + std::to_string(elems.size()) + " is not free");
  uint32_t s = 0;
  for (uint64_t x = socle; x > 1; x /= V.q()) ++s;

  // Greedy basis: free submodules of A/t^n-modules are direct summands.
  std::vector<ModElem> gens;
  uint64_t have = 1, full = 1;
  for (uint32_t i = 0; i < V.n(); ++i) full *= V.q();
  for (ModElem a : elems) {
    if (gens.size() == s) break;
    if (V.order(a) != V.n()) continue;
    std::vector<ModElem> trial = gens;
    trial.push_back(a);
    Subspace span = span_a(V, trial);
    if (span.size() == have * full) {
      gens = std::move(trial);
      have *= full;
    }
  }
  FiberClass<K> out;
  out.W = free_submodule(V, gens);
  if (!out.W.same_elements(span_fq(V, elems))) throw ConsistencyFailure("support basis does not span the support");
  out.rank = s;
  out.lambda.assign(V.size(), rho.zero());
  for (ModElem a : elems)
    if (a.index) out.lambda[a.index] = rho(a).inv();
  for (ModElem a : elems)
    for (ModElem b : elems)
      if (!(out.lambda[V.add(a, b).index] == out.lambda[a.index] + out.lambda[b.index]))
        throw ConsistencyFailure("inverse map is not additive at " + V.format(a) + ", " + V.format(b));
  return out;
}

}  // namespace recip
