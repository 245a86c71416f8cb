#pragma once

#include <optional>
#include <string>
#include <vector>

#include "recip/recip_map.hpp"

namespace recip {

/// Parameters of an identity check; each identity reads the fields it needs.
template <class R>
struct IdentityParams {
  std::optional<Subspace> sub;  ///< V' (plain spaces)
  std::optional<ModElem> v;     ///< a vector outside V'
  std::optional<R> u;           ///< scalar for the composition rule
  uint32_t k = 1, nu = 1;       ///< position for the localization identity
};

struct IdentityResult {
  std::string name;
  bool pass = false;
  std::string detail;  ///< counterexample or note
};

inline const std::vector<std::string>& identity_names() {
  static const std::vector<std::string> names{"erho_a", "erho_b", "rho_a", "rho_b", "rho_c",
                                              "rho4",   "comp_a", "comp_b", "localize_fk"};
  return names;
}

namespace detail {

/// e / (1 - cX) when 1 - cX divides e; nullopt otherwise.
template <class R>
std::optional<Poly<R>> divide_by_one_minus(const Poly<R>& e, const R& c) {
  if (e.is_zero()) return e;
  const size_t deg = static_cast<size_t>(e.degree());
  if (c.is_zero()) return e;
  std::vector<R> b(deg, e.zero_coeff());
  for (size_t k = 0; k < deg; ++k) b[k] = e[k] + (k ? c * b[k - 1] : e.zero_coeff());
  if (!(e[deg] + c * b[deg - 1]).is_zero()) return std::nullopt;
  return Poly<R>(e.zero_coeff(), std::move(b));
}

template <class R>
R sum_over_coset(const RecipMap<R>& rho, const Subspace& sub, ModElem v) {
  const ModuleSpace& V = rho.space();
  R s = rho.zero();
  for (ModElem w : sub.elements) s = s + rho(V.sub(v, w));
  return s;
}

template <class R>
RecipMap<R> restrict_to(const RecipMap<R>& rho, const Subspace& sub) {
  return pullback(rho, subspace_maps(sub).inclusion);
}

}  // namespace detail

/// Exact check of one of the identities in identity_names() for rho.
template <class R>
IdentityResult verify_identity(const std::string& name, const RecipMap<R>& rho, const IdentityParams<R>& prm = {}) {
  const ModuleSpace& V = rho.space();
  IdentityResult res{name, false, ""};
  auto need_sub = [&]() -> const Subspace& {
    if (!prm.sub) throw Error(name + " needs a subspace");
    return *prm.sub;
  };
  auto need_v = [&]() -> ModElem {
    if (!prm.v) throw Error(name + " needs a vector");
    if (prm.sub && prm.sub->contains(*prm.v)) throw Error(name + " needs a vector outside the subspace");
    return *prm.v;
  };

  if (name == "erho_a") {
    // 1/e = 1/X + sum -rho/(1 - rho X), multiplied through by e.
    const Poly<R> e = exp_poly_uni(rho);
    Poly<R> rhs = e.unshift(1);
    for (uint32_t v = 1; v < V.size(); ++v) {
      auto qd = detail::divide_by_one_minus(e, rho({v}));
      if (!qd) {
        res.detail = "1 - rho(v)X does not divide e at v=" + V.format({v});
        return res;
      }
      rhs = rhs - qd->scale(rho({v}));
    }
    res.pass = rhs == Poly<R>::constant(rho.one());
    if (!res.pass) res.detail = "right side is " + rhs.to_string("X");
    return res;
  }
  if (name == "erho_b") {
    // tau-form round trip, then X = -sum e/(1 - rho X) (needs V != 0).
    const Poly<R> e = exp_poly_uni(rho);
    const TauPoly<R> et = to_tau(e, V.q());
    if (!(et.to_uni() == e)) {
      res.detail = "tau-form does not reproduce the product";
      return res;
    }
    if (V.size() == 1) {
      res.pass = true;
      res.detail = "V = 0";
      return res;
    }
    Poly<R> acc = Poly<R>::x(rho.one());
    for (uint32_t v = 1; v < V.size(); ++v) {
      auto qd = detail::divide_by_one_minus(e, rho({v}));
      if (!qd) {
        res.detail = "1 - rho(v)X does not divide e at v=" + V.format({v});
        return res;
      }
      acc = acc + *qd;
    }
    res.pass = acc.is_zero();
    if (!res.pass) res.detail = "X + sum e/(1 - rho X) = " + acc.to_string("X");
    return res;
  }
  if (name == "rho_a" || name == "rho_b" || name == "rho_c" || name == "rho4") {
    const Subspace& sub = need_sub();
    const ModElem v = need_v();
    const R sigma = detail::sum_over_coset(rho, sub, v);
    if (name == "rho_a") {
      R lhs = sigma, rhs = rho.one();
      for (ModElem w : sub.elements) {
        if (w.index) lhs = lhs * rho(w);
        rhs = rhs * rho(V.sub(v, w));
      }
      res.pass = lhs == rhs;
    } else if (name == "rho_b") {
      R lhs = sigma;
      for (ModElem w : sub.elements)
        if (w.index) lhs = lhs * (rho(v) - rho(w));
      res.pass = lhs == power(rho(v), sub.size());
    } else {
      if (rho(v).is_zero()) throw Error(name + " needs rho(v) invertible");
      const R x = rho(v).inv();
      const R ev = exp_poly_uni(detail::restrict_to(rho, sub)).eval(x);
      if (name == "rho_c") {
        res.pass = sigma * ev == rho.one();
      } else {
        const SubspaceMaps maps = subspace_maps(sub);
        const RecipMap<R> pq = push_quot(rho, maps.quotient);
        res.pass = pq(maps.quotient(v)) * ev == rho.one();
      }
    }
    if (!res.pass) res.detail = "fails at V'=" + std::to_string(sub.dim()) + "-dim, v=" + V.format(v);
    return res;
  }
  if (name == "comp_a") {
    if (!prm.u) throw Error(name + " needs a scalar u");
    const R& u = *prm.u;
    const TauPoly<R> lhs = exp_poly(rho).compose(TauPoly<R>::scalar(u, V.q()));
    const TauPoly<R> rhs = TauPoly<R>::scalar(u, V.q()).compose(exp_poly(rho.scaled(u)));
    res.pass = lhs == rhs;
    if (!res.pass) res.detail = "e o u != u o e_{u rho}";
    return res;
  }
  if (name == "comp_b") {
    const Subspace& sub = need_sub();
    const SubspaceMaps maps = subspace_maps(sub);
    const TauPoly<R> lhs = exp_poly(rho);
    const TauPoly<R> rhs = exp_poly(push_quot(rho, maps.quotient)).compose(exp_poly(pullback(rho, maps.inclusion)));
    res.pass = lhs == rhs;
    if (!res.pass) res.detail = "e != e_{p_* rho} o e_{i^* rho} for a " + std::to_string(sub.dim()) + "-dim V'";
    return res;
  }
  if (name == "localize_fk") {
    // f_k * prod_{V'} rho(v') = prod_{v' in V'} rho(X_k - v') with V' the prefix space before X_k.
    const Subspace sub = prefix_space(V, prm.k, prm.nu);
    const ModElem xk = V.basis(prm.k, prm.nu);
    R lhs = detail::sum_over_coset(rho, sub, xk), rhs = rho.one();
    for (ModElem w : sub.elements) {
      if (w.index) lhs = lhs * rho(w);
      rhs = rhs * rho(V.sub(xk, w));
    }
    res.pass = lhs == rhs;
    if (!res.pass) res.detail = "fails at k=" + std::to_string(prm.k) + ", nu=" + std::to_string(prm.nu);
    return res;
  }
  throw UnknownIdentity(name);
}

/// Aggregate outcome of an identity sweep.
struct IdentitySweep {
  uint64_t cases = 0;
  uint64_t failures = 0;
  std::vector<IdentityResult> failed;  ///< first few failures
  std::vector<std::pair<std::string, uint64_t>> per_identity;
};

/// Runs every identity on the universal map of a plain space, over all proper
/// subspaces V' and all v outside V', and u in F_q^x, {rho(v)}, {l_v}.
inline IdentitySweep identity_sweep(const ModuleSpace& V) {
  IdentitySweep sw;
  const RecipMap<FR> rho = universal_map(V);
  const std::vector<Subspace> subs = all_subspaces(V);
  auto record = [&](const IdentityResult& r) {
    ++sw.cases;
    if (sw.per_identity.empty() || sw.per_identity.back().first != r.name) sw.per_identity.emplace_back(r.name, 0);
    ++sw.per_identity.back().second;
    if (!r.pass) {
      ++sw.failures;
      if (sw.failed.size() < 16) sw.failed.push_back(r);
    }
  };
  record(verify_identity<FR>("erho_a", rho));
  record(verify_identity<FR>("erho_b", rho));
  for (const std::string nm : {"rho_a", "rho_b", "rho_c", "rho4"})
    for (const Subspace& s : subs) {
      if (s.size() == V.size()) continue;
      for (uint32_t v = 1; v < V.size(); ++v) {
        if (s.contains({v})) continue;
        IdentityParams<FR> p;
        p.sub = s;
        p.v = ModElem{v};
        record(verify_identity<FR>(nm, rho, p));
      }
    }
  {
    std::vector<FR> us;
    for (uint32_t a = 1; a < V.q(); ++a) us.push_back(lift_scalar(rho.zero(), GFElem(V.gf(), a)));
    for (uint32_t v = 1; v < V.size(); ++v) {
      us.push_back(rho({v}));
      us.push_back(linear_form(V, {v}));
    }
    for (const FR& u : us) {
      IdentityParams<FR> p;
      p.u = u;
      record(verify_identity<FR>("comp_a", rho, p));
    }
  }
  for (const Subspace& s : subs) {
    IdentityParams<FR> p;
    p.sub = s;
    record(verify_identity<FR>("comp_b", rho, p));
  }
  for (uint32_t k = 1; k <= V.r(); ++k)
    for (uint32_t nu = 1; nu <= V.n(); ++nu) {
      IdentityParams<FR> p;
      p.k = k;
      p.nu = nu;
      record(verify_identity<FR>("localize_fk", rho, p));
    }
  return sw;
}

}  // namespace recip
