#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "recip/formulas.hpp"
#include "recip/group.hpp"
#include "recip/lincomb.hpp"
#include "recip/rank_engine.hpp"

namespace recip {

/// Rel_v = t [1/(tv)] - sum_{v' in V_1} [1/(v - v')] for v in V_n \ V_1.
inline LinComb relation(const ModuleSpace& V, ModElem v) {
  if (V.killed_by_t_power(v, 1)) throw Error("relation needs v outside V_1");
  LinComb x = lc_term({V.t_mul(v).index}, RatFunc::t(V.gf()));
  for (uint32_t w = 0; w < V.torsion_size(1); ++w) x = lc_sub(std::move(x), lc_gen(V, V.sub(v, {w})));
  return x;
}

/// {m * Rel_v : m of degree d-1, v in V_n \ V_1}; empty for plain spaces.
inline std::vector<LinComb> relation_span(const ModuleSpace& V, uint32_t d) {
  std::vector<LinComb> out;
  if (d == 0 || V.n() == 1) return out;
  const auto ms = monomials(V, d - 1);
  for (uint32_t v = V.torsion_size(1); v < V.size(); ++v) {
    const LinComb rel = relation(V, {v});
    for (const auto& m : ms) out.push_back(lc_mul(rel, lc_term(m, rf_one(V))));
  }
  return out;
}

inline std::vector<LinComb> monomial_vectors(const ModuleSpace& V, uint32_t d) {
  std::vector<LinComb> out;
  for (auto& m : monomials(V, d)) out.push_back(lc_term(m, rf_one(V)));
  return out;
}

/// dim R_{n,d} = rank(monomials) - rank(relation span).
inline uint64_t dim_graded(const ModuleSpace& V, uint32_t d, const EngineConfig& cfg, EngineStats* st = nullptr) {
  if (d == 0) return 1;
  return rank_modulo(V, relation_span(V, d), monomial_vectors(V, d), cfg, st);
}

/// f'_{k,nu} = sum_{w in V'_{k,nu}} [1/(X_{k,nu} + w)].
inline LinComb f_prime(const ModuleSpace& V, uint32_t k, uint32_t nu) {
  const Subspace pre = prefix_space(V, k, nu);
  const ModElem x = V.basis(k, nu);
  LinComb f;
  for (ModElem w : pre.elements) f = lc_add(std::move(f), lc_gen(V, V.add(x, w)));
  return f;
}

/// Delta_k, E_k and f_k for k = 1..r (index k-1).
struct SpecialSets {
  std::vector<std::vector<LinComb>> delta, E;
  std::vector<LinComb> f;
};

inline SpecialSets special_sets(const ModuleSpace& V) {
  SpecialSets s;
  for (uint32_t k = 1; k <= V.r(); ++k) {
    const Subspace pre = prefix_space(V, k, V.n());
    const ModElem x = V.basis(k, V.n());
    std::vector<LinComb> dk{lc_one(V)}, ek;
    LinComb f;
    for (ModElem w : pre.elements) {
      LinComb g = lc_gen(V, V.add(x, w));
      if (w.index) dk.push_back(g);
      f = lc_add(std::move(f), g);
      ek.push_back(std::move(g));
    }
    s.delta.push_back(std::move(dk));
    s.E.push_back(std::move(ek));
    s.f.push_back(std::move(f));
  }
  return s;
}

/// All products of the f_k of total degree deg.
inline std::vector<LinComb> f_monomials(const ModuleSpace& V, const SpecialSets& s, uint32_t deg) {
  std::vector<LinComb> out;
  const uint32_t r = static_cast<uint32_t>(s.f.size());
  if (r == 0) {
    if (deg == 0) out.push_back(lc_one(V));
    return out;
  }
  std::function<void(uint32_t, uint32_t, LinComb)> rec = [&](uint32_t k, uint32_t left, LinComb acc) {
    if (k + 1 == r) {
      for (uint32_t i = 0; i < left; ++i) acc = lc_mul(acc, s.f[k]);
      out.push_back(std::move(acc));
      return;
    }
    LinComb cur = acc;
    for (uint32_t a = 0; a <= left; ++a) {
      rec(k + 1, left - a, cur);
      cur = lc_mul(cur, s.f[k]);
    }
  };
  rec(0, deg, lc_one(V));
  return out;
}

/// Products e_1 ... e_r with e_k in sets[k], with their degrees.
inline std::vector<std::pair<LinComb, uint32_t>> set_products(const ModuleSpace& V, const std::vector<std::vector<LinComb>>& sets) {
  std::vector<std::pair<LinComb, uint32_t>> acc{{lc_one(V), 0}};
  for (const auto& S : sets) {
    std::vector<std::pair<LinComb, uint32_t>> nxt;
    for (const auto& [x, dx] : acc)
      for (const auto& e : S) {
        const uint32_t de = e.begin()->first.size();
        nxt.emplace_back(lc_mul(x, e), dx + de);
      }
    acc = std::move(nxt);
  }
  return acc;
}

/// {(f-monomial of degree d - deg e) * e : e in Delta_1...Delta_r, deg e <= d}.
inline std::vector<LinComb> free_basis(const ModuleSpace& V, uint32_t d) {
  const SpecialSets s = special_sets(V);
  std::vector<std::vector<LinComb>> fm(d + 1);
  for (uint32_t j = 0; j <= d; ++j) fm[j] = f_monomials(V, s, j);
  std::vector<LinComb> out;
  for (const auto& [e, de] : set_products(V, s.delta)) {
    if (de > d) continue;
    for (const auto& f : fm[d - de]) out.push_back(lc_mul(f, e));
  }
  return out;
}

struct FreeBasisReport {
  uint64_t cardinality = 0, formula = 0, rank = 0, dim = 0;
  bool pass = false;
};

inline FreeBasisReport verify_free_basis(const ModuleSpace& V, uint32_t d, const EngineConfig& cfg, EngineStats* st = nullptr) {
  FreeBasisReport rep;
  const auto B = free_basis(V, d);
  RankProblem pb{{V}, {{}, {}, {}}};
  for (auto& x : relation_span(V, d)) pb.groups[0].push_back(block_vec(std::move(x)));
  for (const auto& x : B) pb.groups[1].push_back(block_vec(x));
  for (auto& x : monomial_vectors(V, d)) pb.groups[2].push_back(block_vec(std::move(x)));
  const auto r = cumulative_ranks(pb, cfg, st);
  rep.cardinality = B.size();
  rep.formula = dim_formula(V.q(), V.r(), V.n(), d);
  rep.rank = r[1] - r[0];
  rep.dim = r[2] - r[0];
  rep.pass = rep.cardinality == rep.formula && rep.rank == rep.dim && rep.rank == rep.cardinality;
  return rep;
}

/// pi_i: [1/i(w)] -> [1/w], other generators -> 0.  i must be injective.
inline LinComb pi_apply(const LinearMap& i, const LinComb& x) {
  if (!i.injective()) throw Error("pi_apply needs an injective map");
  std::vector<uint32_t> back(i.dst().size(), 0);
  for (uint32_t w = 1; w < i.src().size(); ++w) back[i({w}).index] = w;
  return lc_relabel(x, back);
}

/// eps_p for a surjection p: [1/v''] -> sum over the fiber of [1/v].
inline LinComb eps_quotient(const LinearMap& p, const LinComb& x) {
  if (!p.surjective()) throw Error("eps_quotient needs a surjection");
  const auto fib = p.fibers();
  return lc_substitute(x, [&](uint32_t v) -> std::optional<LinComb> {
    LinComb s;
    for (ModElem u : fib[v]) s = lc_add(std::move(s), lc_gen(p.src(), u));
    return s;
  });
}

/// eps_i: [1/v'] -> [1/i(v')] for an injection; eps_p: [1/v''] -> sum over
/// the fiber p^{-1}(v'') of [1/v] for a surjection.  Plain spaces only.
inline LinComb eps_apply(const LinearMap& m, const LinComb& x) {
  if (m.src().n() != 1 || m.dst().n() != 1) throw Error("eps_apply expects plain spaces");
  if (m.injective()) {
    std::vector<uint32_t> fwd(m.src().size(), 0);
    for (uint32_t w = 1; w < m.src().size(); ++w) fwd[w] = m({w}).index;
    return lc_relabel(x, fwd);
  }
  return eps_quotient(m, x);
}

/// Generator-wise inclusion V^r_{t^{n'}} in V^r_{t^n}; indices are unchanged.
inline LinComb level_map_apply(const ModuleSpace& from, const ModuleSpace& to, const LinComb& x) {
  if (from.q() != to.q() || from.r() != to.r() || from.n() > to.n()) throw Error("level map needs n' <= n and equal q, r");
  return x;
}

/// dim of the image of R_{n',d} in R_{n,d}.
inline uint64_t level_map_rank(const ModuleSpace& from, const ModuleSpace& to, uint32_t d, const EngineConfig& cfg,
                               EngineStats* st = nullptr) {
  std::vector<LinComb> img;
  for (auto& x : monomial_vectors(from, d)) img.push_back(level_map_apply(from, to, x));
  return rank_modulo(to, relation_span(to, d), img, cfg, st);
}

struct BoundaryReport {
  uint64_t dim_graded = 0;   ///< dim R_{n,d}
  uint64_t dim_kernel = 0;   ///< kernel route
  uint64_t basis_card = 0;   ///< |E_1...E_r| * #f-monomials
  uint64_t basis_rank = 0;   ///< rank of the basis route modulo relations
  uint64_t expected = 0;     ///< |U| C(d-1, r-1)
  uint64_t submodules = 0;   ///< free submodules W used by the kernel route
  bool basis_in_kernel = false;
  bool gens_checked = false;  ///< plain case: generators 1/(v_1...v_r)
  uint64_t gens_count = 0, gens_rank = 0;
  bool gens_in_kernel = false;
  bool pass = false;
};

/// {(f-monomial of degree d - r) * e : e in E_1...E_r}.
inline std::vector<LinComb> boundary_basis(const ModuleSpace& V, uint32_t d) {
  std::vector<LinComb> out;
  if (d < V.r()) return out;
  const SpecialSets s = special_sets(V);
  const auto fm = f_monomials(V, s, d - V.r());
  for (const auto& [e, de] : set_products(V, s.E))
    for (const auto& f : fm) out.push_back(lc_mul(f, e));
  return out;
}

/// [1/(v_1...v_r)] * m for bases up to order and scalars, m of degree d - r.
inline std::vector<LinComb> basis_generators(const ModuleSpace& V, uint32_t d) {
  std::vector<LinComb> out;
  if (V.n() != 1) throw Error("basis generators are defined for plain spaces");
  if (d < V.r()) return out;
  std::vector<uint32_t> lines;
  for (uint32_t v = 1; v < V.size(); ++v) {
    uint32_t j = 0;
    while (V.coord({v}, j) == 0) ++j;
    if (V.coord({v}, j) == 1) lines.push_back(v);
  }
  const auto tail = monomials(V, d - V.r());
  std::vector<uint32_t> pick;
  std::function<void(size_t)> rec = [&](size_t from) {
    if (pick.size() == V.r()) {
      std::vector<ModElem> g;
      for (auto v : pick) g.push_back({v});
      if (span_fq(V, g).dim() != V.r()) return;
      Monomial base(pick.begin(), pick.end());
      for (const auto& m : tail) out.push_back(lc_term(mono_mul(base, m), rf_one(V)));
      return;
    }
    for (size_t i = from; i < lines.size(); ++i) {
      pick.push_back(lines[i]);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return out;
}

/// Boundary ideal in degree d by two routes: the intersection of the kernels
/// of pi_W over free submodules W of rank 1..r-1 (one injection each), and
/// the span of boundary_basis.  For plain spaces also checks the generators
/// 1/(v_1...v_r).
inline BoundaryReport boundary_ideal(const ModuleSpace& V, uint32_t d, const EngineConfig& cfg, EngineStats* st = nullptr) {
  BoundaryReport rep;
  const auto monos = monomial_vectors(V, d);
  const auto B = boundary_basis(V, d);
  std::vector<LinComb> G;
  rep.gens_checked = V.n() == 1 && V.r() >= 1;
  if (rep.gens_checked) G = basis_generators(V, d);

  // Kernel route.
  RankProblem kp;
  std::vector<LinearMap> incs;
  for (uint32_t s = 1; s < V.r(); ++s) {
    ModuleSpace W(V.field_ptr(), s, V.n());
    for_each_free_submodule(V, s, [&](const std::vector<ModElem>& gens) {
      incs.push_back(LinearMap::from_generators(W, V, gens));
      kp.blocks.push_back(W);
    });
  }
  rep.submodules = incs.size();
  std::vector<std::vector<uint32_t>> backs;
  for (const auto& i : incs) {
    std::vector<uint32_t> back(V.size(), 0);
    for (uint32_t w = 1; w < i.src().size(); ++w) back[i({w}).index] = w;
    backs.push_back(std::move(back));
  }
  auto phi = [&](const LinComb& x) {
    BlockVec bv;
    for (uint32_t b = 0; b < incs.size(); ++b) {
      LinComb y = lc_relabel(x, backs[b]);
      if (!y.empty()) bv.parts.emplace_back(b, std::move(y));
    }
    return bv;
  };
  kp.groups.resize(4);
  for (uint32_t b = 0; b < incs.size(); ++b)
    for (auto& x : relation_span(kp.blocks[b], d)) kp.groups[0].push_back(block_vec(std::move(x), b));
  for (const auto& x : B) kp.groups[1].push_back(phi(x));
  for (const auto& x : G) kp.groups[2].push_back(phi(x));
  for (const auto& x : monos) kp.groups[3].push_back(phi(x));
  std::vector<uint64_t> kr(4, 0);
  if (!kp.blocks.empty()) kr = cumulative_ranks(kp, cfg, st);
  rep.basis_in_kernel = kr[1] == kr[0];
  rep.gens_in_kernel = kr[2] == kr[0];
  const uint64_t rank_phi = kr[3] - kr[0];

  // Spans in R_{n,d}.
  RankProblem vp{{V}, {{}, {}, {}, {}}};
  for (auto& x : relation_span(V, d)) vp.groups[0].push_back(block_vec(std::move(x)));
  for (const auto& x : B) vp.groups[1].push_back(block_vec(x));
  for (const auto& x : G) vp.groups[2].push_back(block_vec(x));
  for (const auto& x : monos) vp.groups[3].push_back(block_vec(x));
  const auto vr = cumulative_ranks(vp, cfg, st);
  rep.dim_graded = vr[3] - vr[0];
  rep.dim_kernel = rep.dim_graded - rank_phi;
  rep.basis_card = B.size();
  rep.basis_rank = vr[1] - vr[0];
  rep.expected = unipotent_order(V.q(), V.r(), V.n()) * binom(int64_t(d) - 1, int64_t(V.r()) - 1);
  rep.pass = rep.basis_in_kernel && rep.basis_rank == rep.dim_kernel && rep.basis_card == rep.expected &&
             rep.dim_kernel == rep.expected;
  if (rep.gens_checked) {
    rep.gens_count = G.size();
    // Generators lie in the ideal and, together with B, span nothing beyond it.
    rep.gens_rank = vr[2] - vr[0];
    rep.pass = rep.pass && rep.gens_in_kernel && rep.gens_rank == rep.dim_kernel;
  }
  return rep;
}

/// The ideal I_V of a plain space in degree d (boundary_ideal with n = 1).
inline BoundaryReport iv_ideal(const ModuleSpace& V, uint32_t d, const EngineConfig& cfg, EngineStats* st = nullptr) {
  if (V.n() != 1) throw Error("iv_ideal expects a plain space");
  return boundary_ideal(V, d, cfg, st);
}

struct JsReport {
  uint64_t dim = 0, expected = 0;
  bool pass = false;
};

/// dim (R_V / J_s)_d with J_s generated by [1/v'] for v' in V_s \ {0}.
inline JsReport js_quotient(const ModuleSpace& V, uint32_t s, uint32_t d, const EngineConfig& cfg, EngineStats* st = nullptr) {
  if (V.n() != 1) throw Error("js_quotient expects a plain space");
  if (s > V.r()) throw Error("s exceeds the dimension");
  std::vector<LinComb> J;
  if (d >= 1) {
    const auto tail = monomials(V, d - 1);
    for (uint32_t v = 1; v < ipow(V.q(), s); ++v)
      for (const auto& m : tail) J.push_back(lc_term(mono_mul({v}, m), rf_one(V)));
  }
  JsReport rep;
  rep.dim = d == 0 ? 1 : rank_modulo(V, J, monomial_vectors(V, d), cfg, st);
  rep.expected = js_expected(V.q(), V.r(), s, d);
  rep.pass = rep.dim == rep.expected;
  return rep;
}

/// Sum over the distinct monomials of each H-orbit.
inline std::vector<LinComb> orbit_sums(const ModuleSpace& V, const MatrixGroup& H, uint32_t d) {
  std::set<Monomial> seen;
  std::vector<LinComb> out;
  for (const auto& m : monomials(V, d)) {
    if (seen.count(m)) continue;
    LinComb s;
    for (size_t g = 0; g < H.size(); ++g) {
      const auto& perm = H.permutation(g);
      Monomial hm;
      for (uint32_t v : m) hm.push_back(perm[v]);
      std::sort(hm.begin(), hm.end());
      if (seen.insert(hm).second) lc_add_term(s, hm, rf_one(V));
    }
    out.push_back(std::move(s));
  }
  return out;
}

/// dim of the span of H-orbit sums in R_{n,d}.
inline uint64_t invariant_dim(const ModuleSpace& V, const MatrixGroup& H, uint32_t d, const EngineConfig& cfg,
                              EngineStats* st = nullptr) {
  if (d == 0) return 1;
  return rank_modulo(V, relation_span(V, d), orbit_sums(V, H, d), cfg, st);
}

struct FkScaling {
  LinComb difference;
  bool pass = false;
};

/// f'_{k,nu} - t^{nu-n} f_k lies in the degree-1 relation span.
inline FkScaling fk_scaling_check(const ModuleSpace& V, uint32_t k, uint32_t nu, const EngineConfig& cfg,
                                  EngineStats* st = nullptr) {
  FkScaling out;
  const RatFunc s = RatFunc::t_power(V.gf(), static_cast<int>(nu) - static_cast<int>(V.n()));
  out.difference = lc_sub(f_prime(V, k, nu), lc_scale(f_prime(V, k, V.n()), s));
  out.pass = out.difference.empty() || rank_modulo(V, relation_span(V, 1), {out.difference}, cfg, st) == 0;
  return out;
}

}  // namespace recip
