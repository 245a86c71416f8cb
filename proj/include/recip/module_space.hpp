#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_set>
#include <vector>

#include "recip/gf.hpp"

namespace recip {

/// Element of V = (t^{-n} F_q[t] / F_q[t])^r, identified by its index in the
/// enumeration of the space (base-q digits = coordinates, see ModuleSpace).
struct ModElem {
  uint32_t index = 0;
  auto operator<=>(const ModElem&) const = default;
  bool operator==(const ModElem&) const = default;
};

/// The module V^r_{t^n} over F_q[t]; n = 1 is a plain F_q-space of dimension r.
///
/// Coordinate j = (nu-1)*r + (k-1) holds the coefficient of t^{-nu} b_k, so the
/// coordinate order is X_{1,1}, ..., X_{r,1}, X_{1,2}, ..., X_{r,n}.  The index
/// of an element is sum_j c_j q^j.  Consequently V_nu (killed by t^nu) is the
/// index range [0, q^{r nu}), and multiplication by t is division of the index
/// by q^r.
class ModuleSpace {
 public:
  static constexpr uint64_t kMaxSize = uint64_t(1) << 20;

  ModuleSpace() = default;
  ModuleSpace(FieldPtr gf, uint32_t r, uint32_t n) {
    if (n == 0 || (r == 0 && n != 1)) throw Error("module rank and level must be positive");
    auto d = std::make_shared<Data>();
    d->gf = std::move(gf);
    d->r = r;
    d->n = n;
    d->q = static_cast<uint32_t>(d->gf->q());
    d->dim = r * n;
    uint64_t size = 1;
    d->pow.push_back(1);
    for (uint32_t j = 0; j < d->dim; ++j) {
      size *= d->q;
      if (size > kMaxSize) throw Error("module too large to enumerate");
      d->pow.push_back(static_cast<uint32_t>(size));
    }
    d->size = static_cast<uint32_t>(size);
    d->coords.resize(size_t(d->size) * d->dim);
    for (uint32_t idx = 0; idx < d->size; ++idx) {
      uint32_t x = idx;
      for (uint32_t j = 0; j < d->dim; ++j) {
        d->coords[size_t(idx) * d->dim + j] = static_cast<uint8_t>(x % d->q);
        x /= d->q;
      }
    }
    d_ = std::move(d);
  }
  static ModuleSpace plain(FieldPtr gf, uint32_t dim) { return ModuleSpace(std::move(gf), dim, 1); }

  const FiniteField& field() const { return *d_->gf; }
  const FiniteField* gf() const { return d_->gf.get(); }
  const FieldPtr& field_ptr() const { return d_->gf; }
  uint32_t q() const { return d_->q; }
  uint32_t r() const { return d_->r; }
  uint32_t n() const { return d_->n; }
  uint32_t dim() const { return d_->dim; }
  uint32_t size() const { return d_->size; }
  bool valid() const { return static_cast<bool>(d_); }
  bool operator==(const ModuleSpace& o) const {
    return d_ == o.d_ || (d_->gf == o.d_->gf && d_->r == o.d_->r && d_->n == o.d_->n);
  }

  static ModElem zero() { return {0}; }
  static bool is_zero(ModElem v) { return v.index == 0; }

  uint32_t coord(ModElem v, uint32_t j) const { return d_->coords[size_t(v.index) * d_->dim + j]; }
  std::vector<uint32_t> coords(ModElem v) const {
    std::vector<uint32_t> c(d_->dim);
    for (uint32_t j = 0; j < d_->dim; ++j) c[j] = coord(v, j);
    return c;
  }
  ModElem from_coords(const std::vector<uint32_t>& c) const {
    uint64_t idx = 0;
    for (uint32_t j = 0; j < d_->dim; ++j) idx += uint64_t(j < c.size() ? c[j] : 0) * d_->pow[j];
    return {static_cast<uint32_t>(idx)};
  }
  /// Coefficient of t^{-nu} b_k (1-based k, nu).
  uint32_t entry(ModElem v, uint32_t k, uint32_t nu) const { return coord(v, var_index(k, nu)); }
  uint32_t var_index(uint32_t k, uint32_t nu) const { return (nu - 1) * d_->r + (k - 1); }
  /// X_{k,nu} = [t^{-nu} b_k].
  ModElem basis(uint32_t k, uint32_t nu) const { return {d_->pow[var_index(k, nu)]}; }
  ModElem unit(uint32_t j) const { return {d_->pow[j]}; }

  ModElem add(ModElem a, ModElem b) const {
    if (a.index == 0) return b;
    if (b.index == 0) return a;
    uint64_t idx = 0;
    const auto& f = *d_->gf;
    for (uint32_t j = 0; j < d_->dim; ++j) idx += uint64_t(f.add(coord(a, j), coord(b, j))) * d_->pow[j];
    return {static_cast<uint32_t>(idx)};
  }
  ModElem neg(ModElem a) const {
    if (d_->gf->p() == 2) return a;
    return scale(d_->gf->neg(1), a);
  }
  ModElem sub(ModElem a, ModElem b) const { return add(a, neg(b)); }
  ModElem scale(uint32_t alpha, ModElem a) const {
    if (alpha == 1) return a;
    uint64_t idx = 0;
    const auto& f = *d_->gf;
    for (uint32_t j = 0; j < d_->dim; ++j) idx += uint64_t(f.mul(alpha, coord(a, j))) * d_->pow[j];
    return {static_cast<uint32_t>(idx)};
  }
  ModElem t_mul(ModElem v) const { return {v.index / d_->pow[d_->r]}; }
  ModElem t_pow_mul(ModElem v, uint32_t k) const {
    if (k >= d_->n) return zero();
    return {v.index / d_->pow[d_->r * k]};
  }
  /// a(t) * v for a = sum_i a[i] t^i with a[i] in GF(q).
  ModElem poly_mul(const std::vector<uint32_t>& a, ModElem v) const {
    ModElem acc = zero();
    for (uint32_t i = 0; i < a.size() && i < d_->n; ++i)
      if (a[i]) acc = add(acc, scale(a[i], t_pow_mul(v, i)));
    return acc;
  }

  /// Size of V_nu, the elements killed by t^nu.
  uint32_t torsion_size(uint32_t nu) const { return d_->pow[std::min(nu, d_->n) * d_->r]; }
  bool killed_by_t_power(ModElem v, uint32_t nu) const { return v.index < torsion_size(nu); }
  /// Least nu with t^nu v = 0.
  uint32_t order(ModElem v) const {
    for (uint32_t nu = 0; nu <= d_->n; ++nu)
      if (killed_by_t_power(v, nu)) return nu;
    return d_->n;
  }

  /// Component k (1-based) as the residue a mod t^n with v_k = a(t) t^{-n}:
  /// a[i] = coefficient of t^{-(n-i)}.
  std::vector<uint32_t> component(ModElem v, uint32_t k) const {
    std::vector<uint32_t> a(d_->n);
    for (uint32_t i = 0; i < d_->n; ++i) a[i] = entry(v, k, d_->n - i);
    return a;
  }
  ModElem from_components(const std::vector<std::vector<uint32_t>>& comps) const {
    std::vector<uint32_t> c(d_->dim, 0);
    for (uint32_t k = 1; k <= comps.size() && k <= d_->r; ++k)
      for (uint32_t i = 0; i < d_->n && i < comps[k - 1].size(); ++i) c[var_index(k, d_->n - i)] = comps[k - 1][i];
    return from_coords(c);
  }

  std::vector<ModElem> all() const {
    std::vector<ModElem> out(d_->size);
    for (uint32_t i = 0; i < d_->size; ++i) out[i] = {i};
    return out;
  }
  std::vector<ModElem> nonzero() const {
    std::vector<ModElem> out;
    out.reserve(d_->size - 1);
    for (uint32_t i = 1; i < d_->size; ++i) out.push_back({i});
    return out;
  }

  std::string label() const {
    return "(q=" + std::to_string(q()) + ",r=" + std::to_string(r()) + ",n=" + std::to_string(n()) + ")";
  }

  /// E.g. "t^-2 b1 + t^-1 b1"; plain spaces print "x1 + x2".
  std::string format(ModElem v) const {
    if (v.index == 0) return "0";
    std::string out;
    for (uint32_t nu = d_->n; nu >= 1; --nu)
      for (uint32_t k = 1; k <= d_->r; ++k) {
        uint32_t c = entry(v, k, nu);
        if (!c) continue;
        if (!out.empty()) out += " + ";
        if (c != 1) out += d_->gf->format(c) + "*";
        if (d_->n == 1)
          out += "x" + std::to_string(k);
        else
          out += "t^-" + std::to_string(nu) + " b" + std::to_string(k);
      }
    return out;
  }

 private:
  struct Data {
    FieldPtr gf;
    uint32_t r = 0, n = 0, q = 0, dim = 0, size = 0;
    std::vector<uint32_t> pow;
    std::vector<uint8_t> coords;
  };
  std::shared_ptr<const Data> d_;
};

/// F_q-linear map between module spaces, stored as a full image table.
class LinearMap {
 public:
  LinearMap() = default;
  /// images[j] is the image of the j-th coordinate unit vector of src.
  LinearMap(ModuleSpace src, ModuleSpace dst, const std::vector<ModElem>& images)
      : src_(std::move(src)), dst_(std::move(dst)) {
    if (images.size() != src_.dim()) throw Error("linear map needs one image per source coordinate");
    table_.assign(src_.size(), ModElem{0});
    for (uint32_t idx = 1; idx < src_.size(); ++idx) {
      // Peel the lowest nonzero digit: idx = c * q^j + rest.
      uint32_t j = 0, x = idx;
      while (x % src_.q() == 0) {
        x /= src_.q();
        ++j;
      }
      const uint32_t c = x % src_.q();
      const uint32_t rest = idx - c * src_.unit(j).index;
      table_[idx] = dst_.add(table_[rest], dst_.scale(c, images[j]));
    }
  }
  static LinearMap identity(const ModuleSpace& v) {
    std::vector<ModElem> im;
    for (uint32_t j = 0; j < v.dim(); ++j) im.push_back(v.unit(j));
    return LinearMap(v, v, im);
  }
  /// The A-linear map V^s_{t^n} -> V^r_{t^n} sending X_{k,n} to gens[k-1].
  static LinearMap from_generators(const ModuleSpace& src, const ModuleSpace& dst, const std::vector<ModElem>& gens) {
    if (src.n() != dst.n() || gens.size() != src.r()) throw Error("generator list does not match source rank");
    std::vector<ModElem> im(src.dim());
    for (uint32_t nu = 1; nu <= src.n(); ++nu)
      for (uint32_t k = 1; k <= src.r(); ++k) im[src.var_index(k, nu)] = dst.t_pow_mul(gens[k - 1], src.n() - nu);
    return LinearMap(src, dst, im);
  }

  const ModuleSpace& src() const { return src_; }
  const ModuleSpace& dst() const { return dst_; }
  ModElem operator()(ModElem v) const { return table_[v.index]; }
  const std::vector<ModElem>& table() const { return table_; }

  LinearMap compose_after(const LinearMap& g) const {  // this o g
    std::vector<ModElem> im;
    for (uint32_t j = 0; j < g.src().dim(); ++j) im.push_back((*this)(g(g.src().unit(j))));
    return LinearMap(g.src(), dst_, im);
  }
  bool injective() const {
    for (uint32_t i = 1; i < table_.size(); ++i)
      if (table_[i].index == 0) return false;
    return true;
  }
  bool surjective() const {
    std::vector<bool> hit(dst_.size(), false);
    for (auto v : table_) hit[v.index] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  }
  bool is_zero() const {
    return std::all_of(table_.begin(), table_.end(), [](ModElem v) { return v.index == 0; });
  }
  /// Preimage lists indexed by target element.
  std::vector<std::vector<ModElem>> fibers() const {
    std::vector<std::vector<ModElem>> f(dst_.size());
    for (uint32_t i = 0; i < table_.size(); ++i) f[table_[i].index].push_back({i});
    return f;
  }
  /// Inverse table on the image (source element or nullopt-like 0xffffffff).
  std::vector<uint32_t> inverse_on_image() const {
    std::vector<uint32_t> inv(dst_.size(), 0xffffffffu);
    for (uint32_t i = 0; i < table_.size(); ++i) inv[table_[i].index] = i;
    return inv;
  }

 private:
  ModuleSpace src_, dst_;
  std::vector<ModElem> table_;
};

/// F_q-subspace or A-submodule of a module space, with its element set.
struct Subspace {
  ModuleSpace space;
  std::vector<ModElem> basis;  ///< F_q-basis
  std::vector<ModElem> gens;   ///< A-generators (free-submodule mode); empty otherwise
  std::vector<ModElem> elements;
  std::vector<bool> member;

  bool contains(ModElem v) const { return member[v.index]; }
  uint32_t size() const { return static_cast<uint32_t>(elements.size()); }
  uint32_t dim() const { return static_cast<uint32_t>(basis.size()); }
  uint32_t rank() const { return static_cast<uint32_t>(gens.size()); }
  std::vector<ModElem> nonzero() const {
    std::vector<ModElem> out;
    for (auto v : elements)
      if (v.index) out.push_back(v);
    return out;
  }
  bool same_elements(const Subspace& o) const { return member == o.member; }
};

/// F_q-span.
inline Subspace span_fq(const ModuleSpace& V, const std::vector<ModElem>& gens) {
  Subspace S{V, {}, {}, {ModElem{0}}, std::vector<bool>(V.size(), false)};
  S.member[0] = true;
  for (ModElem g : gens) {
    if (S.member[g.index]) continue;
    S.basis.push_back(g);
    const size_t old = S.elements.size();
    for (uint32_t a = 1; a < V.q(); ++a) {
      ModElem ag = V.scale(a, g);
      for (size_t i = 0; i < old; ++i) {
        ModElem w = V.add(S.elements[i], ag);
        S.member[w.index] = true;
        S.elements.push_back(w);
      }
    }
  }
  std::sort(S.elements.begin(), S.elements.end());
  return S;
}

/// F_q[t]-span (closure under t).
inline Subspace span_a(const ModuleSpace& V, const std::vector<ModElem>& gens) {
  std::vector<ModElem> all;
  for (ModElem g : gens)
    for (uint32_t i = 0; i < V.n(); ++i) all.push_back(V.t_pow_mul(g, i));
  return span_fq(V, all);
}

/// Free submodule generated by gens (assumed to form an A/t^n-basis).
inline Subspace free_submodule(const ModuleSpace& V, const std::vector<ModElem>& gens) {
  Subspace S = span_a(V, gens);
  S.gens = gens;
  return S;
}

/// The sequence 0 -> V' -> V -> V'' -> 0 for a subspace V' of a plain space,
/// with a section j of p (p o j = id).  V' and V'' get their own coordinates:
/// the basis of V' in the order stored, and a complement of coordinate
/// vectors of V for V''.
struct SubspaceMaps {
  LinearMap inclusion;
  LinearMap quotient;
  LinearMap section;
};

inline SubspaceMaps subspace_maps(const Subspace& sub) {
  const ModuleSpace& V = sub.space;
  if (V.n() != 1) throw Error("subspace_maps expects a plain space");
  const uint32_t k = sub.dim();
  ModuleSpace S = ModuleSpace::plain(V.field_ptr(), k);
  ModuleSpace Q = ModuleSpace::plain(V.field_ptr(), V.dim() - k);
  std::vector<ModElem> comp;
  Subspace acc = sub;
  for (uint32_t j = 0; j < V.dim() && comp.size() < Q.dim(); ++j) {
    if (acc.contains(V.unit(j))) continue;
    comp.push_back(V.unit(j));
    std::vector<ModElem> g = acc.basis;
    g.push_back(V.unit(j));
    acc = span_fq(V, g);
  }
  LinearMap inc(S, V, sub.basis);
  LinearMap sec(Q, V, comp);
  std::vector<ModElem> table(V.size());
  for (uint32_t a = 0; a < Q.size(); ++a)
    for (ModElem w : sub.elements) table[V.add(sec({a}), w).index] = {a};
  std::vector<ModElem> im;
  for (uint32_t j = 0; j < V.dim(); ++j) im.push_back(table[V.unit(j).index]);
  return {inc, LinearMap(V, Q, im), sec};
}

/// Divisors alpha t^nu of t^n, as (alpha code, nu) pairs.
inline std::vector<std::pair<uint32_t, uint32_t>> divisors(const ModuleSpace& V) {
  std::vector<std::pair<uint32_t, uint32_t>> out;
  for (uint32_t nu = 0; nu <= V.n(); ++nu)
    for (uint32_t a = 1; a < V.q(); ++a) out.emplace_back(a, nu);
  return out;
}

/// V'_{k,nu}: span of V_{nu-1} and X_{1,nu}, ..., X_{k-1,nu}, i.e. all
/// elements supported on coordinates strictly before X_{k,nu}.
inline Subspace prefix_space(const ModuleSpace& V, uint32_t k, uint32_t nu) {
  if (k < 1 || k > V.r() || nu < 1 || nu > V.n()) throw Error("prefix_space index out of range");
  std::vector<ModElem> gens;
  for (uint32_t j = 0; j < V.var_index(k, nu); ++j) gens.push_back(V.unit(j));
  return span_fq(V, gens);
}

/// Calls fn(gens) once per free A/t^n-submodule of rank s, with gens its
/// canonical generator list: the generator matrix (rows = generators, columns
/// = components, entries in F_q[t]/(t^n)) has identity columns at the pivots
/// of its mod-t row echelon form, and entries left of a row's pivot are
/// divisible by t.
inline void for_each_free_submodule(const ModuleSpace& V, uint32_t s,
                                    const std::function<void(const std::vector<ModElem>&)>& fn) {
  const uint32_t r = V.r(), n = V.n(), q = V.q();
  if (s == 0 || s > r) throw Error("free submodule rank out of range");
  std::vector<uint32_t> piv(s);
  for (uint32_t i = 0; i < s; ++i) piv[i] = i;
  // Residues a mod t^n are indexed 0..q^n-1 by base-q digits a[0..n-1].
  uint32_t qn = 1;
  for (uint32_t i = 0; i < n; ++i) qn *= q;
  auto residue = [&](uint32_t code) {
    std::vector<uint32_t> a(n);
    for (uint32_t i = 0; i < n; ++i) {
      a[i] = code % q;
      code /= q;
    }
    return a;
  };
  while (true) {
    // Free positions: (row i, column c) for non-pivot c; c < piv[i] restricts to t*A.
    std::vector<bool> is_piv(r, false);
    for (auto p : piv) is_piv[p] = true;
    struct Slot {
      uint32_t row, col, choices;
      bool t_divisible;
    };
    std::vector<Slot> slots;
    for (uint32_t i = 0; i < s; ++i)
      for (uint32_t c = 0; c < r; ++c)
        if (!is_piv[c]) {
          bool tdiv = c < piv[i];
          slots.push_back({i, c, tdiv ? qn / q : qn, tdiv});
        }
    std::vector<uint32_t> ctr(slots.size(), 0);
    while (true) {
      std::vector<std::vector<std::vector<uint32_t>>> rows(s, std::vector<std::vector<uint32_t>>(r, std::vector<uint32_t>(n, 0)));
      for (uint32_t i = 0; i < s; ++i) rows[i][piv[i]][0] = 1;
      for (size_t k = 0; k < slots.size(); ++k) {
        // t-divisible slots enumerate residues with a[0] = 0.
        uint32_t code = slots[k].t_divisible ? ctr[k] * q : ctr[k];
        rows[slots[k].row][slots[k].col] = residue(code);
      }
      std::vector<ModElem> gens(s);
      for (uint32_t i = 0; i < s; ++i) gens[i] = V.from_components(rows[i]);
      fn(gens);
      size_t k = 0;
      while (k < slots.size()) {
        if (++ctr[k] < slots[k].choices) break;
        ctr[k] = 0;
        ++k;
      }
      if (k == slots.size()) break;
    }
    // Next pivot subset in lex order.
    int i = static_cast<int>(s) - 1;
    while (i >= 0 && piv[i] == r - s + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (uint32_t j = i + 1; j < s; ++j) piv[j] = piv[j - 1] + 1;
  }
}

inline std::vector<Subspace> free_submodules(const ModuleSpace& V, uint32_t s) {
  std::vector<Subspace> out;
  for_each_free_submodule(V, s, [&](const std::vector<ModElem>& g) { out.push_back(free_submodule(V, g)); });
  return out;
}

inline uint64_t count_free_submodules(const ModuleSpace& V, uint32_t s) {
  uint64_t c = 0;
  for_each_free_submodule(V, s, [&](const std::vector<ModElem>&) { ++c; });
  return c;
}

/// All F_q-subspaces of a plain space (including 0 and V).
inline std::vector<Subspace> all_subspaces(const ModuleSpace& V) {
  if (V.n() != 1) throw Error("all_subspaces expects a plain space");
  std::vector<Subspace> out;
  out.push_back(span_fq(V, {}));
  for (uint32_t s = 1; s <= V.r(); ++s) {
    auto subs = free_submodules(V, s);
    for (auto& S : subs) {
      S.gens.clear();
      out.push_back(std::move(S));
    }
  }
  return out;
}

/// Free submodule counts by rank (counts[s], s = 0..r), found by enumerating
/// every submodule as an iterated sum of cyclic submodules and keeping those
/// with |W| = |W cap V_1|^n.  Shares no code with for_each_free_submodule.
inline std::vector<uint64_t> brute_force_free_submodule_counts(const ModuleSpace& V) {
  const uint32_t N = V.size();
  const size_t words = (N + 63) / 64;
  using Bits = std::vector<uint64_t>;
  struct Hash {
    size_t operator()(const Bits& b) const {
      uint64_t h = 0x12345;
      for (auto w : b) h = splitmix64(h ^ w);
      return static_cast<size_t>(h);
    }
  };
  std::unordered_set<Bits, Hash> seen;
  std::vector<Bits> frontier;
  Bits zero(words, 0);
  zero[0] = 1;
  seen.insert(zero);
  frontier.push_back(zero);
  std::vector<uint64_t> counts(V.r() + 1, 0);
  auto test = [](const Bits& b, uint32_t i) { return (b[i >> 6] >> (i & 63)) & 1; };
  const uint32_t v1 = V.torsion_size(1);
  while (!frontier.empty()) {
    std::vector<Bits> next;
    for (const Bits& W : frontier) {
      std::vector<uint32_t> elems;
      for (uint32_t i = 0; i < N; ++i)
        if (test(W, i)) elems.push_back(i);
      // Classify W: free iff |W| = |W cap V_1|^n.
      uint64_t socle = 0;
      for (auto e : elems)
        if (e < v1) ++socle;
      uint64_t pw = 1;
      for (uint32_t i = 0; i < V.n(); ++i) pw *= socle;
      if (pw == elems.size()) {
        uint32_t s = 0;
        for (uint64_t x = socle; x > 1; x /= V.q()) ++s;
        counts[s]++;
      }
      // W + Av depends only on the coset v + W.
      Bits covered = W;
      for (uint32_t v = 1; v < N; ++v) {
        if (test(covered, v)) continue;
        for (auto w : elems) {
          uint32_t x = V.add({v}, {w}).index;
          covered[x >> 6] |= uint64_t(1) << (x & 63);
        }
        // W + A v
        std::vector<uint32_t> cur = elems;
        Bits bits = W;
        for (uint32_t k = 0; k < V.n(); ++k) {
          ModElem g = V.t_pow_mul({v}, k);
          if (test(bits, g.index)) continue;
          const size_t old = cur.size();
          for (uint32_t a = 1; a < V.q(); ++a) {
            ModElem ag = V.scale(a, g);
            for (size_t i = 0; i < old; ++i) {
              uint32_t w = V.add({cur[i]}, ag).index;
              bits[w >> 6] |= uint64_t(1) << (w & 63);
              cur.push_back(w);
            }
          }
        }
        if (seen.insert(bits).second) next.push_back(std::move(bits));
      }
    }
    frontier = std::move(next);
  }
  return counts;
}

}  // namespace recip
