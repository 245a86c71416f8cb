#pragma once

#include <cstdint>
#include <vector>

#include "recip/module_space.hpp"

namespace recip {

/// r x r matrix over F_q[t]/(t^n); entry (i,j) is a residue stored as n
/// coefficients of t^0..t^{n-1}.
struct RingMatrix {
  uint32_t r = 0, n = 0;
  std::vector<uint32_t> a;  // (i*r + j)*n + k

  RingMatrix() = default;
  RingMatrix(uint32_t r_, uint32_t n_) : r(r_), n(n_), a(size_t(r_) * r_ * n_, 0) {}
  static RingMatrix identity(uint32_t r, uint32_t n) {
    RingMatrix m(r, n);
    for (uint32_t i = 0; i < r; ++i) m.at(i, i, 0) = 1;
    return m;
  }
  uint32_t& at(uint32_t i, uint32_t j, uint32_t k) { return a[(size_t(i) * r + j) * n + k]; }
  uint32_t at(uint32_t i, uint32_t j, uint32_t k) const { return a[(size_t(i) * r + j) * n + k]; }
  std::vector<uint32_t> entry(uint32_t i, uint32_t j) const {
    return {a.begin() + (size_t(i) * r + j) * n, a.begin() + (size_t(i) * r + j + 1) * n};
  }
  bool operator==(const RingMatrix&) const = default;

  RingMatrix mul(const RingMatrix& o, const FiniteField& f) const {
    RingMatrix m(r, n);
    for (uint32_t i = 0; i < r; ++i)
      for (uint32_t j = 0; j < r; ++j)
        for (uint32_t l = 0; l < r; ++l)
          for (uint32_t x = 0; x < n; ++x) {
            if (!at(i, l, x)) continue;
            for (uint32_t y = 0; x + y < n; ++y)
              if (o.at(l, j, y)) m.at(i, j, x + y) = f.add(m.at(i, j, x + y), f.mul(at(i, l, x), o.at(l, j, y)));
          }
    return m;
  }
};

/// A finite matrix group acting on a module space, with each element's
/// action precomputed as a permutation of element indices.
class MatrixGroup {
  struct Slot {
    uint32_t i, j, k;
  };

 public:
  MatrixGroup(ModuleSpace space, std::vector<RingMatrix> elems) : space_(std::move(space)), elems_(std::move(elems)) {
    perms_.reserve(elems_.size());
    for (const auto& g : elems_) perms_.push_back(action_table(g));
  }

  /// Matrices congruent mod t to upper unitriangular ones.
  static MatrixGroup unipotent(const ModuleSpace& V) {
    const uint32_t r = V.r(), n = V.n(), q = V.q();
    std::vector<Slot> slots;
    for (uint32_t i = 0; i < r; ++i)
      for (uint32_t j = 0; j < r; ++j)
        for (uint32_t k = 0; k < n; ++k)
          if (k > 0 || i < j) slots.push_back({i, j, k});
    return MatrixGroup(V, enumerate(V, slots, q));
  }

  /// The kernel of reduction mod t^{n-1}: matrices I + t^{n-1} M.
  static MatrixGroup reduction_kernel(const ModuleSpace& V) {
    const uint32_t r = V.r(), n = V.n();
    if (n < 2) throw Error("reduction kernel needs level n >= 2");
    std::vector<Slot> slots;
    for (uint32_t i = 0; i < r; ++i)
      for (uint32_t j = 0; j < r; ++j) slots.push_back({i, j, n - 1});
    return MatrixGroup(V, enumerate(V, slots, V.q()));
  }

  const ModuleSpace& space() const { return space_; }
  size_t size() const { return elems_.size(); }
  const RingMatrix& element(size_t g) const { return elems_[g]; }
  const std::vector<RingMatrix>& elements() const { return elems_; }
  ModElem act(size_t g, ModElem v) const { return {perms_[g][v.index]}; }
  const std::vector<uint32_t>& permutation(size_t g) const { return perms_[g]; }

  /// g.v computed directly from the matrix (independent of the tables).
  ModElem apply(const RingMatrix& g, ModElem v) const {
    const auto& f = space_.field();
    std::vector<std::vector<uint32_t>> comps(space_.r(), std::vector<uint32_t>(space_.n(), 0));
    for (uint32_t i = 0; i < space_.r(); ++i)
      for (uint32_t j = 0; j < space_.r(); ++j) {
        auto c = space_.component(v, j + 1);
        for (uint32_t x = 0; x < space_.n(); ++x)
          for (uint32_t y = 0; x + y < space_.n(); ++y)
            if (g.at(i, j, x) && c[y]) comps[i][x + y] = f.add(comps[i][x + y], f.mul(g.at(i, j, x), c[y]));
      }
    return space_.from_components(comps);
  }

 private:
  static std::vector<RingMatrix> enumerate(const ModuleSpace& V, const std::vector<Slot>& slots, uint32_t q) {
    std::vector<RingMatrix> out;
    std::vector<uint32_t> ctr(slots.size(), 0);
    while (true) {
      RingMatrix m = RingMatrix::identity(V.r(), V.n());
      for (size_t s = 0; s < slots.size(); ++s) m.at(slots[s].i, slots[s].j, slots[s].k) = ctr[s];
      out.push_back(std::move(m));
      size_t s = 0;
      while (s < slots.size()) {
        if (++ctr[s] < q) break;
        ctr[s] = 0;
        ++s;
      }
      if (s == slots.size()) break;
    }
    return out;
  }

  std::vector<uint32_t> action_table(const RingMatrix& g) const {
    std::vector<ModElem> images(space_.dim());
    for (uint32_t j = 0; j < space_.dim(); ++j) images[j] = apply(g, space_.unit(j));
    LinearMap m(space_, space_, images);
    std::vector<uint32_t> t(space_.size());
    for (uint32_t i = 0; i < space_.size(); ++i) t[i] = m({i}).index;
    return t;
  }

  ModuleSpace space_;
  std::vector<RingMatrix> elems_;
  std::vector<std::vector<uint32_t>> perms_;
};

}  // namespace recip
