#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "recip/error.hpp"

namespace recip {

/// Binomial coefficient with C(n, k) = 0 for k < 0 or k > n.
inline uint64_t binom(int64_t n, int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  uint64_t r = 1;
  for (int64_t i = 1; i <= k; ++i) r = r * static_cast<uint64_t>(n - k + i) / static_cast<uint64_t>(i);
  return r;
}

inline uint64_t ipow(uint64_t b, uint64_t e) {
  uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

/// |Delta_k| = |E_k| = q^{r(n-1)+k-1}.
inline uint64_t special_set_size(uint32_t q, uint32_t r, uint32_t n, uint32_t k) {
  return ipow(q, uint64_t(r) * (n - 1) + k - 1);
}

/// Order of the unipotent group: q^{r^2(n-1) + r(r-1)/2}.
inline uint64_t unipotent_order(uint32_t q, uint32_t r, uint32_t n) {
  return ipow(q, uint64_t(r) * r * (n - 1) + uint64_t(r) * (r - 1) / 2);
}

/// dim R_{n,d} = sum over nonempty I of C(d-1, |I|-1) prod_{k in I} q^{r(n-1)+k-1}.
inline uint64_t dim_formula(uint32_t q, uint32_t r, uint32_t n, uint32_t d) {
  if (d == 0) return 1;
  if (r > 20) throw Error("rank too large for the subset sum");
  uint64_t total = 0;
  for (uint32_t mask = 1; mask < (1u << r); ++mask) {
    uint64_t prod = 1;
    uint32_t sz = 0;
    for (uint32_t k = 1; k <= r; ++k)
      if (mask & (1u << (k - 1))) {
        prod *= special_set_size(q, r, n, k);
        ++sz;
      }
    total += binom(d - 1, sz - 1) * prod;
  }
  return total;
}

/// index * C(d-1, r-1).
inline uint64_t cusp_dim(uint32_t r, uint32_t d, uint64_t index) { return index * binom(int64_t(d) - 1, int64_t(r) - 1); }

/// dim of the degree-d part of the free F_q[f_{s+1},...,f_r]-module with basis
/// Delta_{s+1}...Delta_r on a plain space of dimension r.  The number of basis
/// elements of degree j is the z^j coefficient of prod_{k>s} (1 + (q^{k-1}-1) z).
inline uint64_t js_expected(uint32_t q, uint32_t r, uint32_t s, uint32_t d) {
  if (s > r) throw Error("s exceeds the dimension");
  std::vector<uint64_t> N{1};
  for (uint32_t k = s + 1; k <= r; ++k) {
    std::vector<uint64_t> M(N.size() + 1, 0);
    const uint64_t w = ipow(q, k - 1) - 1;
    for (size_t j = 0; j < N.size(); ++j) {
      M[j] += N[j];
      M[j + 1] += N[j] * w;
    }
    N = std::move(M);
  }
  const uint32_t vars = r - s;
  uint64_t total = 0;
  for (size_t j = 0; j < N.size() && j <= d; ++j) {
    // f-monomials of degree d-j in vars variables.
    const uint64_t fm = vars == 0 ? (d == j ? 1 : 0) : binom(int64_t(d - j) + vars - 1, vars - 1);
    total += N[j] * fm;
  }
  return total;
}

}  // namespace recip
