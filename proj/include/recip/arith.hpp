#pragma once

#include <cstdint>

namespace recip {

/// Square-and-multiply power for any element type exposing one() and operator*.
template <class K>
K power(const K& x, uint64_t k) {
  K r = x.one();
  K b = x;
  while (k) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

}  // namespace recip
