#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "recip/arith.hpp"
#include "recip/error.hpp"

namespace recip {

/// Sparse multivariate polynomial in at most 8 variables over K.
///
/// Exponent vectors are packed one byte per variable with variable 0 in the
/// most significant byte, so integer order on keys is lex order with
/// x_0 > x_1 > ...; terms are stored leading term first.
template <class K>
class SparsePoly {
 public:
  using Key = uint64_t;
  using Terms = std::map<Key, K, std::greater<Key>>;
  static constexpr uint32_t kMaxVars = 8;

  SparsePoly() = default;
  SparsePoly(uint32_t nvars, const K& proto) : nvars_(nvars), zero_(proto.zero()) {
    if (nvars > kMaxVars) throw Error("SparsePoly supports at most 8 variables");
  }

  static SparsePoly constant(uint32_t nvars, const K& c) {
    SparsePoly p(nvars, c);
    p.add_term(0, c);
    return p;
  }
  static SparsePoly variable(uint32_t nvars, uint32_t i, const K& proto) {
    SparsePoly p(nvars, proto);
    p.add_term(unit_key(i), proto.one());
    return p;
  }

  static Key unit_key(uint32_t i) { return Key(1) << (8 * (7 - i)); }
  static uint32_t exponent(Key k, uint32_t i) { return static_cast<uint32_t>((k >> (8 * (7 - i))) & 0xff); }
  static Key make_key(const std::vector<uint32_t>& exps) {
    Key k = 0;
    for (uint32_t i = 0; i < exps.size(); ++i) {
      if (exps[i] > 255) throw std::overflow_error("exponent exceeds 255");
      k |= Key(exps[i]) << (8 * (7 - i));
    }
    return k;
  }
  static uint32_t key_degree(Key k) {
    uint32_t d = 0;
    for (uint32_t i = 0; i < kMaxVars; ++i) d += exponent(k, i);
    return d;
  }
  static Key key_mul(Key a, Key b) {
    for (uint32_t i = 0; i < kMaxVars; ++i)
      if (exponent(a, i) + exponent(b, i) > 255) throw std::overflow_error("exponent exceeds 255");
    return a + b;
  }
  static bool key_divides(Key a, Key b) {
    for (uint32_t i = 0; i < kMaxVars; ++i)
      if (exponent(a, i) > exponent(b, i)) return false;
    return true;
  }

  uint32_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  const K& zero_coeff() const { return zero_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  SparsePoly zero() const { return SparsePoly(nvars_, zero_); }
  SparsePoly one() const { return constant(nvars_, zero_.one()); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }
  /// Constant term (zero if absent).
  K constant_term() const {
    auto it = terms_.find(0);
    return it == terms_.end() ? zero_ : it->second;
  }

  int total_degree() const {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max<int>(d, key_degree(k));
    return d;
  }

  void add_term(Key k, const K& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(k, c);
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  SparsePoly operator+(const SparsePoly& o) const {
    SparsePoly r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(k, c);
    return r;
  }
  SparsePoly operator-() const {
    SparsePoly r(nvars_, zero_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
  }
  SparsePoly operator-(const SparsePoly& o) const {
    SparsePoly r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(k, -c);
    return r;
  }
  SparsePoly operator*(const SparsePoly& o) const {
    SparsePoly r(nvars_, zero_);
    for (const auto& [ka, ca] : terms_)
      for (const auto& [kb, cb] : o.terms_) r.add_term(key_mul(ka, kb), ca * cb);
    return r;
  }
  SparsePoly scale(const K& s) const {
    SparsePoly r(nvars_, zero_);
    if (s.is_zero()) return r;
    for (const auto& [k, c] : terms_) r.add_term(k, c * s);
    return r;
  }
  SparsePoly mul_term(Key k, const K& s) const {
    SparsePoly r(nvars_, zero_);
    if (s.is_zero()) return r;
    for (const auto& [kk, c] : terms_) r.add_term(key_mul(kk, k), c * s);
    return r;
  }
  SparsePoly pow(uint64_t e) const { return power(*this, e); }
  SparsePoly& operator+=(const SparsePoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  SparsePoly& operator-=(const SparsePoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }

  bool operator==(const SparsePoly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    auto it = o.terms_.begin();
    for (const auto& [k, c] : terms_) {
      if (k != it->first || !(c == it->second)) return false;
      ++it;
    }
    return true;
  }
  bool operator!=(const SparsePoly& o) const { return !(*this == o); }

  /// Value at a point of L^nvars, coefficients mapped by embed: K -> L.
  template <class L, class Embed>
  L eval(const std::vector<L>& point, Embed&& embed) const {
    L acc = point.empty() ? embed(zero_) : point[0].zero();
    if (point.empty()) {
      for (const auto& [k, c] : terms_) acc = acc + embed(c);
      return acc;
    }
    for (const auto& [k, c] : terms_) {
      L term = embed(c);
      for (uint32_t i = 0; i < nvars_; ++i) {
        uint32_t e = exponent(k, i);
        if (e) term = term * power(point[i], e);
      }
      acc = acc + term;
    }
    return acc;
  }

  /// Exact quotient by g if g divides this polynomial, else nullopt.
  /// With a single divisor the lex division algorithm leaves remainder 0
  /// exactly when g divides, so this is a decision procedure.  K must be a field.
  std::optional<SparsePoly> divide_exact(const SparsePoly& g) const {
    if (g.is_zero()) throw DivisionByZero();
    SparsePoly quot(nvars_, zero_);
    SparsePoly r = *this;
    const Key lg = g.terms_.begin()->first;
    const K inv_lc = g.terms_.begin()->second.inv();
    while (!r.is_zero()) {
      const Key lr = r.terms_.begin()->first;
      if (!key_divides(lg, lr)) return std::nullopt;
      const Key mono = lr - lg;
      const K c = r.terms_.begin()->second * inv_lc;
      quot.add_term(mono, c);
      r -= g.mul_term(mono, c);
    }
    return quot;
  }

  std::string to_string(const std::vector<std::string>& names) const {
    if (is_zero()) return "0";
    std::string out;
    for (const auto& [k, c] : terms_) {
      std::string mono;
      for (uint32_t i = 0; i < nvars_; ++i) {
        uint32_t e = exponent(k, i);
        if (!e) continue;
        if (!mono.empty()) mono += "*";
        mono += i < names.size() ? names[i] : "x" + std::to_string(i + 1);
        if (e > 1) mono += "^" + std::to_string(e);
      }
      std::string cs = c.to_string();
      if (cs.find_first_of(" +-/*") != std::string::npos) cs = "(" + cs + ")";
      if (!out.empty()) out += " + ";
      if (mono.empty())
        out += cs;
      else if (c == zero_.one())
        out += mono;
      else
        out += cs + "*" + mono;
    }
    return out;
  }

 private:
  uint32_t nvars_ = 0;
  K zero_{};
  Terms terms_;
};

}  // namespace recip
