#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "recip/arith.hpp"
#include "recip/error.hpp"
#include "recip/rng.hpp"

namespace recip {

namespace detail {

inline bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<uint64_t> prime_factors(uint64_t n) {
  std::vector<uint64_t> out;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline uint32_t inv_mod(uint32_t a, uint32_t p) {
  // p prime and small: Fermat.
  uint64_t r = 1, b = a % p;
  for (uint32_t e = p - 2; e; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return static_cast<uint32_t>(r);
}

/// Dense polynomial over GF(p), coefficients low to high, no trailing zeros.
using FpPoly = std::vector<uint32_t>;

inline void fp_trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline FpPoly fp_sub(FpPoly a, const FpPoly& b, uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  fp_trim(a);
  return a;
}

/// Remainder of a modulo b (b nonzero).
inline FpPoly fp_mod(FpPoly a, const FpPoly& b, uint32_t p) {
  fp_trim(a);
  const size_t db = b.size() - 1;
  const uint32_t inv_lead = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const uint32_t c = static_cast<uint32_t>(uint64_t(a.back()) * inv_lead % p);
    const size_t shift = a.size() - 1 - db;
    for (size_t i = 0; i <= db; ++i)
      a[shift + i] = static_cast<uint32_t>((a[shift + i] + uint64_t(p - c) * b[i]) % p);
    fp_trim(a);
  }
  return a;
}

inline FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& f, uint32_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = static_cast<uint32_t>((r[i + j] + uint64_t(a[i]) * b[j]) % p);
  return fp_mod(std::move(r), f, p);
}

inline FpPoly fp_powmod(FpPoly base, uint64_t e, const FpPoly& f, uint32_t p) {
  FpPoly r{1};
  base = fp_mod(std::move(base), f, p);
  while (e) {
    if (e & 1) r = fp_mulmod(r, base, f, p);
    base = fp_mulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b, uint32_t p) {
  fp_trim(a);
  fp_trim(b);
  while (!b.empty()) {
    FpPoly r = fp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Ben-Or test: f of degree e is irreducible iff gcd(x^{p^i} - x, f) = 1 for i <= e/2.
inline bool fp_irreducible(const FpPoly& f, uint32_t p) {
  const size_t e = f.size() - 1;
  if (e == 0) return false;
  if (e == 1) return true;
  const FpPoly x{0, 1};
  FpPoly h = x;
  for (size_t i = 1; i <= e / 2; ++i) {
    h = fp_powmod(h, p, f, p);
    FpPoly g = fp_gcd(f, fp_sub(h, x, p), p);
    if (g.size() > 1) return false;
  }
  return true;
}

}  // namespace detail

/// Finite field GF(p^e) with table arithmetic.
///
/// Elements are encoded as integers in [0, q): the base-p digits are the
/// coordinates in the power basis 1, s, s^2, ... of GF(p)[s]/(modulus).
/// A second encoding by discrete logarithm (Zech representation) is exposed
/// for hot loops.
class FiniteField {
 public:
  using Code = uint32_t;
  using Log = uint32_t;
  static constexpr Log kZeroLog = 0xffffffffu;
  static constexpr uint64_t kMaxOrder = uint64_t(1) << 24;

  /// Interned: the same (p, e, modulus) returns the same context, which lives
  /// for the rest of the process.
  static std::shared_ptr<const FiniteField> create(uint32_t p, uint32_t e,
                                                   std::optional<std::vector<uint32_t>> modulus = std::nullopt,
                                                   uint64_t seed = 0) {
    if (!detail::is_prime(p)) throw NotPrime(p);
    if (e == 0) throw Error("extension degree must be at least 1");
    uint64_t q = 1;
    for (uint32_t i = 0; i < e; ++i) {
      q *= p;
      if (q > kMaxOrder) throw Error("field order exceeds table limit 2^24");
    }
    detail::FpPoly f;
    if (modulus) {
      f = *modulus;
      for (auto& c : f) c %= p;
      detail::fp_trim(f);
      if (f.size() != e + 1 || f.back() != 1) throw ReducibleModulus("modulus must be monic of degree " + std::to_string(e));
      if (!detail::fp_irreducible(f, p)) throw ReducibleModulus("modulus is reducible over GF(" + std::to_string(p) + ")");
    } else {
      f = first_irreducible(p, e, q, seed);
    }
    static std::mutex mu;
    static std::map<std::tuple<uint32_t, uint32_t, std::vector<uint32_t>>, std::shared_ptr<const FiniteField>> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(p, e, f);
    auto it = registry.find(key);
    if (it != registry.end()) return it->second;
    std::shared_ptr<const FiniteField> field(new FiniteField(p, e, q, f));
    registry.emplace(key, field);
    return field;
  }

  uint32_t p() const { return p_; }
  uint32_t e() const { return e_; }
  uint64_t q() const { return q_; }
  const std::vector<uint32_t>& modulus() const { return mod_; }

  Code add(Code a, Code b) const {
    if (p_ == 2) return a ^ b;
    if (a == 0) return b;
    if (b == 0) return a;
    return from_log(ladd(log_[a], log_[b]));
  }
  Code neg(Code a) const {
    if (p_ == 2 || a == 0) return a;
    return exp_[lneg(log_[a])];
  }
  Code sub(Code a, Code b) const { return add(a, neg(b)); }
  Code mul(Code a, Code b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[lmul(log_[a], log_[b])];
  }
  Code inv(Code a) const {
    if (a == 0) throw DivisionByZero();
    return exp_[linv(log_[a])];
  }
  Code div(Code a, Code b) const { return mul(a, inv(b)); }
  Code pow(Code a, uint64_t k) const {
    if (k == 0) return 1;
    if (a == 0) return 0;
    return exp_[(uint64_t(log_[a]) * (k % qm1_)) % qm1_];
  }
  Code from_int(int64_t k) const {
    int64_t r = k % int64_t(p_);
    if (r < 0) r += p_;
    return static_cast<Code>(r);
  }
  /// Primitive element.
  Code generator() const { return exp_[qm1_ > 1 ? 1 : 0]; }

  Log to_log(Code a) const { return a == 0 ? kZeroLog : log_[a]; }
  Code from_log(Log l) const { return l == kZeroLog ? 0 : exp_[l]; }
  Log lmul(Log a, Log b) const {
    if (a == kZeroLog || b == kZeroLog) return kZeroLog;
    Log s = a + b;
    return s >= qm1_ ? s - qm1_ : s;
  }
  Log ladd(Log a, Log b) const {
    if (a == kZeroLog) return b;
    if (b == kZeroLog) return a;
    Log k = b >= a ? b - a : b + qm1_ - a;
    Log z = zech_[k];
    if (z == kZeroLog) return kZeroLog;
    Log s = a + z;
    return s >= qm1_ ? s - qm1_ : s;
  }
  Log lneg(Log a) const {
    if (a == kZeroLog || p_ == 2) return a;
    Log s = a + qm1_ / 2;
    return s >= qm1_ ? s - qm1_ : s;
  }
  Log linv(Log a) const {
    if (a == kZeroLog) throw DivisionByZero();
    return a == 0 ? 0 : qm1_ - a;
  }
  Log lsub(Log a, Log b) const { return ladd(a, lneg(b)); }
  uint32_t order_minus_one() const { return qm1_; }

  Code sample(Rng& rng) const { return static_cast<Code>(uniform_below(rng, q_)); }
  Log sample_log(Rng& rng) const { return to_log(sample(rng)); }

  std::vector<uint32_t> digits(Code a) const {
    std::vector<uint32_t> d(e_, 0);
    for (uint32_t i = 0; i < e_; ++i) {
      d[i] = a % p_;
      a /= p_;
    }
    return d;
  }
  Code from_digits(const std::vector<uint32_t>& d) const {
    uint64_t c = 0;
    for (size_t i = d.size(); i-- > 0;) c = c * p_ + (d[i] % p_);
    return static_cast<Code>(c);
  }

  /// Polynomial notation in the generator name, e.g. "s+1"; prime fields print integers.
  std::string format(Code a, const std::string& var = "s") const {
    if (e_ == 1) return std::to_string(a);
    if (a == 0) return "0";
    auto d = digits(a);
    std::string out;
    for (size_t i = e_; i-- > 0;) {
      if (d[i] == 0) continue;
      if (!out.empty()) out += "+";
      std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
      if (mono.empty())
        out += std::to_string(d[i]);
      else if (d[i] == 1)
        out += mono;
      else
        out += std::to_string(d[i]) + "*" + mono;
    }
    return out;
  }

  /// Images of the elements of a subfield GF(p^e') (e' | e) under a fixed embedding.
  std::vector<Code> embedding_from(const FiniteField& sub) const {
    if (sub.p_ != p_ || e_ % sub.e_ != 0) throw Error("no embedding between these fields");
    Code beta = 0;
    if (sub.e_ == 1) {
      beta = 0;
    } else {
      // Roots of sub's modulus lie in the multiplicative subgroup of order sub.q-1.
      const uint64_t step = qm1_ / (sub.q_ - 1);
      bool found = false;
      for (uint64_t k = 0; k < sub.q_ - 1 && !found; ++k) {
        Code cand = exp_[(k * step) % qm1_];
        Code acc = 0;
        for (size_t i = sub.mod_.size(); i-- > 0;) acc = add(mul(acc, cand), from_int(sub.mod_[i]));
        if (acc == 0) {
          beta = cand;
          found = true;
        }
      }
      if (!found) throw Error("subfield modulus has no root");
    }
    std::vector<Code> table(sub.q_);
    for (Code c = 0; c < sub.q_; ++c) {
      auto d = sub.digits(c);
      Code acc = 0;
      for (size_t i = d.size(); i-- > 0;) acc = add(mul(acc, beta), from_int(d[i]));
      table[c] = acc;
    }
    return table;
  }

 private:
  FiniteField(uint32_t p, uint32_t e, uint64_t q, detail::FpPoly f)
      : p_(p), e_(e), q_(q), qm1_(static_cast<uint32_t>(q - 1)), mod_(std::move(f)) {
    build_tables();
  }

  static detail::FpPoly first_irreducible(uint32_t p, uint32_t e, uint64_t q, uint64_t seed) {
    if (e == 1) return {0, 1};
    const uint64_t start = seed % q;
    for (uint64_t i = 0; i < q; ++i) {
      uint64_t c = (start + i) % q;
      detail::FpPoly f(e + 1, 0);
      for (uint32_t k = 0; k < e; ++k) {
        f[k] = static_cast<uint32_t>(c % p);
        c /= p;
      }
      f[e] = 1;
      if (detail::fp_irreducible(f, p)) return f;
    }
    throw ReducibleModulus("no irreducible polynomial found");
  }

  detail::FpPoly code_poly(Code c) const {
    detail::FpPoly d = digits(c);
    detail::fp_trim(d);
    return d;
  }

  void build_tables() {
    exp_.assign(std::max<uint64_t>(qm1_, 1), 0);
    log_.assign(q_, kZeroLog);
    zech_.assign(std::max<uint64_t>(qm1_, 1), kZeroLog);
    if (q_ == 2) {
      exp_[0] = 1;
      log_[1] = 0;
      zech_[0] = kZeroLog;
      return;
    }
    const auto factors = detail::prime_factors(qm1_);
    Code g = 0;
    for (Code c = 2; c < q_ && g == 0; ++c) {
      detail::FpPoly gp = code_poly(c);
      if (e_ == 1) gp = {c};
      bool primitive = true;
      for (uint64_t l : factors) {
        detail::FpPoly r = detail::fp_powmod(gp, qm1_ / l, mod_, p_);
        if (r.size() == 1 && r[0] == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) g = c;
    }
    if (g == 0) throw Error("no primitive element found");
    // Walk the powers of g; multiplication by g uses digit shifts.
    const auto gd = digits(g);
    uint32_t gdeg = 0;
    for (uint32_t j = 0; j < e_; ++j)
      if (gd[j]) gdeg = j;
    std::vector<uint32_t> cur(e_, 0), acc(e_), tmp(e_);
    cur[0] = 1;
    for (uint32_t i = 0; i < qm1_; ++i) {
      Code c = from_digits(cur);
      exp_[i] = c;
      log_[c] = i;
      std::fill(acc.begin(), acc.end(), 0);
      tmp = cur;
      for (uint32_t j = 0; j <= gdeg; ++j) {
        if (gd[j]) {
          for (uint32_t k = 0; k < e_; ++k) acc[k] = (acc[k] + gd[j] * tmp[k]) % p_;
        }
        if (j < gdeg) {
          // tmp <- s * tmp mod modulus
          uint32_t top = tmp[e_ - 1];
          for (uint32_t k = e_ - 1; k > 0; --k) tmp[k] = tmp[k - 1];
          tmp[0] = 0;
          if (top)
            for (uint32_t k = 0; k < e_; ++k) tmp[k] = (tmp[k] + (p_ - top) * mod_[k]) % p_;
        }
      }
      cur = acc;
    }
    for (uint32_t k = 0; k < qm1_; ++k) {
      Code c = exp_[k];
      Code c1 = (c % p_ == p_ - 1) ? c - (p_ - 1) : c + 1;
      zech_[k] = c1 == 0 ? kZeroLog : log_[c1];
    }
  }

  uint32_t p_, e_;
  uint64_t q_;
  uint32_t qm1_;
  std::vector<uint32_t> mod_;
  std::vector<Code> exp_;
  std::vector<Log> log_;
  std::vector<Log> zech_;
};

using FieldPtr = std::shared_ptr<const FiniteField>;

/// Value-type element of a FiniteField.  The context must outlive the value;
/// contexts from FiniteField::create are interned and never freed.
class GFElem {
 public:
  using Code = FiniteField::Code;
  GFElem() = default;
  GFElem(const FiniteField* f, Code v) : f_(f), v_(v) {}

  const FiniteField* field() const { return f_; }
  Code code() const { return v_; }
  GFElem zero() const { return {f_, 0}; }
  GFElem one() const { return {f_, 1}; }
  GFElem from_int(int64_t k) const { return {f_, f_->from_int(k)}; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  GFElem operator+(const GFElem& o) const { return {f_, f_->add(v_, o.v_)}; }
  GFElem operator-(const GFElem& o) const { return {f_, f_->sub(v_, o.v_)}; }
  GFElem operator*(const GFElem& o) const { return {f_, f_->mul(v_, o.v_)}; }
  GFElem operator/(const GFElem& o) const { return {f_, f_->div(v_, o.v_)}; }
  GFElem operator-() const { return {f_, f_->neg(v_)}; }
  GFElem& operator+=(const GFElem& o) { return *this = *this + o; }
  GFElem& operator-=(const GFElem& o) { return *this = *this - o; }
  GFElem& operator*=(const GFElem& o) { return *this = *this * o; }
  GFElem inv() const { return {f_, f_->inv(v_)}; }
  GFElem pow(uint64_t k) const { return {f_, f_->pow(v_, k)}; }
  bool operator==(const GFElem& o) const { return v_ == o.v_; }
  bool operator!=(const GFElem& o) const { return v_ != o.v_; }
  bool operator<(const GFElem& o) const { return v_ < o.v_; }
  std::string to_string() const { return f_->format(v_); }

 private:
  const FiniteField* f_ = nullptr;
  Code v_ = 0;
};

}  // namespace recip
