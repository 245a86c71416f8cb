#pragma once

#include <string>
#include <utility>
#include <vector>

#include "recip/arith.hpp"
#include "recip/error.hpp"

namespace recip {

/// Dense univariate polynomial with coefficients in a ring element type K.
///
/// K must provide zero(), one(), is_zero(), +, -, *, unary -, ==.  Division
/// routines additionally need a field (inv()).
template <class K>
class Poly {
 public:
  Poly() = default;
  explicit Poly(const K& proto) : zero_(proto.zero()) {}
  Poly(const K& proto, std::vector<K> coeffs) : c_(std::move(coeffs)), zero_(proto.zero()) { trim(); }

  static Poly constant(const K& c) { return Poly(c, {c}); }
  static Poly monomial(const K& c, size_t deg) {
    std::vector<K> v(deg + 1, c.zero());
    v[deg] = c;
    return Poly(c, std::move(v));
  }
  /// The variable X.
  static Poly x(const K& proto) { return monomial(proto.one(), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  size_t size() const { return c_.size(); }
  const K& operator[](size_t i) const { return i < c_.size() ? c_[i] : zero_; }
  const std::vector<K>& coeffs() const { return c_; }
  const K& leading() const { return c_.empty() ? zero_ : c_.back(); }
  const K& zero_coeff() const { return zero_; }
  Poly zero() const { return Poly(zero_); }
  Poly one() const { return constant(zero_.one()); }

  void set(size_t i, const K& v) {
    if (i >= c_.size()) c_.resize(i + 1, zero_);
    c_[i] = v;
    trim();
  }

  Poly operator+(const Poly& o) const {
    std::vector<K> r(std::max(c_.size(), o.c_.size()), zero_);
    for (size_t i = 0; i < r.size(); ++i) r[i] = (*this)[i] + o[i];
    return Poly(zero_, std::move(r));
  }
  Poly operator-(const Poly& o) const {
    std::vector<K> r(std::max(c_.size(), o.c_.size()), zero_);
    for (size_t i = 0; i < r.size(); ++i) r[i] = (*this)[i] - o[i];
    return Poly(zero_, std::move(r));
  }
  Poly operator-() const {
    std::vector<K> r(c_.size(), zero_);
    for (size_t i = 0; i < r.size(); ++i) r[i] = -c_[i];
    return Poly(zero_, std::move(r));
  }
  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly(zero_);
    std::vector<K> r(c_.size() + o.c_.size() - 1, zero_);
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
    }
    return Poly(zero_, std::move(r));
  }
  Poly scale(const K& s) const {
    std::vector<K> r(c_.size(), zero_);
    for (size_t i = 0; i < r.size(); ++i) r[i] = c_[i] * s;
    return Poly(zero_, std::move(r));
  }
  Poly shift(size_t k) const {
    if (is_zero()) return *this;
    std::vector<K> r(k, zero_);
    r.insert(r.end(), c_.begin(), c_.end());
    return Poly(zero_, std::move(r));
  }
  /// Drops the k lowest coefficients (exact division by X^k when they vanish).
  Poly unshift(size_t k) const {
    if (k >= c_.size()) return Poly(zero_);
    return Poly(zero_, std::vector<K>(c_.begin() + k, c_.end()));
  }
  bool operator==(const Poly& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (size_t i = 0; i < c_.size(); ++i)
      if (!(c_[i] == o.c_[i])) return false;
    return true;
  }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  template <class L>
  L eval(const L& x) const {
    L acc = x.zero();
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }
  /// Evaluation in another ring through a coefficient map K -> L.
  template <class L, class Embed>
  L eval_in(const L& x, Embed&& embed) const {
    L acc = x.zero();
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + embed(c_[i]);
    return acc;
  }

  /// Quotient and remainder; requires K to be a field.
  std::pair<Poly, Poly> divmod(const Poly& b) const {
    if (b.is_zero()) throw DivisionByZero();
    Poly r = *this;
    std::vector<K> qv(c_.size() >= b.c_.size() ? c_.size() - b.c_.size() + 1 : 0, zero_);
    const K inv_lead = b.leading().inv();
    while (!r.is_zero() && r.degree() >= b.degree()) {
      size_t shift = r.degree() - b.degree();
      K c = r.leading() * inv_lead;
      qv[shift] = c;
      for (size_t i = 0; i < b.c_.size(); ++i) r.c_[shift + i] = r.c_[shift + i] - c * b.c_[i];
      r.c_.pop_back();
      r.trim();
    }
    return {Poly(zero_, std::move(qv)), r};
  }
  Poly operator%(const Poly& b) const { return divmod(b).second; }
  Poly operator/(const Poly& b) const { return divmod(b).first; }

  Poly monic() const {
    if (is_zero()) return *this;
    return scale(leading().inv());
  }
  Poly derivative() const {
    if (c_.size() <= 1) return Poly(zero_);
    std::vector<K> r(c_.size() - 1, zero_);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * zero_.one().from_int(static_cast<int64_t>(i));
    return Poly(zero_, std::move(r));
  }

  static Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
      Poly r = a % b;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }
  /// Returns g = gcd(a, b) (monic) with s*a + t*b = g.
  static Poly xgcd(const Poly& a, const Poly& b, Poly& s, Poly& t) {
    Poly r0 = a, r1 = b;
    Poly s0 = a.one(), s1 = a.zero(), t0 = a.zero(), t1 = a.one();
    while (!r1.is_zero()) {
      auto [qq, rr] = r0.divmod(r1);
      r0 = std::move(r1);
      r1 = std::move(rr);
      Poly s2 = s0 - qq * s1;
      s0 = std::move(s1);
      s1 = std::move(s2);
      Poly t2 = t0 - qq * t1;
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    if (r0.is_zero()) {
      s = s0;
      t = t0;
      return r0;
    }
    K li = r0.leading().inv();
    s = s0.scale(li);
    t = t0.scale(li);
    return r0.scale(li);
  }

  std::string to_string(const std::string& var = "X") const {
    if (is_zero()) return "0";
    std::string out;
    for (size_t i = c_.size(); i-- > 0;) {
      if (c_[i].is_zero()) continue;
      if (!out.empty()) out += " + ";
      std::string cs = c_[i].to_string();
      if (cs.find_first_of(" +-/*") != std::string::npos) cs = "(" + cs + ")";
      bool unit = c_[i] == zero_.one();
      if (i == 0)
        out += cs;
      else {
        if (!unit) out += cs + "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<K> c_;
  K zero_{};
};

}  // namespace recip
