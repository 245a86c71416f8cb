#pragma once

#include <string>

#include "recip/gf.hpp"
#include "recip/poly.hpp"

namespace recip {

/// Element of F_q(t), kept as num/den with den monic and gcd(num, den) = 1,
/// so equality is structural.
class RatFunc {
 public:
  using P = Poly<GFElem>;

  RatFunc() = default;
  explicit RatFunc(const FiniteField* f) : num_(GFElem(f, 0)), den_(P::constant(GFElem(f, 1))) {}
  RatFunc(P num, P den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  static RatFunc from_poly(const P& p) { return RatFunc(p, p.one()); }
  static RatFunc constant(const GFElem& c) { return from_poly(P::constant(c)); }
  static RatFunc t(const FiniteField* f) { return from_poly(P::x(GFElem(f, 1))); }
  /// t^k for any integer k.
  static RatFunc t_power(const FiniteField* f, int k) {
    P mono = P::monomial(GFElem(f, 1), static_cast<size_t>(k < 0 ? -k : k));
    return k >= 0 ? from_poly(mono) : RatFunc(P::constant(GFElem(f, 1)), mono);
  }

  const FiniteField* field() const { return num_.zero_coeff().field(); }
  const P& num() const { return num_; }
  const P& den() const { return den_; }

  RatFunc zero() const { return RatFunc(field()); }
  RatFunc one() const { return constant(GFElem(field(), 1)); }
  RatFunc from_int(int64_t k) const { return constant(GFElem(field(), field()->from_int(k))); }
  bool is_zero() const { return num_.is_zero(); }

  RatFunc operator+(const RatFunc& o) const {
    if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  RatFunc operator-(const RatFunc& o) const {
    if (den_ == o.den_) return RatFunc(num_ - o.num_, den_);
    return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  }
  RatFunc operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
  }
  RatFunc operator*(const RatFunc& o) const {
    if (is_zero() || o.is_zero()) return zero();
    return RatFunc(num_ * o.num_, den_ * o.den_);
  }
  RatFunc inv() const {
    if (is_zero()) throw DivisionByZero();
    return RatFunc(den_, num_);
  }
  RatFunc operator/(const RatFunc& o) const { return *this * o.inv(); }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc pow(uint64_t k) const { return power(*this, k); }
  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  /// True when the value is a constant of F_q.
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

  /// Re-normalizes; idempotent.
  RatFunc normalized() const { return RatFunc(num_, den_); }

  /// Value at t = t0 in a field L, coefficients mapped by embed.
  template <class L, class Embed>
  L eval(const L& t0, Embed&& embed) const {
    L d = den_.eval_in(t0, embed);
    if (d.is_zero()) throw DenominatorVanishes();
    return num_.eval_in(t0, embed) / d;
  }

  std::string to_string() const {
    if (den_.degree() == 0) return num_.to_string("t");
    return "(" + num_.to_string("t") + ")/(" + den_.to_string("t") + ")";
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw DivisionByZero();
    if (num_.is_zero()) {
      den_ = den_.one();
      return;
    }
    if (den_.degree() > 0) {
      P g = P::gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = num_ / g;
        den_ = den_ / g;
      }
    }
    GFElem lc = den_.leading();
    if (!lc.is_one()) {
      GFElem li = lc.inv();
      num_ = num_.scale(li);
      den_ = den_.scale(li);
    }
  }

  P num_;
  P den_;
};

}  // namespace recip
