#pragma once

#include <string>
#include <vector>

#include "recip/poly.hpp"

namespace recip {

/// Additive polynomial sum_i u_i X^{q^i}, stored by its coefficients u_i of tau^i.
/// The product is composition: (f o g)_k = sum_{i+j=k} f_i g_j^{q^i}.
template <class K>
class TauPoly {
 public:
  TauPoly() = default;
  TauPoly(const K& proto, uint64_t q) : zero_(proto.zero()), q_(q) {}
  TauPoly(const K& proto, uint64_t q, std::vector<K> u) : u_(std::move(u)), zero_(proto.zero()), q_(q) { trim(); }

  /// u * tau^0.
  static TauPoly scalar(const K& u, uint64_t q) { return TauPoly(u, q, {u}); }
  static TauPoly tau(const K& proto, uint64_t q) { return TauPoly(proto, q, {proto.zero(), proto.one()}); }

  uint64_t q() const { return q_; }
  int degree() const { return static_cast<int>(u_.size()) - 1; }
  bool is_zero() const { return u_.empty(); }
  const K& operator[](size_t i) const { return i < u_.size() ? u_[i] : zero_; }
  const std::vector<K>& coeffs() const { return u_; }
  const K& leading() const { return u_.empty() ? zero_ : u_.back(); }
  /// The linear coefficient; d is an algebra map R[tau] -> R.
  const K& d() const { return (*this)[0]; }
  const K& zero_coeff() const { return zero_; }

  TauPoly operator+(const TauPoly& o) const {
    std::vector<K> r(std::max(u_.size(), o.u_.size()), zero_);
    for (size_t i = 0; i < r.size(); ++i) r[i] = (*this)[i] + o[i];
    return TauPoly(zero_, q_, std::move(r));
  }
  TauPoly operator-(const TauPoly& o) const {
    std::vector<K> r(std::max(u_.size(), o.u_.size()), zero_);
    for (size_t i = 0; i < r.size(); ++i) r[i] = (*this)[i] - o[i];
    return TauPoly(zero_, q_, std::move(r));
  }
  /// c * f, i.e. (c tau^0) o f.
  TauPoly scale(const K& c) const {
    std::vector<K> r(u_.size(), zero_);
    for (size_t i = 0; i < r.size(); ++i) r[i] = c * u_[i];
    return TauPoly(zero_, q_, std::move(r));
  }
  bool operator==(const TauPoly& o) const {
    if (u_.size() != o.u_.size()) return false;
    for (size_t i = 0; i < u_.size(); ++i)
      if (!(u_[i] == o.u_[i])) return false;
    return true;
  }
  bool operator!=(const TauPoly& o) const { return !(*this == o); }

  /// this o g.
  TauPoly compose(const TauPoly& g) const {
    if (is_zero() || g.is_zero()) return TauPoly(zero_, q_);
    std::vector<K> r(u_.size() + g.u_.size() - 1, zero_);
    for (size_t j = 0; j < g.u_.size(); ++j) {
      K frob = g.u_[j];  // g_j^{q^i}, advanced along i
      for (size_t i = 0; i < u_.size(); ++i) {
        if (i > 0) frob = power(frob, q_);
        if (!u_[i].is_zero()) r[i + j] = r[i + j] + u_[i] * frob;
      }
    }
    return TauPoly(zero_, q_, std::move(r));
  }
  /// k-fold self-composition; k = 0 gives the identity X.
  TauPoly iterate(unsigned k) const {
    TauPoly r = scalar(zero_.one(), q_);
    for (unsigned i = 0; i < k; ++i) r = compose(r);
    return r;
  }

  /// Value at x in an algebra L over K (embed maps coefficients).
  template <class L, class Embed>
  L eval_in(const L& x, Embed&& embed) const {
    L acc = x.zero();
    L xp = x;
    for (size_t i = 0; i < u_.size(); ++i) {
      if (i > 0) xp = power(xp, q_);
      if (!u_[i].is_zero()) acc = acc + embed(u_[i]) * xp;
    }
    return acc;
  }
  K eval(const K& x) const {
    return eval_in(x, [](const K& c) { return c; });
  }

  Poly<K> to_uni() const {
    Poly<K> p(zero_);
    uint64_t e = 1;
    for (size_t i = 0; i < u_.size(); ++i, e *= q_) p.set(e, u_[i]);
    return p;
  }

  /// tau-form of f; throws NonAdditive at the first coefficient off the exponents q^i.
  static TauPoly from_uni(const Poly<K>& f, uint64_t q) {
    std::vector<K> u;
    uint64_t next = 1;
    for (size_t e = 0; e < f.size(); ++e) {
      if (e == next) {
        u.push_back(f[e]);
        next *= q;
        continue;
      }
      if (!f[e].is_zero()) throw NonAdditive(e, f[e].to_string());
    }
    return TauPoly(f.zero_coeff(), q, std::move(u));
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (size_t i = 0; i < u_.size(); ++i) {
      if (u_[i].is_zero()) continue;
      if (!out.empty()) out += " + ";
      std::string cs = u_[i].to_string();
      if (cs.find_first_of(" +-/*") != std::string::npos) cs = "(" + cs + ")";
      if (u_[i] == zero_.one())
        out += "tau^" + std::to_string(i);
      else
        out += cs + "*tau^" + std::to_string(i);
    }
    return out;
  }

 private:
  void trim() {
    while (!u_.empty() && u_.back().is_zero()) u_.pop_back();
  }

  std::vector<K> u_;
  K zero_{};
  uint64_t q_ = 2;
};

/// to_tau as a free function.
template <class K>
TauPoly<K> to_tau(const Poly<K>& f, uint64_t q) {
  return TauPoly<K>::from_uni(f, q);
}

}  // namespace recip
