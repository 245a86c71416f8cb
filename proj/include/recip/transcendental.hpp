#pragma once

#include <memory>
#include <string>
#include <vector>

#include "recip/sparse_poly.hpp"

namespace recip {

template <class K>
class TransElem;

/// Purely transcendental extension K(u_1, ..., u_k).
template <class K>
class TranscendentalField : public std::enable_shared_from_this<TranscendentalField<K>> {
 public:
  static std::shared_ptr<const TranscendentalField> create(const K& proto, std::vector<std::string> names) {
    if (names.empty() || names.size() > SparsePoly<K>::kMaxVars) throw Error("need 1..8 transcendentals");
    return std::shared_ptr<const TranscendentalField>(new TranscendentalField(proto.zero(), std::move(names)));
  }
  uint32_t count() const { return static_cast<uint32_t>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const K& base_zero() const { return zero_; }

  TransElem<K> zero() const;
  TransElem<K> one() const;
  TransElem<K> gen(uint32_t i) const;
  TransElem<K> from_base(const K& c) const;

 private:
  TranscendentalField(K zero, std::vector<std::string> names) : zero_(std::move(zero)), names_(std::move(names)) {}
  K zero_;
  std::vector<std::string> names_;
};

/// Fraction num/den of sparse polynomials.  The representation is reduced
/// where cheap (monic denominator, exact cancellation when one side divides
/// the other, common monomial content); equality is decided by
/// cross-multiplication, so no multivariate gcd is needed.
template <class K>
class TransElem {
 public:
  using Ctx = TranscendentalField<K>;
  using SP = SparsePoly<K>;
  TransElem() = default;
  TransElem(std::shared_ptr<const Ctx> ctx, SP num, SP den)
      : ctx_(std::move(ctx)), num_(std::move(num)), den_(std::move(den)) {
    normalize();
  }

  const SP& num() const { return num_; }
  const SP& den() const { return den_; }
  const std::shared_ptr<const Ctx>& context() const { return ctx_; }

  TransElem zero() const { return TransElem(ctx_, num_.zero(), num_.one()); }
  TransElem one() const { return TransElem(ctx_, num_.one(), num_.one()); }
  TransElem from_int(int64_t k) const {
    return TransElem(ctx_, SP::constant(num_.nvars(), ctx_->base_zero().one().from_int(k)), num_.one());
  }
  bool is_zero() const { return num_.is_zero(); }

  TransElem operator+(const TransElem& o) const {
    if (den_ == o.den_) return TransElem(ctx_, num_ + o.num_, den_);
    return TransElem(ctx_, num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  TransElem operator-(const TransElem& o) const {
    if (den_ == o.den_) return TransElem(ctx_, num_ - o.num_, den_);
    return TransElem(ctx_, num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  }
  TransElem operator-() const { return TransElem(ctx_, -num_, den_); }
  TransElem operator*(const TransElem& o) const { return TransElem(ctx_, num_ * o.num_, den_ * o.den_); }
  TransElem inv() const {
    if (is_zero()) throw DivisionByZero();
    return TransElem(ctx_, den_, num_);
  }
  TransElem operator/(const TransElem& o) const { return *this * o.inv(); }
  TransElem& operator+=(const TransElem& o) { return *this = *this + o; }
  TransElem& operator*=(const TransElem& o) { return *this = *this * o; }
  TransElem pow(uint64_t k) const { return power(*this, k); }
  bool operator==(const TransElem& o) const { return num_ * o.den_ == o.num_ * den_; }
  bool operator!=(const TransElem& o) const { return !(*this == o); }

  std::string to_string() const {
    const auto& names = ctx_->names();
    if (den_ == num_.one()) return num_.to_string(names);
    return "(" + num_.to_string(names) + ")/(" + den_.to_string(names) + ")";
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw DivisionByZero();
    if (num_.is_zero()) {
      den_ = num_.one();
      return;
    }
    // Common monomial content.
    auto content = [](const SP& p) {
      typename SP::Key k = p.terms().begin()->first;
      for (const auto& [kk, c] : p.terms()) {
        typename SP::Key m = 0;
        for (uint32_t i = 0; i < SP::kMaxVars; ++i) {
          uint32_t e = std::min(SP::exponent(k, i), SP::exponent(kk, i));
          m |= typename SP::Key(e) << (8 * (7 - i));
        }
        k = m;
      }
      return k;
    };
    typename SP::Key cn = content(num_), cd = content(den_), cm = 0;
    for (uint32_t i = 0; i < SP::kMaxVars; ++i)
      cm |= typename SP::Key(std::min(SP::exponent(cn, i), SP::exponent(cd, i))) << (8 * (7 - i));
    if (cm != 0) {
      SP mono = num_.zero();
      mono.add_term(cm, num_.zero_coeff().one());
      num_ = *num_.divide_exact(mono);
      den_ = *den_.divide_exact(mono);
    }
    if (!den_.is_constant()) {
      if (auto qq = num_.divide_exact(den_)) {
        num_ = std::move(*qq);
        den_ = num_.one();
      } else if (auto qd = den_.divide_exact(num_)) {
        den_ = std::move(*qd);
        num_ = num_.one();
      }
    }
    const K lc = den_.terms().begin()->second;
    if (!(lc == lc.one())) {
      const K li = lc.inv();
      num_ = num_.scale(li);
      den_ = den_.scale(li);
    }
  }

  std::shared_ptr<const Ctx> ctx_;
  SP num_;
  SP den_;
};

template <class K>
TransElem<K> TranscendentalField<K>::zero() const {
  SparsePoly<K> z(count(), zero_);
  return TransElem<K>(this->shared_from_this(), z, z.one());
}
template <class K>
TransElem<K> TranscendentalField<K>::one() const {
  SparsePoly<K> z(count(), zero_);
  return TransElem<K>(this->shared_from_this(), z.one(), z.one());
}
template <class K>
TransElem<K> TranscendentalField<K>::gen(uint32_t i) const {
  return TransElem<K>(this->shared_from_this(), SparsePoly<K>::variable(count(), i, zero_),
                      SparsePoly<K>::constant(count(), zero_.one()));
}
template <class K>
TransElem<K> TranscendentalField<K>::from_base(const K& c) const {
  return TransElem<K>(this->shared_from_this(), SparsePoly<K>::constant(count(), c),
                      SparsePoly<K>::constant(count(), zero_.one()));
}

}  // namespace recip
