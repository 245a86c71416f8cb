#pragma once

#include <memory>
#include <string>

#include "recip/poly.hpp"

namespace recip {

template <class K>
class ExtElem;

/// Simple extension K[s]/(m) of a field K.  Inversion of a non-unit raises
/// NonInvertible, which also signals a reducible modulus.
template <class K>
class ExtensionField : public std::enable_shared_from_this<ExtensionField<K>> {
 public:
  static std::shared_ptr<const ExtensionField> create(const Poly<K>& modulus, std::string name = "s") {
    if (modulus.degree() < 1) throw Error("extension modulus must have positive degree");
    return std::shared_ptr<const ExtensionField>(new ExtensionField(modulus.monic(), std::move(name)));
  }

  const Poly<K>& modulus() const { return mod_; }
  const std::string& name() const { return name_; }
  int degree() const { return mod_.degree(); }

  ExtElem<K> zero() const;
  ExtElem<K> one() const;
  ExtElem<K> gen() const;
  ExtElem<K> from_base(const K& c) const;

 private:
  ExtensionField(Poly<K> m, std::string name) : mod_(std::move(m)), name_(std::move(name)) {}
  Poly<K> mod_;
  std::string name_;
};

template <class K>
class ExtElem {
 public:
  using Ctx = ExtensionField<K>;
  ExtElem() = default;
  ExtElem(std::shared_ptr<const Ctx> ctx, Poly<K> rep) : ctx_(std::move(ctx)), rep_(std::move(rep)) {
    if (rep_.degree() >= ctx_->degree()) rep_ = rep_ % ctx_->modulus();
  }

  const std::shared_ptr<const Ctx>& context() const { return ctx_; }
  const Poly<K>& rep() const { return rep_; }

  ExtElem zero() const { return ExtElem(ctx_, rep_.zero()); }
  ExtElem one() const { return ExtElem(ctx_, rep_.one()); }
  ExtElem from_int(int64_t k) const { return ExtElem(ctx_, Poly<K>::constant(rep_.zero_coeff().one().from_int(k))); }
  bool is_zero() const { return rep_.is_zero(); }

  ExtElem operator+(const ExtElem& o) const { return ExtElem(ctx_, rep_ + o.rep_); }
  ExtElem operator-(const ExtElem& o) const { return ExtElem(ctx_, rep_ - o.rep_); }
  ExtElem operator-() const { return ExtElem(ctx_, -rep_); }
  ExtElem operator*(const ExtElem& o) const { return ExtElem(ctx_, (rep_ * o.rep_) % ctx_->modulus()); }
  ExtElem inv() const {
    if (is_zero()) throw DivisionByZero();
    Poly<K> s, t;
    Poly<K> g = Poly<K>::xgcd(rep_, ctx_->modulus(), s, t);
    if (g.degree() != 0)
      throw NonInvertible("element " + to_string() + " shares the factor " + g.to_string(ctx_->name()) +
                          " with the modulus");
    return ExtElem(ctx_, s % ctx_->modulus());
  }
  ExtElem operator/(const ExtElem& o) const { return *this * o.inv(); }
  ExtElem& operator+=(const ExtElem& o) { return *this = *this + o; }
  ExtElem& operator*=(const ExtElem& o) { return *this = *this * o; }
  ExtElem pow(uint64_t k) const { return power(*this, k); }
  bool operator==(const ExtElem& o) const { return rep_ == o.rep_; }
  bool operator!=(const ExtElem& o) const { return !(rep_ == o.rep_); }

  std::string to_string() const { return rep_.to_string(ctx_->name()); }

 private:
  std::shared_ptr<const Ctx> ctx_;
  Poly<K> rep_;
};

template <class K>
ExtElem<K> ExtensionField<K>::zero() const {
  return ExtElem<K>(this->shared_from_this(), mod_.zero());
}
template <class K>
ExtElem<K> ExtensionField<K>::one() const {
  return ExtElem<K>(this->shared_from_this(), mod_.one());
}
template <class K>
ExtElem<K> ExtensionField<K>::gen() const {
  return ExtElem<K>(this->shared_from_this(), Poly<K>::x(mod_.zero_coeff()));
}
template <class K>
ExtElem<K> ExtensionField<K>::from_base(const K& c) const {
  return ExtElem<K>(this->shared_from_this(), Poly<K>::constant(c));
}

}  // namespace recip
