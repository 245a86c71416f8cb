#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "recip/gf.hpp"
#include "recip/ratfunc.hpp"
#include "recip/sparse_poly.hpp"

namespace recip {

/// Nonzero linear form over GF(q) with first nonzero coefficient 1.
struct LinearForm {
  std::vector<uint32_t> c;
  auto operator<=>(const LinearForm&) const = default;
  bool operator==(const LinearForm&) const = default;
};

/// A form split as scalar * canonical form.
struct ScaledForm {
  FiniteField::Code scalar;
  LinearForm form;
};

inline ScaledForm canonical_form(const FiniteField& f, const std::vector<uint32_t>& coeffs) {
  size_t i = 0;
  while (i < coeffs.size() && coeffs[i] == 0) ++i;
  if (i == coeffs.size()) throw Error("linear form is identically zero");
  const auto lead = coeffs[i];
  const auto li = f.inv(lead);
  LinearForm lf{std::vector<uint32_t>(coeffs.size())};
  for (size_t k = 0; k < coeffs.size(); ++k) lf.c[k] = f.mul(coeffs[k], li);
  return {lead, std::move(lf)};
}

/// GF(q) constants viewed in a coefficient type.
inline GFElem lift_from_gf(const GFElem&, const GFElem& c) { return c; }
inline RatFunc lift_from_gf(const RatFunc&, const GFElem& c) { return RatFunc::constant(c); }

/// Element of the fraction field of K[x_1..x_m] whose denominator is a
/// product of linear forms over GF(q).  Kept reduced: no denominator form
/// divides the numerator.
template <class K>
class FactoredRational {
 public:
  using SP = SparsePoly<K>;
  using Den = std::map<LinearForm, uint32_t>;

  FactoredRational() = default;
  FactoredRational(const FiniteField* gf, uint32_t nvars, const K& proto) : gf_(gf), num_(nvars, proto) {}
  FactoredRational(const FiniteField* gf, SP num, Den den) : gf_(gf), num_(std::move(num)), den_(std::move(den)) {
    reduce();
  }

  /// The linear form sum coeffs[i] * x_i as a polynomial.
  static FactoredRational linear(const FiniteField* gf, const std::vector<uint32_t>& coeffs, const K& proto) {
    FactoredRational r(gf, static_cast<uint32_t>(coeffs.size()), proto);
    r.num_ = form_poly(gf, coeffs, proto);
    return r;
  }
  /// 1 / (sum coeffs[i] * x_i).
  static FactoredRational reciprocal(const FiniteField* gf, const std::vector<uint32_t>& coeffs, const K& proto) {
    ScaledForm sf = canonical_form(*gf, coeffs);
    const uint32_t m = static_cast<uint32_t>(coeffs.size());
    SP num = SP::constant(m, lift_from_gf(proto, GFElem(gf, gf->inv(sf.scalar))));
    Den den;
    den.emplace(std::move(sf.form), 1);
    FactoredRational r(gf, m, proto);
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    return r;
  }
  static FactoredRational constant(const FiniteField* gf, uint32_t nvars, const K& c) {
    FactoredRational r(gf, nvars, c);
    r.num_ = SP::constant(nvars, c);
    return r;
  }

  const FiniteField* gf() const { return gf_; }
  uint32_t nvars() const { return num_.nvars(); }
  const SP& num() const { return num_; }
  const Den& den() const { return den_; }
  uint32_t den_degree() const {
    uint32_t d = 0;
    for (const auto& [f, e] : den_) d += e;
    return d;
  }

  FactoredRational zero() const { return FactoredRational(gf_, nvars(), num_.zero_coeff()); }
  FactoredRational one() const { return constant(gf_, nvars(), num_.zero_coeff().one()); }
  FactoredRational from_int(int64_t k) const { return constant(gf_, nvars(), num_.zero_coeff().one().from_int(k)); }
  bool is_zero() const { return num_.is_zero(); }

  FactoredRational operator+(const FactoredRational& o) const { return combine(o, false); }
  FactoredRational operator-(const FactoredRational& o) const { return combine(o, true); }
  FactoredRational operator-() const {
    FactoredRational r = *this;
    r.num_ = -r.num_;
    return r;
  }
  FactoredRational operator*(const FactoredRational& o) const {
    if (is_zero() || o.is_zero()) return zero();
    Den d = den_;
    for (const auto& [f, e] : o.den_) d[f] += e;
    return FactoredRational(gf_, num_ * o.num_, std::move(d));
  }
  FactoredRational& operator+=(const FactoredRational& o) { return *this = *this + o; }
  FactoredRational& operator-=(const FactoredRational& o) { return *this = *this - o; }
  FactoredRational& operator*=(const FactoredRational& o) { return *this = *this * o; }
  FactoredRational pow(uint64_t k) const { return power(*this, k); }

  /// Inverse; defined when the numerator is a nonzero constant or a single
  /// linear form (the only shapes whose reciprocal keeps a factored denominator).
  FactoredRational inv() const {
    if (is_zero()) throw DivisionByZero();
    SP num = num_.one();
    for (const auto& [f, e] : den_) num = num * form_poly(gf_, f.c, num_.zero_coeff()).pow(e);
    if (num_.is_constant()) return FactoredRational(gf_, num.scale(num_.constant_term().inv()), {});
    if (num_.total_degree() == 1 && !num_.terms().count(0)) {
      std::vector<uint32_t> coeffs(nvars(), 0);
      for (const auto& [k, c] : num_.terms()) {
        for (uint32_t i = 0; i < nvars(); ++i)
          if (SP::exponent(k, i)) {
            auto code = as_gf_code(c);
            if (!code) throw NonInvertible("numerator coefficients are not constants of GF(q)");
            coeffs[i] = *code;
          }
      }
      ScaledForm sf = canonical_form(*gf_, coeffs);
      Den d;
      d.emplace(sf.form, 1);
      return FactoredRational(gf_, num.scale(lift_from_gf(num_.zero_coeff(), GFElem(gf_, gf_->inv(sf.scalar)))),
                              std::move(d));
    }
    throw NonInvertible("numerator is not a product of linear forms");
  }
  FactoredRational operator/(const FactoredRational& o) const { return *this * o.inv(); }

  /// Exact equality: the difference has zero numerator.
  bool operator==(const FactoredRational& o) const { return (*this - o).is_zero(); }
  bool operator!=(const FactoredRational& o) const { return !(*this == o); }

  /// Value at a point; embed_k maps K and embed_gf maps GF(q) constants into L.
  template <class L, class EmbedK, class EmbedGF>
  L eval(const std::vector<L>& point, EmbedK&& embed_k, EmbedGF&& embed_gf) const {
    L den = point.at(0).one();
    for (const auto& [f, e] : den_) {
      L v = point[0].zero();
      for (uint32_t i = 0; i < f.c.size(); ++i)
        if (f.c[i]) v = v + embed_gf(GFElem(gf_, f.c[i])) * point[i];
      if (v.is_zero()) throw DenominatorVanishes();
      den = den * power(v, e);
    }
    return num_.eval(point, embed_k) / den;
  }
  template <class L, class Embed>
  L eval(const std::vector<L>& point, Embed&& embed) const {
    return eval(point, embed, embed);
  }

  std::string to_string() const { return to_string(std::vector<std::string>{}); }
  std::string to_string(const std::vector<std::string>& names) const {
    std::string n = num_.to_string(names);
    if (den_.empty()) return n;
    std::string d;
    for (const auto& [f, e] : den_) {
      std::string fs;
      for (size_t i = 0; i < f.c.size(); ++i) {
        if (!f.c[i]) continue;
        if (!fs.empty()) fs += "+";
        std::string v = i < names.size() ? names[i] : "x" + std::to_string(i + 1);
        fs += f.c[i] == 1 ? v : gf_->format(f.c[i]) + "*" + v;
      }
      if (!d.empty()) d += "*";
      d += "(" + fs + ")";
      if (e > 1) d += "^" + std::to_string(e);
    }
    return "(" + n + ")/" + d;
  }

  static SP form_poly(const FiniteField* gf, const std::vector<uint32_t>& coeffs, const K& proto) {
    const uint32_t m = static_cast<uint32_t>(coeffs.size());
    SP p(m, proto);
    for (uint32_t i = 0; i < m; ++i)
      if (coeffs[i]) p.add_term(SP::unit_key(i), lift_from_gf(proto, GFElem(gf, coeffs[i])));
    return p;
  }

 private:
  static std::optional<uint32_t> as_gf_code(const GFElem& c) { return c.code(); }
  static std::optional<uint32_t> as_gf_code(const RatFunc& c) {
    if (!c.is_constant()) return std::nullopt;
    return c.num()[0].code();
  }

  FactoredRational combine(const FactoredRational& o, bool subtract) const {
    if (o.is_zero()) return *this;
    if (is_zero()) return subtract ? -o : o;
    Den lcm = den_;
    for (const auto& [f, e] : o.den_) {
      auto& slot = lcm[f];
      slot = std::max(slot, e);
    }
    auto lift = [&](const FactoredRational& x) {
      SP n = x.num_;
      for (const auto& [f, e] : lcm) {
        auto it = x.den_.find(f);
        uint32_t have = it == x.den_.end() ? 0 : it->second;
        if (e > have) n = n * form_poly(gf_, f.c, num_.zero_coeff()).pow(e - have);
      }
      return n;
    };
    SP n = subtract ? lift(*this) - lift(o) : lift(*this) + lift(o);
    return FactoredRational(gf_, std::move(n), std::move(lcm));
  }

  void reduce() {
    if (num_.is_zero()) {
      den_.clear();
      return;
    }
    for (auto it = den_.begin(); it != den_.end();) {
      if (it->second == 0) {
        it = den_.erase(it);
        continue;
      }
      SP lf = form_poly(gf_, it->first.c, num_.zero_coeff());
      while (it->second > 0) {
        auto qq = num_.divide_exact(lf);
        if (!qq) break;
        num_ = std::move(*qq);
        --it->second;
      }
      if (it->second == 0)
        it = den_.erase(it);
      else
        ++it;
    }
  }

  const FiniteField* gf_ = nullptr;
  SP num_;
  Den den_;
};

using FR = FactoredRational<GFElem>;

}  // namespace recip
