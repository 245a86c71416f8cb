#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "recip/module_space.hpp"
#include "recip/ratfunc.hpp"

namespace recip {

/// Multiset of nonzero element indices, sorted; the generator [1/v] for each.
using Monomial = std::vector<uint32_t>;

/// Homogeneous combination of monomials with coefficients in F_q(t); the
/// plain case uses constant coefficients.  Zero coefficients are never stored.
using LinComb = std::map<Monomial, RatFunc>;

inline RatFunc rf_one(const ModuleSpace& V) { return RatFunc::constant(GFElem(V.gf(), 1)); }
inline RatFunc rf_const(const ModuleSpace& V, uint32_t code) { return RatFunc::constant(GFElem(V.gf(), code)); }

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial m;
  m.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(m));
  return m;
}

inline void lc_add_term(LinComb& x, const Monomial& m, const RatFunc& c) {
  if (c.is_zero()) return;
  auto it = x.find(m);
  if (it == x.end()) {
    x.emplace(m, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) x.erase(it);
}

inline LinComb lc_term(const Monomial& m, const RatFunc& c) {
  LinComb x;
  lc_add_term(x, m, c);
  return x;
}

/// [1/v].
inline LinComb lc_gen(const ModuleSpace& V, ModElem v) {
  if (v.index == 0) throw Error("[1/0] is not a generator");
  return lc_term({v.index}, rf_one(V));
}

/// The unit 1 (empty monomial).
inline LinComb lc_one(const ModuleSpace& V) { return lc_term({}, rf_one(V)); }

inline LinComb lc_add(LinComb a, const LinComb& b) {
  for (const auto& [m, c] : b) lc_add_term(a, m, c);
  return a;
}

inline LinComb lc_scale(const LinComb& a, const RatFunc& s) {
  LinComb out;
  if (s.is_zero()) return out;
  for (const auto& [m, c] : a) out.emplace(m, c * s);
  return out;
}

inline LinComb lc_sub(LinComb a, const LinComb& b) {
  for (const auto& [m, c] : b) lc_add_term(a, m, -c);
  return a;
}

inline LinComb lc_mul(const LinComb& a, const LinComb& b) {
  LinComb out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) lc_add_term(out, mono_mul(ma, mb), ca * cb);
  return out;
}

/// Degree of a homogeneous combination; -1 for 0.
inline int lc_degree(const LinComb& x) { return x.empty() ? -1 : static_cast<int>(x.begin()->first.size()); }

/// Ring homomorphism given on generators: img(v) is a combination of degree 1
/// in the target, or nullopt for 0.  Results are cached per generator.
inline LinComb lc_substitute(const LinComb& x, const std::function<std::optional<LinComb>(uint32_t)>& img) {
  std::map<uint32_t, std::optional<LinComb>> cache;
  auto gen = [&](uint32_t v) -> const std::optional<LinComb>& {
    auto it = cache.find(v);
    if (it == cache.end()) it = cache.emplace(v, img(v)).first;
    return it->second;
  };
  LinComb out;
  for (const auto& [m, c] : x) {
    std::optional<LinComb> acc = lc_term({}, c);
    for (uint32_t v : m) {
      const auto& g = gen(v);
      if (!g) {
        acc.reset();
        break;
      }
      acc = lc_mul(*acc, *g);
    }
    if (acc) out = lc_add(std::move(out), *acc);
  }
  return out;
}

/// Generator-wise relabelling v -> map[v] (0 kills the monomial).
inline LinComb lc_relabel(const LinComb& x, const std::vector<uint32_t>& map) {
  LinComb out;
  for (const auto& [m, c] : x) {
    Monomial mm;
    mm.reserve(m.size());
    bool dead = false;
    for (uint32_t v : m) {
      if (map[v] == 0) {
        dead = true;
        break;
      }
      mm.push_back(map[v]);
    }
    if (dead) continue;
    std::sort(mm.begin(), mm.end());
    lc_add_term(out, mm, c);
  }
  return out;
}

/// All multisets of size d of nonzero elements, in lexicographic order.
inline std::vector<Monomial> monomials(const ModuleSpace& V, uint32_t d) {
  std::vector<Monomial> out;
  if (V.size() <= 1) {
    if (d == 0) out.push_back({});
    return out;
  }
  Monomial m(d, 1);
  while (true) {
    out.push_back(m);
    int i = static_cast<int>(d) - 1;
    while (i >= 0 && m[i] == V.size() - 1) --i;
    if (i < 0) break;
    const uint32_t v = m[i] + 1;
    for (uint32_t j = i; j < d; ++j) m[j] = v;
  }
  return out;
}

/// Evaluates x under an assignment of values to generators.
template <class K, class CoeffMap>
K lc_evaluate(const LinComb& x, const std::vector<K>& values, const K& zero, CoeffMap&& coeff) {
  K acc = zero;
  for (const auto& [m, c] : x) {
    K term = coeff(c);
    for (uint32_t v : m) term = term * values[v];
    acc = acc + term;
  }
  return acc;
}

inline std::string lc_to_string(const ModuleSpace& V, const LinComb& x) {
  if (x.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : x) {
    if (!s.empty()) s += " + ";
    std::string cs = c.to_string();
    if (cs != "1") s += "(" + cs + ")*";
    if (m.empty()) {
      s += "1";
      continue;
    }
    s += "[1/(";
    for (size_t i = 0; i < m.size(); ++i) {
      if (i) s += " * ";
      s += V.format({m[i]});
    }
    s += ")]";
  }
  return s;
}

}  // namespace recip
