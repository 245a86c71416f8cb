#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "recip/factored_rational.hpp"
#include "recip/lincomb.hpp"
#include "recip/rng.hpp"
#include "recip/sparse_poly.hpp"

namespace recip {

struct EngineConfig {
  enum class Mode { Probabilistic, Exact };
  Mode mode = Mode::Probabilistic;
  uint64_t seed = 20240601;
  uint32_t trials = 3;
  /// Extension degree over F_q of the evaluation field; 0 picks the least m
  /// with q^m >= 2^20.
  uint32_t ext_m = 0;
  uint32_t margin = 8;
  /// Escalation stops before the evaluation field exceeds this order.
  uint64_t max_order = uint64_t(1) << 23;
};

inline const char* mode_name(EngineConfig::Mode m) { return m == EngineConfig::Mode::Exact ? "exact" : "probabilistic"; }

/// Running totals over all engine calls that received this object.
struct EngineStats {
  uint64_t calls = 0;
  uint64_t vectors = 0;
  uint64_t points = 0;       ///< evaluation columns, summed over trials
  uint32_t max_ext_m = 0;    ///< largest extension degree used
  uint32_t escalations = 0;
  double max_trial_bound = 0;  ///< worst Schwartz-Zippel bound of a single trial

  void merge(const EngineStats& o) {
    calls += o.calls;
    vectors += o.vectors;
    points += o.points;
    max_ext_m = std::max(max_ext_m, o.max_ext_m);
    escalations += o.escalations;
    max_trial_bound = std::max(max_trial_bound, o.max_trial_bound);
  }
};

/// A vector of the direct sum of graded pieces, one LinComb per block.
struct BlockVec {
  std::vector<std::pair<uint32_t, LinComb>> parts;
};

inline BlockVec block_vec(LinComb x, uint32_t block = 0) {
  BlockVec b;
  b.parts.emplace_back(block, std::move(x));
  return b;
}

/// Ordered groups of vectors; the engine reports the rank of the union of
/// the first g groups for every g.
struct RankProblem {
  std::vector<ModuleSpace> blocks;
  std::vector<std::vector<BlockVec>> groups;
};

namespace detail {

inline uint64_t sat_binom(uint64_t n, uint64_t k, uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  long double r = 1;
  for (uint64_t i = 1; i <= k; ++i) {
    r = r * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    if (r > static_cast<long double>(cap)) return cap;
  }
  return static_cast<uint64_t>(std::llround(r));
}

inline uint64_t line_count(const ModuleSpace& V) { return V.q() > 1 ? (V.size() - 1) / (V.q() - 1) : 0; }

/// Per-block dimension bound and the number of vectors touching each block.
struct BlockShape {
  std::vector<uint64_t> touching, degree, bound;
  uint32_t t_degree = 0;
};

inline BlockShape block_shape(const RankProblem& pb) {
  BlockShape s;
  const size_t nb = pb.blocks.size();
  s.touching.assign(nb, 0);
  s.degree.assign(nb, 0);
  s.bound.assign(nb, 0);
  for (const auto& g : pb.groups)
    for (const auto& v : g)
      for (const auto& [b, x] : v.parts) {
        if (b >= nb) throw Error("block index out of range");
        ++s.touching[b];
        for (const auto& [m, c] : x) {
          s.degree[b] = std::max<uint64_t>(s.degree[b], m.size());
          s.t_degree = std::max<uint32_t>(s.t_degree, std::max(c.num().degree(), c.den().degree()));
        }
      }
  for (size_t b = 0; b < nb; ++b) {
    const uint64_t L = line_count(pb.blocks[b]);
    const uint64_t d = s.degree[b];
    const uint64_t lines_bound = L == 0 ? 1 : sat_binom(L + d - 1, d, uint64_t(1) << 40);
    s.bound[b] = std::min(s.touching[b], lines_bound);
  }
  return s;
}

/// Row echelon form over a finite field with rows kept as logarithms.
class LogEchelon {
 public:
  using Log = FiniteField::Log;
  LogEchelon(const FiniteField& f, size_t ncols) : f_(f), ncols_(ncols) {}

  size_t rank() const { return rows_.size(); }

  bool insert(std::vector<Log> row) {
    constexpr Log Z = FiniteField::kZeroLog;
    for (size_t i = 0; i < rows_.size(); ++i) {
      const Log c = row[piv_[i]];
      if (c == Z) continue;
      const Log nc = f_.lneg(c);
      const auto& pr = rows_[i];
      for (size_t k = 0; k < ncols_; ++k)
        if (pr[k] != Z) row[k] = f_.ladd(row[k], f_.lmul(nc, pr[k]));
    }
    size_t p = 0;
    while (p < ncols_ && row[p] == Z) ++p;
    if (p == ncols_) return false;
    const Log inv = f_.linv(row[p]);
    for (size_t k = p; k < ncols_; ++k) row[k] = f_.lmul(row[k], inv);
    rows_.push_back(std::move(row));
    piv_.push_back(p);
    return true;
  }

 private:
  const FiniteField& f_;
  size_t ncols_;
  std::vector<std::vector<Log>> rows_;
  std::vector<size_t> piv_;
};

/// One probabilistic trial: cumulative ranks, or empty if t0 hit a pole.
inline std::vector<uint64_t> prob_trial(const RankProblem& pb, const BlockShape& sh, const FiniteField& F,
                                        uint32_t margin, uint64_t seed, uint64_t trial, EngineStats& st) {
  using Log = FiniteField::Log;
  constexpr Log Z = FiniteField::kZeroLog;
  const size_t nb = pb.blocks.size();
  const uint32_t qm1 = static_cast<uint32_t>(F.q() - 1);

  // Column layout.
  std::vector<size_t> npts(nb), off(nb + 1, 0);
  for (size_t b = 0; b < nb; ++b) {
    npts[b] = sh.touching[b] ? sh.bound[b] + margin : 0;
    off[b + 1] = off[b] + npts[b];
  }
  const size_t ncols = off[nb];
  st.points += ncols;

  // inv_log[b][j * size + idx] = log(1 / l_idx(point j)).
  std::vector<std::vector<Log>> inv_log(nb);
  for (size_t b = 0; b < nb; ++b) {
    const ModuleSpace& W = pb.blocks[b];
    if (!npts[b]) continue;
    const std::vector<uint32_t> emb = F.embedding_from(W.field());
    inv_log[b].assign(npts[b] * W.size(), Z);
    std::vector<FiniteField::Code> ell(W.size());
    for (size_t j = 0; j < npts[b]; ++j) {
      Rng rng = derive_rng(seed, (trial << 32) | (b + 1), j);
      bool ok = false;
      while (!ok) {
        std::vector<FiniteField::Code> x(W.dim());
        for (auto& c : x) c = F.sample(rng);
        ell[0] = 0;
        ok = true;
        for (uint32_t idx = 1; idx < W.size(); ++idx) {
          uint32_t jj = 0, y = idx;
          while (y % W.q() == 0) {
            y /= W.q();
            ++jj;
          }
          const uint32_t c = y % W.q();
          ell[idx] = F.add(ell[idx - c * W.unit(jj).index], F.mul(emb[c], x[jj]));
          if (ell[idx] == 0) {
            ok = false;
            break;
          }
        }
      }
      Log* dst = &inv_log[b][j * W.size()];
      for (uint32_t idx = 1; idx < W.size(); ++idx) dst[idx] = F.linv(F.to_log(ell[idx]));
    }
  }

  // t0, shared by every block and point.
  Rng trng = derive_rng(seed, (trial << 32), 0);
  FiniteField::Code t0 = 0;
  while (t0 == 0) t0 = F.sample(trng);
  const FiniteField* gfq = pb.blocks.empty() ? nullptr : pb.blocks[0].gf();
  const std::vector<uint32_t> emb_q = gfq ? F.embedding_from(*gfq) : std::vector<uint32_t>{};
  const GFElem t0e(&F, t0);
  auto coeff_log = [&](const RatFunc& c) -> Log {
    GFElem v = c.eval(t0e, [&](const GFElem& a) { return GFElem(&F, emb_q[a.code()]); });
    return F.to_log(v.code());
  };

  LogEchelon ech(F, ncols);
  std::vector<uint64_t> out;
  std::vector<Log> row;
  for (const auto& g : pb.groups) {
    for (const auto& vec : g) {
      row.assign(ncols, Z);
      for (const auto& [b, x] : vec.parts) {
        const uint32_t sz = pb.blocks[b].size();
        for (const auto& [m, c] : x) {
          const Log cl = coeff_log(c);
          if (cl == Z) continue;
          for (size_t j = 0; j < npts[b]; ++j) {
            const Log* il = &inv_log[b][j * sz];
            uint64_t s = cl;
            for (uint32_t v : m) s += il[v];
            row[off[b] + j] = F.ladd(row[off[b] + j], static_cast<Log>(s % qm1));
          }
        }
      }
      ech.insert(std::move(row));
    }
    out.push_back(ech.rank());
  }
  return out;
}

inline uint32_t default_ext_m(uint32_t q) {
  uint32_t m = 1;
  uint64_t qm = q;
  while (qm < (uint64_t(1) << 20)) {
    qm *= q;
    ++m;
  }
  return m;
}

inline std::vector<uint64_t> prob_ranks(const RankProblem& pb, const EngineConfig& cfg, EngineStats& st) {
  const FiniteField& gf = pb.blocks.front().field();
  const uint32_t p = gf.p(), e = gf.e();
  uint32_t m = cfg.ext_m ? cfg.ext_m : default_ext_m(static_cast<uint32_t>(gf.q()));
  for (const auto& W : pb.blocks)
    if (m < W.dim()) throw Error("evaluation field GF(q^" + std::to_string(m) + ") is too small for " + std::to_string(W.dim()) + " variables");
  const BlockShape sh = block_shape(pb);
  auto order_of = [&](uint32_t mm) {
    long double o = std::pow(static_cast<long double>(p), static_cast<long double>(mm) * e);
    return o;
  };
  if (order_of(m) > static_cast<long double>(FiniteField::kMaxOrder))
    throw Error("evaluation field GF(q^" + std::to_string(m) + ") exceeds the table limit");
  uint64_t trial_ctr = 0;
  while (true) {
    auto F = FiniteField::create(p, m * e);
    st.max_ext_m = std::max(st.max_ext_m, m);
    long double bound = 0;
    for (size_t b = 0; b < pb.blocks.size(); ++b)
      bound += static_cast<long double>(sh.bound[b]) *
               static_cast<long double>(sh.degree[b] * detail::line_count(pb.blocks[b]) + sh.t_degree);
    st.max_trial_bound = std::max(st.max_trial_bound, static_cast<double>(std::min<long double>(1, bound / F->q())));
    std::vector<std::vector<uint64_t>> res;
    for (uint32_t tr = 0; tr < std::max<uint32_t>(cfg.trials, 1); ++tr) {
      std::vector<uint64_t> r;
      for (int attempt = 0; attempt < 16 && r.empty(); ++attempt) {
        try {
          r = prob_trial(pb, sh, *F, cfg.margin, cfg.seed, ++trial_ctr, st);
        } catch (const DenominatorVanishes&) {
        }
      }
      if (r.empty()) throw EngineDisagreement("coefficients have a pole at every sampled t");
      res.push_back(std::move(r));
    }
    bool agree = true;
    for (const auto& r : res) agree = agree && r == res.front();
    if (agree) return res.front();
    if (order_of(m + 1) > static_cast<long double>(std::min<uint64_t>(cfg.max_order, FiniteField::kMaxOrder)))
      throw EngineDisagreement("rank trials disagree at the escalation cap GF(q^" + std::to_string(m) + ")");
    ++m;
    ++st.escalations;
  }
}

/// Exact elimination: each block is cleared by a common product of line
/// powers, so a degree-d combination becomes a polynomial in the
/// coordinates with F_q(t) coefficients.
inline std::vector<uint64_t> exact_ranks(const RankProblem& pb) {
  const size_t nb = pb.blocks.size();
  using SP = SparsePoly<GFElem>;
  using Key = std::pair<uint32_t, SP::Key>;
  struct BlockData {
    std::vector<uint32_t> line_of;
    std::vector<FiniteField::Code> lead_inv;
    std::vector<SP> line_poly;
    std::vector<uint32_t> max_mult;
    std::map<Monomial, SP> cache;
  };
  std::vector<BlockData> bd(nb);
  for (size_t b = 0; b < nb; ++b) {
    const ModuleSpace& W = pb.blocks[b];
    const FiniteField& f = W.field();
    BlockData& d = bd[b];
    d.line_of.assign(W.size(), 0);
    d.lead_inv.assign(W.size(), 0);
    std::map<LinearForm, uint32_t> ids;
    for (uint32_t idx = 1; idx < W.size(); ++idx) {
      std::vector<uint32_t> c(W.dim());
      for (uint32_t j = 0; j < W.dim(); ++j) c[j] = W.coord({idx}, j);
      ScaledForm sf = canonical_form(f, c);
      auto [it, fresh] = ids.emplace(sf.form, static_cast<uint32_t>(ids.size()));
      if (fresh) {
        SP lp(W.dim(), GFElem(W.gf(), 0));
        for (uint32_t j = 0; j < W.dim(); ++j)
          if (sf.form.c[j]) lp.add_term(SP::unit_key(j), GFElem(W.gf(), sf.form.c[j]));
        d.line_poly.push_back(std::move(lp));
      }
      d.line_of[idx] = it->second;
      d.lead_inv[idx] = f.inv(sf.scalar);
    }
    d.max_mult.assign(d.line_poly.size(), 0);
  }
  auto mults = [&](const BlockData& d, const Monomial& m) {
    std::vector<uint32_t> mu(d.line_poly.size(), 0);
    for (uint32_t v : m) ++mu[d.line_of[v]];
    return mu;
  };
  for (const auto& g : pb.groups)
    for (const auto& vec : g)
      for (const auto& [b, x] : vec.parts)
        for (const auto& [m, c] : x) {
          auto mu = mults(bd[b], m);
          for (size_t l = 0; l < mu.size(); ++l) bd[b].max_mult[l] = std::max(bd[b].max_mult[l], mu[l]);
        }
  auto numerator = [&](uint32_t b, const Monomial& m) -> const SP& {
    BlockData& d = bd[b];
    auto it = d.cache.find(m);
    if (it != d.cache.end()) return it->second;
    const ModuleSpace& W = pb.blocks[b];
    FiniteField::Code s = 1;
    for (uint32_t v : m) s = W.field().mul(s, d.lead_inv[v]);
    SP acc = SP::constant(W.dim(), GFElem(W.gf(), s));
    auto mu = mults(d, m);
    for (size_t l = 0; l < mu.size(); ++l)
      if (d.max_mult[l] > mu[l]) acc = acc * d.line_poly[l].pow(d.max_mult[l] - mu[l]);
    return d.cache.emplace(m, std::move(acc)).first->second;
  };

  using Row = std::map<Key, RatFunc, std::greater<Key>>;
  std::map<Key, Row, std::greater<Key>> pivots;
  std::vector<uint64_t> out;
  for (const auto& g : pb.groups) {
    for (const auto& vec : g) {
      Row row;
      for (const auto& [b, x] : vec.parts)
        for (const auto& [m, c] : x)
          for (const auto& [k, a] : numerator(b, m).terms()) {
            Key key{b, k};
            RatFunc add = c * RatFunc::constant(a);
            auto it = row.find(key);
            if (it == row.end()) row.emplace(key, add);
            else {
              it->second = it->second + add;
              if (it->second.is_zero()) row.erase(it);
            }
          }
      while (!row.empty()) {
        auto lead = row.begin();
        auto pv = pivots.find(lead->first);
        if (pv == pivots.end()) {
          const RatFunc inv = lead->second.inv();
          for (auto& [k, v] : row) v = v * inv;
          const Key lk = lead->first;
          pivots.emplace(lk, std::move(row));
          break;
        }
        const RatFunc factor = lead->second;
        for (const auto& [k, v] : pv->second) {
          auto it = row.find(k);
          RatFunc nv = (it == row.end() ? factor.zero() : it->second) - factor * v;
          if (nv.is_zero()) {
            if (it != row.end()) row.erase(it);
          } else if (it == row.end()) {
            row.emplace(k, nv);
          } else {
            it->second = nv;
          }
        }
      }
    }
    out.push_back(pivots.size());
  }
  return out;
}

}  // namespace detail

/// Rank of the union of the first g groups, for g = 1..groups.size().
inline std::vector<uint64_t> cumulative_ranks(const RankProblem& pb, const EngineConfig& cfg, EngineStats* stats = nullptr) {
  EngineStats local;
  EngineStats& st = stats ? *stats : local;
  ++st.calls;
  for (const auto& g : pb.groups) st.vectors += g.size();
  if (pb.blocks.empty()) return std::vector<uint64_t>(pb.groups.size(), 0);
  for (const auto& W : pb.blocks)
    if (W.gf() != pb.blocks.front().gf()) throw Error("all blocks must share the base field");
  if (cfg.mode == EngineConfig::Mode::Exact) return detail::exact_ranks(pb);
  return detail::prob_ranks(pb, cfg, st);
}

inline uint64_t rank_of(const ModuleSpace& V, const std::vector<LinComb>& vecs, const EngineConfig& cfg,
                        EngineStats* stats = nullptr) {
  RankProblem pb{{V}, {{}}};
  for (const auto& x : vecs) pb.groups[0].push_back(block_vec(x));
  return cumulative_ranks(pb, cfg, stats).back();
}

/// rank(base + extra) - rank(base): the dimension of span(extra) modulo span(base).
inline uint64_t rank_modulo(const ModuleSpace& V, const std::vector<LinComb>& base, const std::vector<LinComb>& extra,
                            const EngineConfig& cfg, EngineStats* stats = nullptr) {
  RankProblem pb{{V}, {{}, {}}};
  for (const auto& x : base) pb.groups[0].push_back(block_vec(x));
  for (const auto& x : extra) pb.groups[1].push_back(block_vec(x));
  auto r = cumulative_ranks(pb, cfg, stats);
  return r[1] - r[0];
}

}  // namespace recip
