#pragma once

#include "recip/extension.hpp"
#include "recip/factored_rational.hpp"
#include "recip/gf.hpp"
#include "recip/ratfunc.hpp"
#include "recip/transcendental.hpp"

namespace recip {

/// The image of c in GF(q) inside the ring of proto (which must contain GF(q)).
inline GFElem lift_scalar(const GFElem& proto, const GFElem& c) {
  if (proto.field() == c.field()) return c;
  return GFElem(proto.field(), proto.field()->embedding_from(*c.field())[c.code()]);
}
inline RatFunc lift_scalar(const RatFunc& proto, const GFElem& c) {
  return RatFunc::constant(lift_scalar(proto.num().zero_coeff(), c));
}
template <class K>
FactoredRational<K> lift_scalar(const FactoredRational<K>& proto, const GFElem& c) {
  return FactoredRational<K>::constant(proto.gf(), proto.nvars(), lift_scalar(proto.num().zero_coeff(), c));
}
template <class K>
ExtElem<K> lift_scalar(const ExtElem<K>& proto, const GFElem& c) {
  return proto.context()->from_base(lift_scalar(proto.rep().zero_coeff(), c));
}
template <class K>
TransElem<K> lift_scalar(const TransElem<K>& proto, const GFElem& c) {
  return proto.context()->from_base(lift_scalar(proto.context()->base_zero(), c));
}

/// Uniform element; deterministic given the generator state.
inline GFElem sample(const FiniteField* f, Rng& rng) { return GFElem(f, f->sample(rng)); }
/// F_q(t) has no uniform distribution.
inline RatFunc sample(const RatFunc&, Rng&) { throw InfiniteField(); }

}  // namespace recip
