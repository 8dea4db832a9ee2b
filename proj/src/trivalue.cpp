#include "bgl/trivalue.hpp"

namespace bgl {

TruthValue conj(std::span<const TruthValue> vs) noexcept {
  TruthValue acc = TruthValue::True;
  for (TruthValue v : vs) acc = conj(acc, v);
  return acc;
}

TruthValue disj(std::span<const TruthValue> vs) noexcept {
  TruthValue acc = TruthValue::False;
  for (TruthValue v : vs) acc = disj(acc, v);
  return acc;
}

TruthValue conj(std::initializer_list<TruthValue> vs) noexcept {
  return conj(std::span<const TruthValue>(vs.begin(), vs.size()));
}

TruthValue disj(std::initializer_list<TruthValue> vs) noexcept {
  return disj(std::span<const TruthValue>(vs.begin(), vs.size()));
}

TruthValue sup(TruthValue a, TruthValue b) {
  if (a == b) return a;
  if (a == TruthValue::Unknown) return b;
  if (b == TruthValue::Unknown) return a;
  throw inconsistency_error("sup of incomparable truth values (+ with -)");
}

}  // namespace bgl
