#pragma once

#include <initializer_list>
#include <span>
#include <stdexcept>

namespace bgl {

// Kleene's strong three-valued logic. The numeric order False < Unknown < True
// makes conjunction and disjunction min and max in the truth order.
enum class TruthValue : unsigned char { False = 0, Unknown = 1, True = 2 };

// Signals a state the monotone semantics can never reach; always a defect.
struct inconsistency_error : std::logic_error {
  using std::logic_error::logic_error;
};

constexpr TruthValue neg(TruthValue v) noexcept {
  switch (v) {
    case TruthValue::True: return TruthValue::False;
    case TruthValue::False: return TruthValue::True;
    default: return TruthValue::Unknown;
  }
}

constexpr TruthValue conj(TruthValue a, TruthValue b) noexcept { return a < b ? a : b; }
constexpr TruthValue disj(TruthValue a, TruthValue b) noexcept { return a < b ? b : a; }

// n-ary folds; the empty conjunction is True, the empty disjunction False.
TruthValue conj(std::span<const TruthValue> vs) noexcept;
TruthValue disj(std::span<const TruthValue> vs) noexcept;
TruthValue conj(std::initializer_list<TruthValue> vs) noexcept;
TruthValue disj(std::initializer_list<TruthValue> vs) noexcept;

// Certainty order: Unknown lies below both True and False, which are unrelated.
constexpr bool leq_certainty(TruthValue a, TruthValue b) noexcept {
  return a == b || a == TruthValue::Unknown;
}

// Least upper bound in the certainty order. True and False have no common
// upper bound; asking for one is a bug, never a recoverable condition.
TruthValue sup(TruthValue a, TruthValue b);

constexpr char glyph(TruthValue v) noexcept {
  switch (v) {
    case TruthValue::True: return '+';
    case TruthValue::False: return '-';
    default: return '~';
  }
}

inline constexpr TruthValue kAllTruthValues[] = {TruthValue::False, TruthValue::Unknown,
                                                 TruthValue::True};

}  // namespace bgl
