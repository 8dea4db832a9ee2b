#pragma once

#include <vector>

#include "bgl/grammar.hpp"
#include "bgl/trivalue.hpp"

namespace bgl {

// Whether a positive or a negative proof of a formula is sought.
enum class Sign : unsigned char { Plus, Minus };

constexpr Sign flip(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }
constexpr char sign_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

// Three-valued behavior on the empty word, precomputed per expression node
// and per concatenation suffix. A property of the grammar alone; the
// automaton closure and the parser's reductions consult it constantly.
class NullabilityMap {
 public:
  TruthValue variable_value(int var) const { return var_[var]; }
  TruthValue value(NodeId id) const { return node_.at(id); }

  // Value of the parts from child index `from` to the end; `from` == arity
  // yields the empty suffix, which is True.
  TruthValue suffix_value(NodeId concat, int from) const;

  // A suffix (or node) matches the empty word positively iff its value is
  // True, negatively iff False; Unknown matches neither sign.
  bool matches_empty(Sign s, NodeId id) const {
    return value(id) == (s == Sign::Plus ? TruthValue::True : TruthValue::False);
  }
  bool suffix_matches_empty(Sign s, NodeId concat, int from) const {
    return suffix_value(concat, from) == (s == Sign::Plus ? TruthValue::True : TruthValue::False);
  }

  int sweeps() const { return sweeps_; }

  friend NullabilityMap compute_nullability(const Grammar& g);

 private:
  std::vector<TruthValue> var_;
  std::vector<TruthValue> node_;
  std::vector<std::vector<TruthValue>> suffix_;  // per node; empty unless concatenation
  int sweeps_ = 0;
};

NullabilityMap compute_nullability(const Grammar& g);

}  // namespace bgl
