#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bgl/grammar.hpp"
#include "bgl/nullability.hpp"

namespace bgl {

// A transition or GSS edge label: a signed formula node, or the wildcard
// standing for an arbitrary nonempty skipped segment.
struct Label {
  static constexpr NodeId kWildcardNode = -2;

  Sign sign = Sign::Plus;
  NodeId node = kNoNode;

  static Label wildcard() { return {Sign::Minus, kWildcardNode}; }
  bool is_wildcard() const { return node == kWildcardNode; }
  bool positive() const { return sign == Sign::Plus && !is_wildcard(); }

  std::uint64_t key() const {
    return is_wildcard() ? 1u
                         : (static_cast<std::uint64_t>(node) << 2) |
                               (sign == Sign::Minus ? 2u : 0u) | 4u;
  }
  bool operator==(const Label&) const = default;
};

// A signed dotted formula. The dot ranges 0..n for n-ary concatenations and
// 0..1 for everything else. Parents are the non-concatenation items of the
// same state whose closure produced this item.
struct Item {
  Sign sign = Sign::Plus;
  NodeId node = kNoNode;
  int dot = 0;
  bool kernel = false;
  std::vector<int> parents;  // indices into the owning state's item list
};

struct Transition {
  Label label;
  int target = -1;
  bool optional = false;  // negative-concatenation component; shiftable as wildcard
};

struct State {
  int id = 0;
  int item_base = 0;  // offset of this state's items in the global numbering
  std::vector<Item> items;
  std::vector<Transition> transitions;

  // Kernel concatenation items with the dot past at least one part, ready for
  // the reducer's scans. pred is the label of the part just before the dot.
  struct KernelConcat {
    int item = 0;
    Sign sign = Sign::Plus;
    NodeId node = kNoNode;
    int dot = 0;
    Label pred;
    bool suffix_pos_nullable = false;
    bool suffix_neg_nullable = false;
  };
  std::vector<KernelConcat> kernel_concats;
  std::vector<int> terminal_transitions;  // transitions on +c, -c, -eps
  std::vector<int> optional_transitions;

  int find_item(Sign s, NodeId node, int dot) const;
  int find_transition(Label l) const;

  std::unordered_map<std::uint64_t, int> item_index;
  std::unordered_map<std::uint64_t, int> transition_index;
};

class Automaton {
 public:
  const Grammar& grammar() const { return *grammar_; }
  const NullabilityMap& nullability() const { return null_; }
  const std::vector<State>& states() const { return states_; }
  const State& state(int id) const { return states_[id]; }
  int initial() const { return 0; }
  int total_items() const { return total_items_; }

  std::optional<int> go(int state, Label l) const;

  // States holding the start symbol's completion items, if reachable.
  int plus_accept() const { return plus_accept_; }
  int minus_accept() const { return minus_accept_; }

  friend Automaton build_automaton(const Grammar& g, NullabilityMap null);

 private:
  const Grammar* grammar_ = nullptr;
  NullabilityMap null_;
  std::vector<State> states_;
  int total_items_ = 0;
  int plus_accept_ = -1;
  int minus_accept_ = -1;
};

// Breadth-first construction of the canonical state set from the initial
// state; deterministic for a fixed grammar.
Automaton build_automaton(const Grammar& g, NullabilityMap null);

std::string item_to_string(const Grammar& g, const Item& item);
std::string label_to_string(const Grammar& g, Label l);
std::string automaton_to_dot(const Automaton& a);

}  // namespace bgl
