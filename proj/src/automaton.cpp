#include "bgl/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace bgl {

namespace {

std::uint64_t item_key(Sign s, NodeId node, int dot) {
  return (static_cast<std::uint64_t>(node) << 20) | (static_cast<std::uint64_t>(dot) << 1) |
         (s == Sign::Minus ? 1u : 0u);
}

}  // namespace

int State::find_item(Sign s, NodeId node, int dot) const {
  auto it = item_index.find(item_key(s, node, dot));
  return it == item_index.end() ? -1 : it->second;
}

int State::find_transition(Label l) const {
  auto it = transition_index.find(l.key());
  return it == transition_index.end() ? -1 : it->second;
}

std::optional<int> Automaton::go(int state, Label l) const {
  int t = states_[state].find_transition(l);
  if (t < 0) return std::nullopt;
  return states_[state].transitions[t].target;
}

namespace {

struct ItemSpec {
  Sign sign;
  NodeId node;
  int dot;
  bool operator<(const ItemSpec& o) const {
    return std::tie(node, dot, sign) < std::tie(o.node, o.dot, o.sign);
  }
  bool operator==(const ItemSpec&) const = default;
};

struct TransitionBuild {
  Label label;
  std::vector<ItemSpec> kernel;
  int target = -1;
  bool optional = false;
};

struct StateBuild {
  std::vector<Item> items;
  std::unordered_map<std::uint64_t, int> item_index;
  std::vector<TransitionBuild> transitions;
  std::unordered_map<std::uint64_t, int> transition_index;

  // Adds or finds an item; records the generating parent for non-concatenation
  // generators. Returns the item's index.
  int add_item(Sign s, NodeId node, int dot, bool kernel, int parent) {
    std::uint64_t key = item_key(s, node, dot);
    auto it = item_index.find(key);
    int idx;
    if (it != item_index.end()) {
      idx = it->second;
    } else {
      idx = static_cast<int>(items.size());
      items.push_back({s, node, dot, kernel, {}});
      item_index.emplace(key, idx);
    }
    if (parent >= 0) {
      auto& ps = items[idx].parents;
      if (std::find(ps.begin(), ps.end(), parent) == ps.end()) ps.push_back(parent);
    }
    return idx;
  }

  TransitionBuild& transition(Label l) {
    auto it = transition_index.find(l.key());
    if (it != transition_index.end()) return transitions[it->second];
    transition_index.emplace(l.key(), static_cast<int>(transitions.size()));
    transitions.push_back({l, {}, false});
    return transitions.back();
  }

  void add_to_transition(Label l, ItemSpec target_item) {
    auto& tr = transition(l);
    if (std::find(tr.kernel.begin(), tr.kernel.end(), target_item) == tr.kernel.end())
      tr.kernel.push_back(target_item);
  }
};

int max_dot(const Grammar& g, NodeId node) {
  const ExprNode& n = g.node(node);
  return n.kind == ExprKind::Concatenation ? static_cast<int>(n.children.size()) : 1;
}

// Saturates a state under the closure rules. Kernel items are fixed before
// the call; everything else is derived from them.
void close_state(const Grammar& g, const NullabilityMap& null, StateBuild& s) {
  for (size_t i = 0; i < s.items.size(); ++i) {
    Sign sign = s.items[i].sign;
    NodeId node = s.items[i].node;
    int dot = s.items[i].dot;
    if (dot == max_dot(g, node)) continue;  // completion items generate nothing
    const ExprNode& n = g.node(node);
    int self = static_cast<int>(i);

    switch (n.kind) {
      case ExprKind::Epsilon:
        // A positive epsilon item is never matched against input.
        if (sign == Sign::Minus)
          s.add_to_transition({sign, node}, {sign, node, 1});
        break;
      case ExprKind::Terminal:
        s.add_to_transition({sign, node}, {sign, node, 1});
        break;
      case ExprKind::Variable:
        s.add_item(sign, g.rule_body(n.var), 0, false, self);
        s.add_to_transition({sign, node}, {sign, node, 1});
        break;
      case ExprKind::Negation:
        s.add_item(flip(sign), n.children.front(), 0, false, self);
        s.add_to_transition({sign, node}, {sign, node, 1});
        break;
      case ExprKind::Disjunction:
      case ExprKind::Conjunction:
        for (NodeId c : n.children) s.add_item(sign, c, 0, false, self);
        s.add_to_transition({sign, node}, {sign, node, 1});
        break;
      case ExprKind::Concatenation: {
        NodeId part = n.children[dot];
        int arity = static_cast<int>(n.children.size());
        s.add_item(sign, part, 0, false, -1);  // the concatenation is not a parent
        s.add_to_transition({sign, part}, {sign, node, dot + 1});
        if (sign == Sign::Plus) {
          bool right_nullable_kernel = false;
          for (const Item& k : s.items)
            if (k.kernel && k.sign == Sign::Plus && k.node == node &&
                null.suffix_matches_empty(Sign::Plus, node, k.dot)) {
              right_nullable_kernel = true;
              break;
            }
          if (null.matches_empty(Sign::Plus, part) &&
              (dot + 1 < arity || right_nullable_kernel))
            s.add_item(sign, node, dot + 1, false, -1);
        } else {
          s.transition({Sign::Minus, part}).optional = true;
          bool kernel_of_same = false;
          for (const Item& k : s.items)
            if (k.kernel && k.sign == Sign::Minus && k.node == node) {
              kernel_of_same = true;
              break;
            }
          if (dot + 1 < arity || kernel_of_same) s.add_item(sign, node, dot + 1, false, -1);
        }
        break;
      }
    }
  }
}

std::string kernel_signature(const std::vector<ItemSpec>& kernel) {
  std::string sig;
  for (const auto& k : kernel) {
    sig += std::to_string(k.node);
    sig.push_back(k.sign == Sign::Plus ? '+' : '-');
    sig += std::to_string(k.dot);
    sig.push_back(';');
  }
  return sig;
}

}  // namespace

Automaton build_automaton(const Grammar& g, NullabilityMap null) {
  Automaton a;
  a.grammar_ = &g;
  a.null_ = std::move(null);

  std::vector<StateBuild> builds;
  std::map<std::string, int> canonical;  // sorted kernel -> state id
  std::deque<int> work;

  auto intern_state = [&](std::vector<ItemSpec> kernel) {
    std::sort(kernel.begin(), kernel.end());
    std::string sig = kernel_signature(kernel);
    auto it = canonical.find(sig);
    if (it != canonical.end()) return it->second;
    int id = static_cast<int>(builds.size());
    canonical.emplace(sig, id);
    builds.emplace_back();
    for (const auto& k : kernel) builds[id].add_item(k.sign, k.node, k.dot, true, -1);
    work.push_back(id);
    return id;
  };

  intern_state({});  // the initial state has an empty kernel
  builds[0].add_item(Sign::Plus, g.start_node(), 0, false, -1);
  builds[0].add_item(Sign::Minus, g.start_node(), 0, false, -1);

  while (!work.empty()) {
    int id = work.front();
    work.pop_front();
    close_state(g, a.null_, builds[id]);
    for (auto& tr : builds[id].transitions) tr.label.node >= 0 ? void() : void();
    for (size_t t = 0; t < builds[id].transitions.size(); ++t) {
      // intern_state may reallocate `builds`; reindex on every round.
      std::vector<ItemSpec> kernel = builds[id].transitions[t].kernel;
      int target = intern_state(std::move(kernel));
      builds[id].transitions[t].kernel.clear();
      builds[id].transitions[t].kernel.push_back({Sign::Plus, target, 0});  // stash target
    }
  }

  a.states_.resize(builds.size());
  int base = 0;
  for (size_t id = 0; id < builds.size(); ++id) {
    State& st = a.states_[id];
    st.id = static_cast<int>(id);
    st.item_base = base;
    st.items = std::move(builds[id].items);
    st.item_index = std::move(builds[id].item_index);
    base += static_cast<int>(st.items.size());
    for (size_t t = 0; t < builds[id].transitions.size(); ++t) {
      const auto& tb = builds[id].transitions[t];
      st.transitions.push_back({tb.label, tb.kernel.front().node, tb.optional});
      st.transition_index.emplace(tb.label.key(), static_cast<int>(t));
    }
  }
  a.total_items_ = base;

  // Parser-facing precomputation.
  for (State& st : a.states_) {
    for (size_t i = 0; i < st.items.size(); ++i) {
      const Item& it = st.items[i];
      if (!it.kernel || it.dot < 1) continue;
      const ExprNode& n = g.node(it.node);
      if (n.kind != ExprKind::Concatenation) continue;
      State::KernelConcat kc;
      kc.item = static_cast<int>(i);
      kc.sign = it.sign;
      kc.node = it.node;
      kc.dot = it.dot;
      kc.pred = {it.sign, n.children[it.dot - 1]};
      kc.suffix_pos_nullable = a.null_.suffix_matches_empty(Sign::Plus, it.node, it.dot);
      kc.suffix_neg_nullable = a.null_.suffix_matches_empty(Sign::Minus, it.node, it.dot);
      st.kernel_concats.push_back(kc);
    }
    for (size_t t = 0; t < st.transitions.size(); ++t) {
      const Transition& tr = st.transitions[t];
      const ExprNode& n = g.node(tr.label.node);
      bool shiftable = n.kind == ExprKind::Terminal ||
                       (n.kind == ExprKind::Epsilon && tr.label.sign == Sign::Minus);
      if (shiftable) st.terminal_transitions.push_back(static_cast<int>(t));
      if (tr.optional) st.optional_transitions.push_back(static_cast<int>(t));
    }
  }

  if (auto t = a.go(0, {Sign::Plus, g.start_node()})) a.plus_accept_ = *t;
  if (auto t = a.go(0, {Sign::Minus, g.start_node()})) a.minus_accept_ = *t;
  return a;
}

std::string label_to_string(const Grammar& g, Label l) {
  if (l.is_wildcard()) return "*";
  std::string s(1, sign_char(l.sign));
  return s + pretty(g, l.node);
}

std::string item_to_string(const Grammar& g, const Item& item) {
  const ExprNode& n = g.node(item.node);
  std::string out(1, sign_char(item.sign));
  out.push_back(' ');
  if (n.kind == ExprKind::Concatenation) {
    for (size_t i = 0; i < n.children.size(); ++i) {
      if (static_cast<int>(i) == item.dot) out += ". ";
      out += pretty(g, n.children[i]);
      if (i + 1 < n.children.size()) out.push_back(' ');
    }
    if (item.dot == static_cast<int>(n.children.size())) out += " .";
  } else {
    if (item.dot == 0) out.push_back('.');
    out += pretty(g, item.node);
    if (item.dot == 1) out.push_back('.');
  }
  return out;
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string automaton_to_dot(const Automaton& a) {
  const Grammar& g = a.grammar();
  std::ostringstream os;
  os << "digraph automaton {\n  rankdir=LR;\n  node [shape=box, fontname=\"monospace\"];\n";
  for (const State& st : a.states()) {
    os << "  s" << st.id << " [label=\"s" << st.id;
    for (const Item& it : st.items) {
      os << "\\n" << dot_escape(item_to_string(g, it));
      if (it.kernel) os << " [k]";
    }
    os << "\"];\n";
  }
  for (const State& st : a.states()) {
    for (const Transition& tr : st.transitions) {
      os << "  s" << st.id << " -> s" << tr.target << " [label=\""
         << dot_escape(label_to_string(g, tr.label)) << "\"";
      if (tr.optional) os << ", style=dashed";
      os << "];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace bgl
