#include "bgl/nullability.hpp"

namespace bgl {

namespace {

// Value of an expression on the empty word, under the given variable values.
// Concatenation admits only the all-empty partition, hence the conjunction.
TruthValue eval_empty(const Grammar& g, NodeId id, const std::vector<TruthValue>& vars) {
  const ExprNode& n = g.node(id);
  switch (n.kind) {
    case ExprKind::Epsilon: return TruthValue::True;
    case ExprKind::Terminal: return TruthValue::False;
    case ExprKind::Variable: return vars[n.var];
    case ExprKind::Negation: return neg(eval_empty(g, n.children.front(), vars));
    case ExprKind::Disjunction: {
      TruthValue acc = TruthValue::False;
      for (NodeId c : n.children) acc = disj(acc, eval_empty(g, c, vars));
      return acc;
    }
    case ExprKind::Conjunction:
    case ExprKind::Concatenation: {
      TruthValue acc = TruthValue::True;
      for (NodeId c : n.children) acc = conj(acc, eval_empty(g, c, vars));
      return acc;
    }
  }
  return TruthValue::Unknown;
}

}  // namespace

TruthValue NullabilityMap::suffix_value(NodeId concat, int from) const {
  const auto& sv = suffix_.at(concat);
  if (from < 0 || from > static_cast<int>(sv.size()))
    throw std::out_of_range("concatenation suffix index out of range");
  return from == static_cast<int>(sv.size()) ? TruthValue::True : sv[from];
}

NullabilityMap compute_nullability(const Grammar& g) {
  NullabilityMap m;
  int nv = static_cast<int>(g.variables().size());
  m.var_.assign(nv, TruthValue::Unknown);

  // The fixpoint settles within |V| sweeps; the doubled bound is pure defect
  // detection, mirroring the full oracle.
  int max_sweeps = 2 * nv + 2;
  for (int sweep = 1;; ++sweep) {
    if (sweep > max_sweeps)
      throw inconsistency_error("nullability iteration exceeded its convergence bound");
    std::vector<TruthValue> next(nv);
    for (int v = 0; v < nv; ++v) next[v] = eval_empty(g, g.rule_body(v), m.var_);
    for (int v = 0; v < nv; ++v)
      if (!leq_certainty(m.var_[v], next[v]))
        throw inconsistency_error("nullability iteration retracted a settled value");
    m.sweeps_ = sweep;
    bool stable = next == m.var_;
    m.var_ = std::move(next);
    if (stable) break;
  }

  m.node_.resize(g.node_count());
  m.suffix_.resize(g.node_count());
  for (NodeId id = 0; id < g.node_count(); ++id) m.node_[id] = eval_empty(g, id, m.var_);
  for (NodeId id = 0; id < g.node_count(); ++id) {
    const ExprNode& n = g.node(id);
    if (n.kind != ExprKind::Concatenation) continue;
    int arity = static_cast<int>(n.children.size());
    auto& sv = m.suffix_[id];
    sv.assign(arity, TruthValue::True);
    for (int r = arity - 1; r >= 0; --r) {
      TruthValue rest = r + 1 == arity ? TruthValue::True : sv[r + 1];
      sv[r] = conj(m.node_[n.children[r]], rest);
    }
  }
  return m;
}

}  // namespace bgl
