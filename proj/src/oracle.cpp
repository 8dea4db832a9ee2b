#include "bgl/oracle.hpp"

#include <map>
#include <stdexcept>
#include <unordered_map>

namespace bgl::oracle {

SubstringTable::SubstringTable(std::string word) : word_(std::move(word)) {
  n_ = static_cast<int>(word_.size());
  ids_.assign(static_cast<size_t>(n_ + 1) * (n_ + 1), -1);
  std::map<std::string_view, int> seen;
  for (int len = 0; len <= n_; ++len) {
    for (int start = 0; start + len <= n_; ++start) {
      std::string_view s(word_.data() + start, static_cast<size_t>(len));
      auto [it, fresh] = seen.try_emplace(s, count_);
      if (fresh) {
        rep_.emplace_back(start, len);
        ++count_;
      }
      ids_[start * (n_ + 1) + len] = it->second;
    }
  }
}

std::string_view SubstringTable::text(int sub) const {
  auto [start, len] = rep_[sub];
  return std::string_view(word_.data() + start, static_cast<size_t>(len));
}

namespace {

// Ordered ways of splitting a length into a fixed number of non-negative
// parts. Cached per (arity, length); the lists are valuation-independent.
class CompositionCache {
 public:
  const std::vector<std::vector<int>>& get(int arity, int length) {
    auto key = arity * 4096 + length;
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::vector<std::vector<int>> all;
    std::vector<int> cur(static_cast<size_t>(arity));
    fill(all, cur, 0, arity, length);
    return cache_.emplace(key, std::move(all)).first->second;
  }

 private:
  static void fill(std::vector<std::vector<int>>& all, std::vector<int>& cur, int i, int arity,
                   int rest) {
    if (i == arity - 1) {
      cur[i] = rest;
      all.push_back(cur);
      return;
    }
    for (int take = 0; take <= rest; ++take) {
      cur[i] = take;
      fill(all, cur, i + 1, arity, rest - take);
    }
  }

  std::unordered_map<int, std::vector<std::vector<int>>> cache_;
};

struct EvalContext {
  const Grammar& g;
  const SubstringTable& subs;
  const Valuation& vals;
  CompositionCache& comps;
  // Per-call memo keyed by (node, substring); sound because the valuation is
  // fixed for the duration of one evaluation.
  std::unordered_map<long long, TruthValue> memo;
};

TruthValue eval_node(EvalContext& ctx, NodeId id, int start, int len) {
  const ExprNode& n = ctx.g.node(id);
  switch (n.kind) {
    case ExprKind::Epsilon:
      return len == 0 ? TruthValue::True : TruthValue::False;
    case ExprKind::Terminal:
      return len == 1 && ctx.subs.word()[start] == n.terminal ? TruthValue::True
                                                              : TruthValue::False;
    case ExprKind::Variable:
      return ctx.vals.at(n.var, ctx.subs.id(start, len));
    case ExprKind::Negation:
      return neg(eval_node(ctx, n.children.front(), start, len));
    case ExprKind::Disjunction: {
      TruthValue acc = TruthValue::False;
      for (NodeId c : n.children) {
        acc = disj(acc, eval_node(ctx, c, start, len));
        if (acc == TruthValue::True) break;
      }
      return acc;
    }
    case ExprKind::Conjunction: {
      TruthValue acc = TruthValue::True;
      for (NodeId c : n.children) {
        acc = conj(acc, eval_node(ctx, c, start, len));
        if (acc == TruthValue::False) break;
      }
      return acc;
    }
    case ExprKind::Concatenation: {
      long long key = static_cast<long long>(id) * 1048576 + ctx.subs.id(start, len);
      if (auto it = ctx.memo.find(key); it != ctx.memo.end()) return it->second;
      int arity = static_cast<int>(n.children.size());
      TruthValue acc = TruthValue::False;
      for (const auto& parts : ctx.comps.get(arity, len)) {
        TruthValue row = TruthValue::True;
        int at = start;
        for (int i = 0; i < arity && row != TruthValue::False; ++i) {
          row = conj(row, eval_node(ctx, n.children[i], at, parts[i]));
          at += parts[i];
        }
        acc = disj(acc, row);
        if (acc == TruthValue::True) break;
      }
      ctx.memo.emplace(key, acc);
      return acc;
    }
  }
  throw std::logic_error("unreachable expression kind");
}

void prefill_compositions(const Grammar& g, int max_len, CompositionCache& comps) {
  for (NodeId id = 0; id < g.node_count(); ++id) {
    const ExprNode& n = g.node(id);
    if (n.kind != ExprKind::Concatenation) continue;
    for (int len = 0; len <= max_len; ++len)
      comps.get(static_cast<int>(n.children.size()), len);
  }
}

void sweep_into(const Grammar& g, const SubstringTable& subs, const Valuation& prev,
                Valuation& next, CompositionCache& comps, bool parallel) {
  int vars = static_cast<int>(g.variables().size());
  int total = vars * subs.count();
  if (parallel) {
#pragma omp parallel
    {
      EvalContext ctx{g, subs, prev, comps, {}};
#pragma omp for schedule(dynamic, 8)
      for (int idx = 0; idx < total; ++idx) {
        int var = idx / subs.count();
        int sub = idx % subs.count();
        auto [start, len] = subs.extent(sub);
        next.set(var, sub, eval_node(ctx, g.rule_body(var), start, len));
      }
    }
  } else {
    EvalContext ctx{g, subs, prev, comps, {}};
    for (int idx = 0; idx < total; ++idx) {
      int var = idx / subs.count();
      int sub = idx % subs.count();
      auto [start, len] = subs.extent(sub);
      next.set(var, sub, eval_node(ctx, g.rule_body(var), start, len));
    }
  }
}

}  // namespace

TruthValue eval_body(const Grammar& g, NodeId body, const SubstringTable& subs, int start, int len,
                     const Valuation& vals) {
  CompositionCache comps;
  EvalContext ctx{g, subs, vals, comps, {}};
  return eval_node(ctx, body, start, len);
}

Valuation step_phi(const Grammar& g, const SubstringTable& subs, const Valuation& prev,
                   const Options& opts) {
  CompositionCache comps;
  prefill_compositions(g, static_cast<int>(subs.word().size()), comps);
  Valuation next(static_cast<int>(g.variables().size()), subs.count(), TruthValue::Unknown);
  sweep_into(g, subs, prev, next, comps, opts.parallel);
  return next;
}

namespace {

void check_monotone(const Grammar& g, const SubstringTable& subs, const Valuation& before,
                    const Valuation& after) {
  int vars = static_cast<int>(g.variables().size());
  for (int var = 0; var < vars; ++var)
    for (int sub = 0; sub < subs.count(); ++sub)
      if (!leq_certainty(before.at(var, sub), after.at(var, sub)))
        throw inconsistency_error("fixpoint iteration retracted a settled atom");
}

}  // namespace

Model entailment_model(const Grammar& g, std::string_view word, const Options& opts) {
  for (char c : word)
    if (!g.in_alphabet(c))
      throw std::invalid_argument(std::string("input symbol '") + c + "' outside the alphabet");

  SubstringTable subs{std::string(word)};
  int vars = static_cast<int>(g.variables().size());
  int n = static_cast<int>(word.size());
  int max_distinct = 1 + n * (n + 1) / 2;
  if (subs.count() > max_distinct)
    throw inconsistency_error("substring table exceeds its quadratic bound");

  Model m{std::move(subs), Valuation(vars, 0, TruthValue::Unknown), {}, 0};
  m.atom_count = m.subs.count() * g.gamma_size();
  m.vals = Valuation(vars, m.subs.count(), TruthValue::Unknown);

  CompositionCache comps;
  prefill_compositions(g, n, comps);

  int max_sweeps = 2 * m.atom_count + 2;
  if (opts.keep_trace) m.trace.iterations.push_back(m.vals);
  for (int sweep = 1;; ++sweep) {
    if (sweep > max_sweeps)
      throw inconsistency_error("fixpoint iteration exceeded its convergence bound");
    Valuation next(vars, m.subs.count(), TruthValue::Unknown);
    sweep_into(g, m.subs, m.vals, next, comps, opts.parallel);
    check_monotone(g, m.subs, m.vals, next);
    m.trace.sweeps = sweep;
    bool stable = next == m.vals;
    m.vals = std::move(next);
    if (opts.keep_trace) m.trace.iterations.push_back(m.vals);
    if (stable) {
      m.trace.converged = true;
      break;
    }
  }
  if (opts.verify_model) check_model(g, m);
  return m;
}

TruthValue classify(const Grammar& g, std::string_view word, const Options& opts) {
  Model m = entailment_model(g, word, opts);
  return m.value(g.start(), m.subs.full_id());
}

void check_model(const Grammar& g, const Model& m) {
  CompositionCache comps;
  prefill_compositions(g, static_cast<int>(m.subs.word().size()), comps);
  EvalContext ctx{g, m.subs, m.vals, comps, {}};
  int vars = static_cast<int>(g.variables().size());
  for (int var = 0; var < vars; ++var) {
    for (int sub = 0; sub < m.subs.count(); ++sub) {
      auto [start, len] = m.subs.extent(sub);
      TruthValue v = eval_node(ctx, g.rule_body(var), start, len);
      if (v != m.vals.at(var, sub))
        throw inconsistency_error("fixpoint does not satisfy rule for " + g.variable_name(var));
    }
  }
}

std::vector<std::string> describe_changes(const Grammar& g, const SubstringTable& subs,
                                          const Valuation& before, const Valuation& after) {
  std::vector<std::string> out;
  int vars = static_cast<int>(g.variables().size());
  for (int var = 0; var < vars; ++var) {
    for (int sub = 0; sub < subs.count(); ++sub) {
      if (before.at(var, sub) == after.at(var, sub)) continue;
      std::string atom = g.variable_name(var) + "(";
      std::string_view t = subs.text(sub);
      atom += t.empty() ? std::string("%eps") : std::string(t);
      atom += ")=";
      atom.push_back(glyph(after.at(var, sub)));
      out.push_back(std::move(atom));
    }
  }
  return out;
}

}  // namespace bgl::oracle
