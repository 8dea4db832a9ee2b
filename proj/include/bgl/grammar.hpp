#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bgl {

enum class ExprKind : unsigned char {
  Epsilon,
  Terminal,
  Variable,
  Negation,
  Disjunction,
  Conjunction,
  Concatenation
};

// Value-type expression tree, used while reading and normalizing rule bodies.
// Compiled grammars intern these into an indexed node pool (ExprNode below).
struct Expr {
  ExprKind kind = ExprKind::Epsilon;
  char terminal = 0;
  std::string var;
  std::vector<Expr> children;

  static Expr eps();
  static Expr term(char c);
  static Expr variable(std::string name);
  static Expr negation(Expr e);
  static Expr disjunction(std::vector<Expr> es);
  static Expr conjunction(std::vector<Expr> es);
  static Expr concatenation(std::vector<Expr> es);

  bool operator==(const Expr&) const = default;
};

// Flattens same-kind nesting, removes double negation, collapses single-child
// n-ary nodes. Idempotent; preserves the evaluated semantics.
Expr normalize(Expr e);

struct Diagnostic {
  int line = 0;
  int col = 0;
  std::string message;
};

struct grammar_error : std::runtime_error {
  explicit grammar_error(std::string what, std::vector<Diagnostic> diags = {});
  std::vector<Diagnostic> diagnostics;
};

// A grammar as written: rules in file order plus optional directives.
struct GrammarSource {
  struct RuleSrc {
    std::string head;
    Expr body;
    int line = 0;
    int col = 0;
  };
  std::vector<RuleSrc> rules;
  std::optional<std::string> start;     // %start NAME ;
  std::optional<std::string> alphabet;  // %alphabet "chars" ;
};

// Reads the surface syntax. Throws grammar_error with line/column on lexical
// or syntactic problems; well-formedness is validate()'s job.
GrammarSource parse_grammar_source(std::string_view text);

// One diagnostic per well-formedness violation; empty means well-formed.
std::vector<Diagnostic> validate(const GrammarSource& src);

using NodeId = int;
inline constexpr NodeId kNoNode = -1;

struct ExprNode {
  ExprKind kind = ExprKind::Epsilon;
  char terminal = 0;
  int var = -1;  // Variable: index into the grammar's variable list
  std::vector<NodeId> children;
  NodeId parent = kNoNode;
  int child_index = -1;  // position within parent
};

// Validated, immutable grammar. Rule bodies live in one node pool; every
// occurrence of a subformula is a distinct node, which the automaton relies
// on for unambiguous item identity.
class Grammar {
 public:
  const std::vector<std::string>& variables() const { return variables_; }
  const std::string& variable_name(int v) const { return variables_[v]; }
  int variable(std::string_view name) const;  // -1 when absent
  int start() const { return start_; }

  const std::string& alphabet() const { return alphabet_; }
  bool in_alphabet(char c) const { return alphabet_.find(c) != std::string::npos; }

  NodeId rule_body(int var) const { return rule_bodies_[var]; }
  // Synthetic reference to the start variable; seeds automaton items.
  NodeId start_node() const { return start_node_; }

  const ExprNode& node(NodeId id) const { return nodes_[id]; }
  int node_count() const { return static_cast<int>(nodes_.size()); }

  // Number of grammar symbols |V| + |Sigma| + 1 (epsilon).
  int gamma_size() const { return static_cast<int>(variables_.size() + alphabet_.size()) + 1; }

  friend Grammar compile(const GrammarSource& src, bool normalize_bodies);

 private:
  std::vector<std::string> variables_;
  std::vector<NodeId> rule_bodies_;
  std::string alphabet_;  // sorted, unique
  int start_ = 0;
  NodeId start_node_ = kNoNode;
  std::vector<ExprNode> nodes_;
};

// Validates and freezes a source grammar; throws grammar_error carrying the
// diagnostics if validation fails. normalize_bodies=false is a testing hook.
Grammar compile(const GrammarSource& src, bool normalize_bodies = true);

// parse + normalize + validate + compile in one step.
Grammar parse_grammar(std::string_view text);

// Surface form of a compiled grammar / of one expression. parse(render(g))
// reproduces g exactly.
std::string render(const Grammar& g);
std::string pretty(const Grammar& g, NodeId id);

}  // namespace bgl
