#include "bgl/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <utility>

namespace bgl {

Expr Expr::eps() { return Expr{ExprKind::Epsilon, 0, {}, {}}; }
Expr Expr::term(char c) { return Expr{ExprKind::Terminal, c, {}, {}}; }
Expr Expr::variable(std::string name) { return Expr{ExprKind::Variable, 0, std::move(name), {}}; }

Expr Expr::negation(Expr e) {
  Expr r{ExprKind::Negation, 0, {}, {}};
  r.children.push_back(std::move(e));
  return r;
}

static Expr make_nary(ExprKind kind, std::vector<Expr> es) {
  if (es.empty()) throw std::invalid_argument("n-ary expression with no children");
  Expr r{kind, 0, {}, {}};
  r.children = std::move(es);
  return r;
}

Expr Expr::disjunction(std::vector<Expr> es) { return make_nary(ExprKind::Disjunction, std::move(es)); }
Expr Expr::conjunction(std::vector<Expr> es) { return make_nary(ExprKind::Conjunction, std::move(es)); }
Expr Expr::concatenation(std::vector<Expr> es) {
  return make_nary(ExprKind::Concatenation, std::move(es));
}

Expr normalize(Expr e) {
  switch (e.kind) {
    case ExprKind::Epsilon:
    case ExprKind::Terminal:
    case ExprKind::Variable:
      return e;
    case ExprKind::Negation: {
      Expr child = normalize(std::move(e.children.front()));
      if (child.kind == ExprKind::Negation) return std::move(child.children.front());
      e.children.front() = std::move(child);
      return e;
    }
    default: {
      // Flatten one level of same-kind children; they are already normalized,
      // so their own children cannot repeat the kind.
      std::vector<Expr> flat;
      flat.reserve(e.children.size());
      for (Expr& c : e.children) {
        Expr nc = normalize(std::move(c));
        if (nc.kind == e.kind)
          for (Expr& gc : nc.children) flat.push_back(std::move(gc));
        else
          flat.push_back(std::move(nc));
      }
      if (flat.size() == 1) return std::move(flat.front());
      e.children = std::move(flat);
      return e;
    }
  }
}

grammar_error::grammar_error(std::string what, std::vector<Diagnostic> diags)
    : std::runtime_error(std::move(what)), diagnostics(std::move(diags)) {}

namespace {

struct Token {
  enum Type { Ident, Arrow, Semi, Pipe, Amp, Bang, LParen, RParen, Str, Directive, End };
  Type type;
  std::string text;  // identifier name, string contents, or directive name
  int line, col;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_ws_and_comments();
    int line = line_, col = col_;
    if (pos_ >= src_.size()) return {Token::End, "", line, col};
    char c = src_[pos_];
    if (c == ';') return advance(), Token{Token::Semi, ";", line, col};
    if (c == '|') return advance(), Token{Token::Pipe, "|", line, col};
    if (c == '&') return advance(), Token{Token::Amp, "&", line, col};
    if (c == '!') return advance(), Token{Token::Bang, "!", line, col};
    if (c == '(') return advance(), Token{Token::LParen, "(", line, col};
    if (c == ')') return advance(), Token{Token::RParen, ")", line, col};
    if (c == '-') {
      advance();
      if (pos_ < src_.size() && src_[pos_] == '>') return advance(), Token{Token::Arrow, "->", line, col};
      fail(line, col, "expected '->'");
    }
    if (c == '"') {
      advance();
      std::string s;
      while (pos_ < src_.size() && src_[pos_] != '"') {
        char d = src_[pos_];
        if (d == '\n') fail(line, col, "unterminated string literal");
        if (d == '\\') {
          advance();
          if (pos_ >= src_.size()) fail(line, col, "unterminated escape");
          d = src_[pos_];
          if (d != '\\' && d != '"') fail(line_, col_, "unknown escape sequence");
        }
        s.push_back(d);
        advance();
      }
      if (pos_ >= src_.size()) fail(line, col, "unterminated string literal");
      advance();  // closing quote
      if (s.empty()) fail(line, col, "empty terminal literal (use eps for the empty word)");
      return {Token::Str, s, line, col};
    }
    if (c == '%') {
      advance();
      std::string name = lex_ident_tail();
      if (name.empty()) fail(line, col, "expected directive name after '%'");
      return {Token::Directive, name, line, col};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name = lex_ident_tail();
      return {Token::Ident, name, line, col};
    }
    fail(line, col, std::string("unexpected character '") + c + "'");
  }

  [[noreturn]] void fail(int line, int col, const std::string& msg) const {
    std::ostringstream os;
    os << "syntax error at " << line << ":" << col << ": " << msg;
    throw grammar_error(os.str(), {{line, col, msg}});
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws_and_comments() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string lex_ident_tail() {
    std::string name;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        name.push_back(c);
        advance();
      } else {
        break;
      }
    }
    return name;
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

// Recursive descent over the precedence chain ! > juxtaposition > & > |.
class SourceParser {
 public:
  explicit SourceParser(std::string_view text) : lex_(text) { shift(); }

  GrammarSource parse() {
    GrammarSource src;
    while (tok_.type != Token::End) {
      if (tok_.type == Token::Directive) {
        parse_directive(src);
      } else if (tok_.type == Token::Ident) {
        GrammarSource::RuleSrc rule;
        rule.head = tok_.text;
        rule.line = tok_.line;
        rule.col = tok_.col;
        shift();
        expect(Token::Arrow, "expected '->' after rule head");
        rule.body = parse_disjunction();
        expect(Token::Semi, "expected ';' after rule body");
        src.rules.push_back(std::move(rule));
      } else {
        lex_.fail(tok_.line, tok_.col, "expected a rule or directive");
      }
    }
    return src;
  }

 private:
  void shift() { tok_ = lex_.next(); }

  void expect(Token::Type t, const std::string& msg) {
    if (tok_.type != t) lex_.fail(tok_.line, tok_.col, msg);
    shift();
  }

  void parse_directive(GrammarSource& src) {
    std::string name = tok_.text;
    int line = tok_.line, col = tok_.col;
    shift();
    if (name == "start") {
      if (tok_.type != Token::Ident) lex_.fail(tok_.line, tok_.col, "expected variable name after %start");
      src.start = tok_.text;
      shift();
    } else if (name == "alphabet") {
      if (tok_.type != Token::Str) lex_.fail(tok_.line, tok_.col, "expected string after %alphabet");
      src.alphabet = tok_.text;
      shift();
    } else {
      lex_.fail(line, col, "unknown directive %" + name);
    }
    expect(Token::Semi, "expected ';' after directive");
  }

  Expr parse_disjunction() {
    std::vector<Expr> alts;
    alts.push_back(parse_conjunction());
    while (tok_.type == Token::Pipe) {
      shift();
      alts.push_back(parse_conjunction());
    }
    return alts.size() == 1 ? std::move(alts.front()) : Expr::disjunction(std::move(alts));
  }

  Expr parse_conjunction() {
    std::vector<Expr> parts;
    parts.push_back(parse_concatenation());
    while (tok_.type == Token::Amp) {
      shift();
      parts.push_back(parse_concatenation());
    }
    return parts.size() == 1 ? std::move(parts.front()) : Expr::conjunction(std::move(parts));
  }

  bool starts_prefix() const {
    return tok_.type == Token::Bang || tok_.type == Token::Ident || tok_.type == Token::Str ||
           tok_.type == Token::LParen;
  }

  Expr parse_concatenation() {
    std::vector<Expr> parts;
    parts.push_back(parse_prefix());
    while (starts_prefix()) parts.push_back(parse_prefix());
    return parts.size() == 1 ? std::move(parts.front()) : Expr::concatenation(std::move(parts));
  }

  Expr parse_prefix() {
    if (tok_.type == Token::Bang) {
      shift();
      return Expr::negation(parse_prefix());
    }
    return parse_primary();
  }

  Expr parse_primary() {
    switch (tok_.type) {
      case Token::Ident: {
        Expr e = tok_.text == "eps" ? Expr::eps() : Expr::variable(tok_.text);
        shift();
        return e;
      }
      case Token::Str: {
        // A multi-character literal is sugar for a concatenation of characters.
        std::string s = tok_.text;
        shift();
        if (s.size() == 1) return Expr::term(s[0]);
        std::vector<Expr> parts;
        for (char c : s) parts.push_back(Expr::term(c));
        return Expr::concatenation(std::move(parts));
      }
      case Token::LParen: {
        shift();
        Expr e = parse_disjunction();
        expect(Token::RParen, "expected ')'");
        return e;
      }
      default:
        lex_.fail(tok_.line, tok_.col, "expected an expression");
    }
  }

  Lexer lex_;
  Token tok_{Token::End, "", 0, 0};
};

void collect_terminals(const Expr& e, std::set<char>& out) {
  if (e.kind == ExprKind::Terminal) out.insert(e.terminal);
  for (const Expr& c : e.children) collect_terminals(c, out);
}

void check_shape(const Expr& e, const GrammarSource::RuleSrc& rule, std::vector<Diagnostic>& out) {
  bool nary = e.kind == ExprKind::Disjunction || e.kind == ExprKind::Conjunction ||
              e.kind == ExprKind::Concatenation;
  if (nary && e.children.size() < 2)
    out.push_back({rule.line, rule.col,
                   "rule " + rule.head + ": n-ary expression with fewer than two operands"});
  for (const Expr& c : e.children) {
    if (c.kind == e.kind && (nary || e.kind == ExprKind::Negation))
      out.push_back({rule.line, rule.col,
                     "rule " + rule.head + ": expression nests a subexpression of its own kind"});
    check_shape(c, rule, out);
  }
}

void check_variables(const Expr& e, const GrammarSource::RuleSrc& rule,
                     const std::set<std::string>& declared, std::vector<Diagnostic>& out) {
  if (e.kind == ExprKind::Variable && !declared.count(e.var))
    out.push_back({rule.line, rule.col,
                   "rule " + rule.head + ": reference to undefined variable " + e.var});
  for (const Expr& c : e.children) check_variables(c, rule, declared, out);
}

std::vector<Diagnostic> validate_impl(const GrammarSource& src, bool shape) {
  std::vector<Diagnostic> diags;
  if (src.rules.empty()) {
    diags.push_back({0, 0, "grammar defines no rules"});
    return diags;
  }
  std::set<std::string> declared;
  for (const auto& rule : src.rules) {
    if (!declared.insert(rule.head).second)
      diags.push_back({rule.line, rule.col, "duplicate rule for variable " + rule.head});
  }
  for (const auto& rule : src.rules) {
    check_variables(rule.body, rule, declared, diags);
    if (shape) check_shape(rule.body, rule, diags);
  }
  if (src.start && !declared.count(*src.start))
    diags.push_back({0, 0, "%start names undefined variable " + *src.start});
  if (src.alphabet) {
    std::set<char> used;
    for (const auto& rule : src.rules) collect_terminals(rule.body, used);
    for (char c : used)
      if (src.alphabet->find(c) == std::string::npos)
        diags.push_back({0, 0, std::string("terminal '") + c + "' not in declared alphabet"});
  }
  return diags;
}

}  // namespace

GrammarSource parse_grammar_source(std::string_view text) {
  return SourceParser(text).parse();
}

std::vector<Diagnostic> validate(const GrammarSource& src) { return validate_impl(src, true); }

int Grammar::variable(std::string_view name) const {
  for (size_t i = 0; i < variables_.size(); ++i)
    if (variables_[i] == name) return static_cast<int>(i);
  return -1;
}

namespace {

NodeId intern(const Expr& e, const Grammar& g, std::vector<ExprNode>& pool, NodeId parent,
              int child_index) {
  NodeId id = static_cast<NodeId>(pool.size());
  pool.push_back({});
  pool[id].kind = e.kind;
  pool[id].terminal = e.terminal;
  pool[id].parent = parent;
  pool[id].child_index = child_index;
  if (e.kind == ExprKind::Variable) pool[id].var = g.variable(e.var);
  for (size_t i = 0; i < e.children.size(); ++i) {
    NodeId c = intern(e.children[i], g, pool, id, static_cast<int>(i));
    pool[id].children.push_back(c);
  }
  return id;
}

}  // namespace

Grammar compile(const GrammarSource& src, bool normalize_bodies) {
  GrammarSource prepared = src;
  if (normalize_bodies)
    for (auto& rule : prepared.rules) rule.body = normalize(std::move(rule.body));

  auto diags = validate_impl(prepared, normalize_bodies);
  if (!diags.empty()) {
    std::ostringstream os;
    os << "invalid grammar:";
    for (const auto& d : diags) os << "\n  " << d.line << ":" << d.col << ": " << d.message;
    throw grammar_error(os.str(), std::move(diags));
  }

  Grammar g;
  for (const auto& rule : prepared.rules) g.variables_.push_back(rule.head);

  std::set<char> sigma;
  for (const auto& rule : prepared.rules) collect_terminals(rule.body, sigma);
  if (prepared.alphabet)
    for (char c : *prepared.alphabet) sigma.insert(c);
  g.alphabet_.assign(sigma.begin(), sigma.end());

  g.start_ = prepared.start ? g.variable(*prepared.start) : 0;

  for (const auto& rule : prepared.rules)
    g.rule_bodies_.push_back(intern(rule.body, g, g.nodes_, kNoNode, -1));

  g.start_node_ = static_cast<NodeId>(g.nodes_.size());
  g.nodes_.push_back({ExprKind::Variable, 0, g.start_, {}, kNoNode, -1});
  return g;
}

Grammar parse_grammar(std::string_view text) { return compile(parse_grammar_source(text)); }

namespace {

// Precedence levels for printing: | < & < juxtaposition < ! and atoms.
int print_level(ExprKind k) {
  switch (k) {
    case ExprKind::Disjunction: return 0;
    case ExprKind::Conjunction: return 1;
    case ExprKind::Concatenation: return 2;
    default: return 3;
  }
}

void pretty_rec(const Grammar& g, NodeId id, int min_level, std::string& out) {
  const ExprNode& n = g.node(id);
  bool parens = print_level(n.kind) < min_level;
  if (parens) out.push_back('(');
  switch (n.kind) {
    case ExprKind::Epsilon:
      out += "eps";
      break;
    case ExprKind::Terminal:
      out.push_back('"');
      if (n.terminal == '"' || n.terminal == '\\') out.push_back('\\');
      out.push_back(n.terminal);
      out.push_back('"');
      break;
    case ExprKind::Variable:
      out += g.variable_name(n.var);
      break;
    case ExprKind::Negation:
      out.push_back('!');
      pretty_rec(g, n.children.front(), 3, out);
      break;
    case ExprKind::Disjunction:
    case ExprKind::Conjunction:
    case ExprKind::Concatenation: {
      const char* sep = n.kind == ExprKind::Disjunction  ? " | "
                        : n.kind == ExprKind::Conjunction ? " & "
                                                          : " ";
      int child_level = print_level(n.kind) + 1;
      for (size_t i = 0; i < n.children.size(); ++i) {
        if (i) out += sep;
        pretty_rec(g, n.children[i], child_level, out);
      }
      break;
    }
  }
  if (parens) out.push_back(')');
}

}  // namespace

std::string pretty(const Grammar& g, NodeId id) {
  std::string out;
  pretty_rec(g, id, 0, out);
  return out;
}

std::string render(const Grammar& g) {
  std::ostringstream os;
  std::set<char> used;
  for (NodeId id = 0; id < g.node_count(); ++id) {
    const ExprNode& n = g.node(id);
    if (n.kind == ExprKind::Terminal) used.insert(n.terminal);
  }
  if (used.size() != g.alphabet().size()) {
    os << "%alphabet \"";
    for (char c : g.alphabet()) {
      if (c == '"' || c == '\\') os << '\\';
      os << c;
    }
    os << "\" ;\n";
  }
  if (g.start() != 0) os << "%start " << g.variable_name(g.start()) << " ;\n";
  for (size_t v = 0; v < g.variables().size(); ++v)
    os << g.variable_name(static_cast<int>(v)) << " -> "
       << pretty(g, g.rule_body(static_cast<int>(v))) << " ;\n";
  return os.str();
}

}  // namespace bgl
