#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bgl/grammar.hpp"
#include "bgl/trivalue.hpp"

namespace bgl::oracle {

// The distinct substrings of one word, epsilon included. Atom tables are
// quadratic in the word length, so everything downstream indexes substrings
// through this.
class SubstringTable {
 public:
  explicit SubstringTable(std::string word);

  int count() const { return count_; }  // number of distinct substrings
  int id(int start, int len) const { return ids_[start * (n_ + 1) + len]; }
  int eps_id() const { return id(0, 0); }
  int full_id() const { return id(0, n_); }
  std::string_view text(int sub) const;
  std::pair<int, int> extent(int sub) const { return rep_[sub]; }  // representative (start, len)
  const std::string& word() const { return word_; }

 private:
  std::string word_;
  int n_;
  int count_ = 0;
  std::vector<int> ids_;                      // (start, len) -> substring id
  std::vector<std::pair<int, int>> rep_;      // id -> representative extent
};

// Truth assignment for every variable atom over a substring table. Terminal
// and epsilon atoms are two-valued and fixed, so they are not stored.
class Valuation {
 public:
  Valuation() = default;
  Valuation(int vars, int subs, TruthValue fill)
      : subs_(subs), vals_(static_cast<size_t>(vars) * subs, fill) {}

  TruthValue at(int var, int sub) const { return vals_[static_cast<size_t>(var) * subs_ + sub]; }
  void set(int var, int sub, TruthValue v) { vals_[static_cast<size_t>(var) * subs_ + sub] = v; }

  bool operator==(const Valuation&) const = default;
  size_t size() const { return vals_.size(); }

 private:
  int subs_ = 0;
  std::vector<TruthValue> vals_;
};

struct Options {
  bool parallel = false;    // OpenMP sweep over atoms; results identical to serial
  bool keep_trace = false;  // retain every intermediate valuation
  bool verify_model = false;  // re-evaluate all rules at the fixpoint
};

struct FixpointTrace {
  std::vector<Valuation> iterations;  // filled when keep_trace is set
  int sweeps = 0;
  bool converged = false;
};

struct Model {
  SubstringTable subs;
  Valuation vals;
  FixpointTrace trace;
  int atom_count = 0;  // distinct substrings times |Gamma|

  TruthValue value(int var, int sub) const { return vals.at(var, sub); }
};

// Evaluates a rule body over the substring (start, len) under the valuation,
// realizing the translation of grammar expressions to logic formulas.
TruthValue eval_body(const Grammar& g, NodeId body, const SubstringTable& subs, int start, int len,
                     const Valuation& vals);

// One synchronous sweep of the consequence operator: every variable atom is
// re-evaluated against the previous valuation.
Valuation step_phi(const Grammar& g, const SubstringTable& subs, const Valuation& prev,
                   const Options& opts = {});

// Iterates step_phi from the all-Unknown valuation to the least fixpoint in
// the certainty order. Monotonicity and the sweep bound are enforced on every
// run; violations throw inconsistency_error.
Model entailment_model(const Grammar& g, std::string_view word, const Options& opts = {});

// Membership status of the word for the grammar's start symbol.
TruthValue classify(const Grammar& g, std::string_view word, const Options& opts = {});

// Checks that every instantiated rule is satisfied by the model's fixpoint.
void check_model(const Grammar& g, const Model& m);

// Human-readable atom changes between two valuations, for trace output.
std::vector<std::string> describe_changes(const Grammar& g, const SubstringTable& subs,
                                          const Valuation& before, const Valuation& after);

}  // namespace bgl::oracle
