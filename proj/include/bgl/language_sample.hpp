#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>

#include "bgl/trivalue.hpp"

namespace bgl {

// A finitely supported three-valued language: every word up to a fixed length
// bound has an explicit truth value. Queries beyond the bound throw rather
// than defaulting to Unknown, so a truncated table cannot pass for genuine
// indeterminacy. Used as a brute-force fixture by the test oracles.
class LanguageSample {
 public:
  LanguageSample(std::string alphabet, int max_len, TruthValue fill = TruthValue::False);

  void set(std::string_view word, TruthValue v);
  TruthValue at(std::string_view word) const;  // throws std::out_of_range past the bound

  int max_len() const { return max_len_; }
  const std::string& alphabet() const { return alphabet_; }

 private:
  std::string alphabet_;
  int max_len_;
  TruthValue fill_;
  std::map<std::string, TruthValue, std::less<>> values_;
};

// Pointwise characteristic functions of the language operations.
TruthValue complement_characteristic(const LanguageSample& l, std::string_view w);
TruthValue union_characteristic(std::span<const LanguageSample> ls, std::string_view w);
TruthValue intersection_characteristic(std::span<const LanguageSample> ls, std::string_view w);

// Characteristic value of the n-ary concatenation: disjunction over every
// n-partition of w of the conjunction of per-part values.
TruthValue concat_characteristic(std::span<const LanguageSample> ls, std::string_view w);

}  // namespace bgl
