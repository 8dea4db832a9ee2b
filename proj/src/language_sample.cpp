#include "bgl/language_sample.hpp"

#include <stdexcept>

namespace bgl {

LanguageSample::LanguageSample(std::string alphabet, int max_len, TruthValue fill)
    : alphabet_(std::move(alphabet)), max_len_(max_len), fill_(fill) {
  if (max_len_ < 0) throw std::invalid_argument("negative length bound");
}

void LanguageSample::set(std::string_view word, TruthValue v) {
  if (static_cast<int>(word.size()) > max_len_)
    throw std::out_of_range("word exceeds the sample's length bound");
  values_.insert_or_assign(std::string(word), v);
}

TruthValue LanguageSample::at(std::string_view word) const {
  if (static_cast<int>(word.size()) > max_len_)
    throw std::out_of_range("word exceeds the sample's length bound");
  auto it = values_.find(word);
  return it == values_.end() ? fill_ : it->second;
}

TruthValue complement_characteristic(const LanguageSample& l, std::string_view w) {
  return neg(l.at(w));
}

TruthValue union_characteristic(std::span<const LanguageSample> ls, std::string_view w) {
  TruthValue acc = TruthValue::False;
  for (const auto& l : ls) acc = disj(acc, l.at(w));
  return acc;
}

TruthValue intersection_characteristic(std::span<const LanguageSample> ls, std::string_view w) {
  TruthValue acc = TruthValue::True;
  for (const auto& l : ls) acc = conj(acc, l.at(w));
  return acc;
}

namespace {

TruthValue concat_rec(std::span<const LanguageSample> ls, std::string_view w) {
  if (ls.size() == 1) return ls.front().at(w);
  TruthValue acc = TruthValue::False;
  for (size_t cut = 0; cut <= w.size(); ++cut) {
    TruthValue head = ls.front().at(w.substr(0, cut));
    if (head == TruthValue::False) continue;  // cannot raise the disjunction
    acc = disj(acc, conj(head, concat_rec(ls.subspan(1), w.substr(cut))));
    if (acc == TruthValue::True) return acc;
  }
  return acc;
}

}  // namespace

TruthValue concat_characteristic(std::span<const LanguageSample> ls, std::string_view w) {
  if (ls.empty()) throw std::invalid_argument("concatenation of zero languages");
  return concat_rec(ls, w);
}

}  // namespace bgl
