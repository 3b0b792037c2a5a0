#pragma once

#include <vector>

#include "subsent/error.hpp"
#include "subsent/lexicon.hpp"
#include "subsent/types.hpp"

namespace subsent::preprocess {

/// Fraction of term occurrences (with repeats) that have at least one lexicon entry.
inline double match_rate(const std::vector<Term>& terms, const lexicon::SwnLexicon& lex) {
  if (terms.empty()) throw Error(ErrorKind::EmptyInput, "match rate of an empty term list");
  std::size_t matched = 0;
  for (const auto& t : terms)
    if (lex.contains(t.text, t.pos)) ++matched;
  return static_cast<double>(matched) / static_cast<double>(terms.size());
}

}  // namespace subsent::preprocess
