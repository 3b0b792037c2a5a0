#pragma once

#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace subsent {

enum class Pos { Noun, Verb, Adjective, Adverb, Other };

/// The four WordNet parts of speech, in lookup priority order.
inline constexpr Pos kWordNetPos[] = {Pos::Noun, Pos::Verb, Pos::Adjective, Pos::Adverb};

constexpr char pos_letter(Pos pos) {
  switch (pos) {
    case Pos::Noun: return 'n';
    case Pos::Verb: return 'v';
    case Pos::Adjective: return 'a';
    case Pos::Adverb: return 'r';
    case Pos::Other: return 'x';
  }
  return 'x';
}

/// WordNet/SentiWordNet POS letters; 's' (adjective satellite) folds into Adjective.
constexpr std::optional<Pos> pos_from_letter(char c) {
  switch (c) {
    case 'n': return Pos::Noun;
    case 'v': return Pos::Verb;
    case 'a':
    case 's': return Pos::Adjective;
    case 'r': return Pos::Adverb;
    case 'x': return Pos::Other;
    default: return std::nullopt;
  }
}

constexpr std::string_view pos_name(Pos pos) {
  switch (pos) {
    case Pos::Noun: return "noun";
    case Pos::Verb: return "verb";
    case Pos::Adjective: return "adj";
    case Pos::Adverb: return "adv";
    case Pos::Other: return "other";
  }
  return "other";
}

/// A normalized term: the surface, stem or lemma together with its part of speech.
struct Term {
  std::string text;
  Pos pos = Pos::Noun;

  friend auto operator<=>(const Term&, const Term&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Term& t) { return os << t.text << '|' << pos_letter(t.pos); }
};

}  // namespace subsent
