#pragma once

#include <array>
#include <cctype>
#include <filesystem>
#include <istream>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "subsent/detail/text.hpp"
#include "subsent/error.hpp"
#include "subsent/porter.hpp"
#include "subsent/types.hpp"

namespace subsent::preprocess {

enum class NormalizationMode { None, Stem, Lemmatize };

constexpr std::string_view to_string(NormalizationMode mode) {
  switch (mode) {
    case NormalizationMode::None: return "none";
    case NormalizationMode::Stem: return "stem";
    case NormalizationMode::Lemmatize: return "lemma";
  }
  return "none";
}

inline std::optional<NormalizationMode> normalization_from_string(std::string_view s) {
  auto lower = detail::to_lower(s);
  if (lower == "none" || lower == "original") return NormalizationMode::None;
  if (lower == "stem" || lower == "stemming") return NormalizationMode::Stem;
  if (lower == "lemma" || lower == "lemmatize" || lower == "lemmatization")
    return NormalizationMode::Lemmatize;
  return std::nullopt;
}

namespace detail_chars {

// Bytes >= 0x80 are treated as letters so UTF-8 sequences pass through intact.
inline bool is_letter(unsigned char c) { return std::isalpha(c) || c >= 0x80; }
inline bool is_kept(unsigned char c) {
  return is_letter(c) || std::isdigit(c) || std::isspace(c) || c == '\'' || c == '-';
}

}  // namespace detail_chars

/// Replaces every character outside [letters, digits, whitespace, ' and -]
/// with a space, lowercases, collapses whitespace runs and trims the ends.
inline std::string clean_text(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (char ch : raw) {
    auto c = static_cast<unsigned char>(ch);
    if (!detail_chars::is_kept(c) || std::isspace(c)) {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

/// Whitespace split of cleaned text. Leading/trailing ' and - are trimmed
/// from each piece and pieces without any letter (numbers, lone hyphens)
/// are dropped.
inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  for (auto piece : detail::split_whitespace(text)) {
    while (!piece.empty() && (piece.front() == '\'' || piece.front() == '-')) piece.remove_prefix(1);
    while (!piece.empty() && (piece.back() == '\'' || piece.back() == '-')) piece.remove_suffix(1);
    bool has_letter = false;
    for (char c : piece) has_letter |= detail_chars::is_letter(static_cast<unsigned char>(c));
    if (has_letter) tokens.emplace_back(piece);
  }
  return tokens;
}

using StopList = std::unordered_set<std::string>;

/// One word per line; `#` starts a comment; words are lowercased.
inline StopList parse_stoplist(std::istream& in) {
  StopList words;
  for (auto& line : detail::read_lines(in)) {
    std::string_view view = line;
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = detail::trim(view);
    if (!view.empty()) words.insert(detail::to_lower(view));
  }
  return words;
}

inline StopList load_stoplist(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return parse_stoplist(in);
}

inline std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                                 const StopList& stoplist) {
  std::vector<std::string> kept;
  kept.reserve(tokens.size());
  for (const auto& t : tokens)
    if (!stoplist.contains(t)) kept.push_back(t);
  return kept;
}

// ---------------------------------------------------------------------------
// WordNet-style morphology

struct DetachmentRule {
  std::string suffix;
  std::string ending;
};

/// Exception lists, detachment rules and known base forms per part of speech.
struct MorphologyData {
  std::array<std::unordered_map<std::string, std::string>, 4> exceptions;
  std::array<std::vector<DetachmentRule>, 4> rules = default_rules();
  std::array<std::unordered_set<std::string>, 4> base_forms;
  std::unordered_map<std::string, Pos> pos_frequency;

  static constexpr std::size_t slot(Pos pos) { return static_cast<std::size_t>(pos); }

  bool is_base_form(std::string_view word, Pos pos) const {
    if (pos == Pos::Other) return false;
    return base_forms[slot(pos)].contains(std::string(word));
  }

  bool known_anywhere(std::string_view word) const {
    for (auto pos : kWordNetPos)
      if (is_base_form(word, pos)) return true;
    return false;
  }

  /// The standard morphy suffix tables.
  static std::array<std::vector<DetachmentRule>, 4> default_rules() {
    return {{
        {{"s", ""}, {"ses", "s"}, {"xes", "x"}, {"zes", "z"}, {"ches", "ch"}, {"shes", "sh"},
         {"men", "man"}, {"ies", "y"}},
        {{"s", ""}, {"ies", "y"}, {"es", "e"}, {"es", ""}, {"ed", "e"}, {"ed", ""},
         {"ing", "e"}, {"ing", ""}},
        {{"er", ""}, {"est", ""}, {"er", "e"}, {"est", "e"}},
        {},
    }};
  }

  /// Every exception target must be a known base form of its POS.
  void validate() const {
    for (auto pos : kWordNetPos) {
      for (const auto& [form, lemma] : exceptions[slot(pos)]) {
        if (!is_base_form(lemma, pos)) {
          throw Error(ErrorKind::InvalidMorphology,
                      "exception '" + form + "' -> '" + lemma + "' targets an unknown " +
                          std::string(pos_name(pos)));
        }
      }
    }
  }
};

namespace detail_morph {

inline constexpr std::array<std::string_view, 4> kFileSuffix = {"noun", "verb", "adj", "adv"};

inline void read_exceptions(std::istream& in, std::unordered_map<std::string, std::string>& out) {
  for (auto& line : detail::read_lines(in)) {
    auto cols = detail::split_whitespace(line);
    if (cols.size() < 2) continue;
    out.emplace(detail::to_lower(cols[0]), detail::to_lower(cols[1]));
  }
}

// WordNet index files open with license lines that start with a space.
inline void read_index(std::istream& in, std::unordered_set<std::string>& out) {
  for (auto& line : detail::read_lines(in)) {
    if (line.empty() || line.front() == ' ' || line.front() == '#') continue;
    auto cols = detail::split_whitespace(line);
    if (!cols.empty()) out.insert(detail::to_lower(cols[0]));
  }
}

}  // namespace detail_morph

/// Loads `index.{noun,verb,adj,adv}`, `{noun,verb,adj,adv}.exc` and an
/// optional `pos_frequency.txt` (word, POS letter) from a directory.
inline MorphologyData load_morphology(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorKind::Io, "morphology directory not found: " + dir.string());
  }
  MorphologyData morph;
  for (std::size_t i = 0; i < 4; ++i) {
    auto index_path = dir / ("index." + std::string(detail_morph::kFileSuffix[i]));
    if (std::filesystem::exists(index_path)) {
      auto in = detail::open_input(index_path);
      detail_morph::read_index(in, morph.base_forms[i]);
    }
    auto exc_path = dir / (std::string(detail_morph::kFileSuffix[i]) + ".exc");
    if (std::filesystem::exists(exc_path)) {
      auto in = detail::open_input(exc_path);
      detail_morph::read_exceptions(in, morph.exceptions[i]);
    }
  }
  auto freq_path = dir / "pos_frequency.txt";
  if (std::filesystem::exists(freq_path)) {
    auto in = detail::open_input(freq_path);
    std::size_t line_no = 0;
    for (auto& line : detail::read_lines(in)) {
      ++line_no;
      auto cols = detail::split_whitespace(line);
      if (cols.empty() || cols[0].starts_with('#')) continue;
      std::optional<Pos> pos;
      if (cols.size() == 2 && cols[1].size() == 1) pos = pos_from_letter(cols[1][0]);
      if (!pos || *pos == Pos::Other) throw ParseError(freq_path.string(), line_no, "expected '<word> <n|v|a|r>'");
      morph.pos_frequency.emplace(detail::to_lower(cols[0]), *pos);
    }
  }
  morph.validate();
  return morph;
}

/// Morphy-style lemmatization: a known base form is returned as is, then
/// the exception list is consulted, then the detachment rules in order; the
/// first candidate that is a known base form wins. Otherwise the word is
/// returned unchanged.
inline std::string lemmatize(std::string_view word, Pos pos, const MorphologyData& morph) {
  if (pos == Pos::Other) return std::string(word);
  if (morph.is_base_form(word, pos)) return std::string(word);
  const auto slot = MorphologyData::slot(pos);
  if (auto it = morph.exceptions[slot].find(std::string(word)); it != morph.exceptions[slot].end()) {
    return it->second;
  }
  for (const auto& rule : morph.rules[slot]) {
    if (word.size() <= rule.suffix.size() || !word.ends_with(rule.suffix)) continue;
    std::string candidate(word.substr(0, word.size() - rule.suffix.size()));
    candidate += rule.ending;
    if (morph.is_base_form(candidate, pos)) return candidate;
  }
  return std::string(word);
}

/// Most-frequent POS when known, else the first POS (noun, verb, adjective,
/// adverb) under which the word is a base form or reduces to one, else Noun.
inline Pos assign_pos(std::string_view word, const MorphologyData& morph) {
  if (auto it = morph.pos_frequency.find(std::string(word)); it != morph.pos_frequency.end()) {
    return it->second;
  }
  for (auto pos : kWordNetPos)
    if (morph.is_base_form(word, pos)) return pos;
  for (auto pos : kWordNetPos) {
    auto lemma = lemmatize(word, pos, morph);
    if (lemma != word) return pos;
  }
  return Pos::Noun;
}

/// Maps stop-word-filtered tokens to terms under one normalization mode.
inline std::vector<Term> normalize(const std::vector<std::string>& tokens, NormalizationMode mode,
                                   const MorphologyData& morph) {
  std::vector<Term> terms;
  terms.reserve(tokens.size());
  for (const auto& token : tokens) {
    switch (mode) {
      case NormalizationMode::None:
        terms.push_back({token, assign_pos(token, morph)});
        break;
      case NormalizationMode::Stem: {
        auto stem = porter_stem(token);
        auto pos = assign_pos(stem, morph);
        terms.push_back({std::move(stem), pos});
        break;
      }
      case NormalizationMode::Lemmatize: {
        auto pos = assign_pos(token, morph);
        terms.push_back({lemmatize(token, pos, morph), pos});
        break;
      }
    }
  }
  return terms;
}

/// clean -> tokenize -> stop-word removal -> normalization.
class Preprocessor {
 public:
  Preprocessor(StopList stoplist, MorphologyData morph)
      : stoplist_(std::move(stoplist)), morph_(std::move(morph)) {}

  std::vector<std::string> tokens(std::string_view raw) const {
    return remove_stopwords(tokenize(clean_text(raw)), stoplist_);
  }

  std::vector<Term> process(std::string_view raw, NormalizationMode mode) const {
    return normalize(tokens(raw), mode, morph_);
  }

  const StopList& stoplist() const { return stoplist_; }
  const MorphologyData& morphology() const { return morph_; }

 private:
  StopList stoplist_;
  MorphologyData morph_;
};

}  // namespace subsent::preprocess
