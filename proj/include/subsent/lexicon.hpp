#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "subsent/detail/text.hpp"
#include "subsent/error.hpp"
#include "subsent/types.hpp"

namespace subsent::lexicon {

struct SynsetTerm {
  std::string lemma;
  int sense_rank = 1;

  friend bool operator==(const SynsetTerm&, const SynsetTerm&) = default;
};

struct SynsetEntry {
  Pos pos = Pos::Noun;
  std::uint64_t synset_id = 0;
  double pos_score = 0.0;
  double neg_score = 0.0;
  std::vector<SynsetTerm> terms;
  std::string gloss;

  double obj_score() const { return 1.0 - pos_score - neg_score; }

  friend bool operator==(const SynsetEntry&, const SynsetEntry&) = default;
};

struct SentimentScore {
  double positive = 0.0;
  double negative = 0.0;
  double objective = 1.0;

  double overall() const { return negative - positive; }
};

/// How a lemma found in several synsets is scored.
enum class Aggregation {
  Mean,          // unweighted mean over the synsets
  RankWeighted,  // weights 1/sense_rank
};

/// SentiWordNet synsets, indexed by (lemma, POS).
class SwnLexicon {
 public:
  void add(SynsetEntry entry) {
    const std::size_t idx = entries_.size();
    for (std::size_t t = 0; t < entry.terms.size(); ++t) {
      index_[key(entry.terms[t].lemma, entry.pos)].push_back({idx, t});
    }
    entries_.push_back(std::move(entry));
  }

  const std::vector<SynsetEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  bool contains(std::string_view lemma, Pos pos) const { return index_.contains(key(lemma, pos)); }

  /// Aggregated score of (lemma, POS); nullopt when no synset contains it.
  std::optional<SentimentScore> lookup(std::string_view lemma, Pos pos,
                                       Aggregation agg = Aggregation::Mean) const {
    auto it = index_.find(key(lemma, pos));
    if (it == index_.end()) return std::nullopt;
    double wsum = 0.0, p = 0.0, n = 0.0;
    for (const auto& hit : it->second) {
      const auto& e = entries_[hit.entry];
      const double w = agg == Aggregation::Mean ? 1.0 : 1.0 / e.terms[hit.term].sense_rank;
      wsum += w;
      p += w * e.pos_score;
      n += w * e.neg_score;
    }
    SentimentScore s;
    s.positive = p / wsum;
    s.negative = n / wsum;
    s.objective = 1.0 - s.positive - s.negative;
    return s;
  }

  friend bool operator==(const SwnLexicon& a, const SwnLexicon& b) { return a.entries_ == b.entries_; }

 private:
  struct Hit {
    std::size_t entry;
    std::size_t term;
  };

  static std::string key(std::string_view lemma, Pos pos) {
    std::string k(lemma);
    k.push_back('#');
    k.push_back(pos_letter(pos));
    return k;
  }

  std::vector<SynsetEntry> entries_;
  std::unordered_map<std::string, std::vector<Hit>> index_;
};

/// SentiWordNet 3.0 text format: tab-separated POS, ID, PosScore, NegScore,
/// SynsetTerms (space-separated lemma#rank), Gloss. Lines starting with `#`
/// are comments.
inline SwnLexicon parse_sentiwordnet(std::istream& in, std::string_view source = "<stream>") {
  SwnLexicon lex;
  std::size_t line_no = 0;
  for (auto& line : detail::read_lines(in)) {
    ++line_no;
    if (line.starts_with('#') || detail::trim(line).empty()) continue;
    auto cols = detail::split(line, '\t');
    if (cols.size() < 5) throw ParseError(source, line_no, "expected at least 5 tab-separated columns");

    SynsetEntry e;
    auto pos_col = detail::trim(cols[0]);
    std::optional<Pos> pos;
    if (pos_col.size() == 1 && pos_col[0] != 's' && pos_col[0] != 'x') pos = pos_from_letter(pos_col[0]);
    if (!pos) throw ParseError(source, line_no, "unknown POS '" + std::string(pos_col) + "'");
    e.pos = *pos;

    auto id = detail::parse_number<std::uint64_t>(cols[1]);
    if (!id) throw ParseError(source, line_no, "malformed synset id");
    e.synset_id = *id;

    auto ps = detail::parse_number<double>(cols[2]);
    auto ns = detail::parse_number<double>(cols[3]);
    if (!ps || !ns || !std::isfinite(*ps) || !std::isfinite(*ns) || *ps < 0 || *ns < 0 || *ps > 1 || *ns > 1) {
      throw ParseError(source, line_no, "malformed score");
    }
    e.pos_score = *ps;
    e.neg_score = *ns;
    if (e.pos_score + e.neg_score > 1.0 + 1e-12) {
      throw Error(ErrorKind::InvalidEntry, std::string(source) + ":" + std::to_string(line_no) +
                                               ": PosScore + NegScore exceeds 1");
    }

    for (auto term : detail::split_whitespace(cols[4])) {
      auto hash = term.rfind('#');
      if (hash == std::string_view::npos || hash == 0) {
        throw ParseError(source, line_no, "term '" + std::string(term) + "' lacks #rank");
      }
      auto rank = detail::parse_number<int>(term.substr(hash + 1));
      if (!rank || *rank < 1) throw ParseError(source, line_no, "malformed sense rank in '" + std::string(term) + "'");
      e.terms.push_back({detail::to_lower(term.substr(0, hash)), *rank});
    }
    if (cols.size() > 5) e.gloss = std::string(cols[5]);
    lex.add(std::move(e));
  }
  return lex;
}

inline SwnLexicon parse_sentiwordnet(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return parse_sentiwordnet(in, path.string());
}

inline void write_sentiwordnet(std::ostream& out, const SwnLexicon& lex) {
  out << "# POS\tID\tPosScore\tNegScore\tSynsetTerms\tGloss\n";
  for (const auto& e : lex.entries()) {
    char id[32];
    std::snprintf(id, sizeof id, "%08llu", static_cast<unsigned long long>(e.synset_id));
    out << pos_letter(e.pos) << '\t' << id << '\t' << detail::shortest(e.pos_score) << '\t'
        << detail::shortest(e.neg_score) << '\t';
    for (std::size_t i = 0; i < e.terms.size(); ++i) {
      if (i) out << ' ';
      out << e.terms[i].lemma << '#' << e.terms[i].sense_rank;
    }
    out << '\t' << e.gloss << '\n';
  }
}

/// Like SwnLexicon::lookup but throws NotFound for an absent (lemma, POS).
inline SentimentScore lookup_sentiment(const SwnLexicon& lex, std::string_view lemma, Pos pos,
                                       Aggregation agg = Aggregation::Mean) {
  if (auto s = lex.lookup(lemma, pos, agg)) return *s;
  throw Error(ErrorKind::NotFound, "'" + std::string(lemma) + "' (" + std::string(pos_name(pos)) + ") is not in the lexicon");
}

struct PolarityCounts {
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
  double ratio_pos = 0.0;
  double ratio_neg = 0.0;
};

struct SubsetSentiment {
  double avg_pos = 0.0;
  double avg_neg = 0.0;
  double avg_obj = 0.0;
  double overall = 0.0;
  std::size_t n_matched_terms = 0;
  std::size_t n_pos_terms = 0;
  std::size_t n_neg_terms = 0;
  double ratio_pos = 0.0;  // 0 when there are no subjective terms
  double ratio_neg = 0.0;
};

/// Ratios from raw counts; throws NoSubjectiveTerms when both are zero.
inline PolarityCounts polarity_ratios(std::size_t n_pos, std::size_t n_neg) {
  if (n_pos + n_neg == 0) throw Error(ErrorKind::NoSubjectiveTerms, "no positive or negative terms");
  PolarityCounts c{n_pos, n_neg, 0.0, 0.0};
  const double total = static_cast<double>(n_pos + n_neg);
  c.ratio_pos = static_cast<double>(n_pos) / total;
  c.ratio_neg = static_cast<double>(n_neg) / total;
  return c;
}

/// Per-occurrence scores of the matched terms of a stream, in stream order.
inline std::vector<SentimentScore> matched_scores(const std::vector<Term>& stream, const SwnLexicon& lex,
                                                  Aggregation agg = Aggregation::Mean) {
  std::vector<SentimentScore> out;
  for (const auto& t : stream)
    if (auto s = lex.lookup(t.text, t.pos, agg)) out.push_back(*s);
  return out;
}

/// An occurrence is positive iff pos > neg, negative iff neg > pos; ties count as neither.
inline PolarityCounts count_polarity_terms(const std::vector<Term>& stream, const SwnLexicon& lex,
                                           Aggregation agg = Aggregation::Mean) {
  std::size_t n_pos = 0, n_neg = 0;
  for (const auto& s : matched_scores(stream, lex, agg)) {
    if (s.positive > s.negative) ++n_pos;
    else if (s.negative > s.positive) ++n_neg;
  }
  return polarity_ratios(n_pos, n_neg);
}

/// Averages over matched occurrences (repeats counted); unmatched terms are skipped.
inline SubsetSentiment score_subset(const std::vector<Term>& stream, const SwnLexicon& lex,
                                    Aggregation agg = Aggregation::Mean) {
  if (stream.empty()) throw Error(ErrorKind::EmptyInput, "empty token stream");
  auto scores = matched_scores(stream, lex, agg);
  if (scores.empty()) throw Error(ErrorKind::NoMatchedTerms, "no term of the stream is in the lexicon");

  SubsetSentiment out;
  double p = 0.0, n = 0.0;
  for (const auto& s : scores) {
    p += s.positive;
    n += s.negative;
    if (s.positive > s.negative) ++out.n_pos_terms;
    else if (s.negative > s.positive) ++out.n_neg_terms;
  }
  const double count = static_cast<double>(scores.size());
  out.n_matched_terms = scores.size();
  out.avg_pos = p / count;
  out.avg_neg = n / count;
  out.avg_obj = 1.0 - out.avg_pos - out.avg_neg;
  out.overall = out.avg_neg - out.avg_pos;
  if (out.n_pos_terms + out.n_neg_terms > 0) {
    auto ratios = polarity_ratios(out.n_pos_terms, out.n_neg_terms);
    out.ratio_pos = ratios.ratio_pos;
    out.ratio_neg = ratios.ratio_neg;
  }
  return out;
}

}  // namespace subsent::lexicon
