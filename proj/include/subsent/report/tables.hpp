#pragma once

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

#include "subsent/detail/text.hpp"
#include "subsent/error.hpp"
#include "subsent/lexicon.hpp"

namespace subsent::report {

inline constexpr int kMatchRateDecimals = 4;
inline constexpr int kSentimentDecimals = 6;
inline constexpr int kSimilarityDecimals = 4;
inline constexpr int kPValueDecimals = 3;
inline constexpr int kFullPrecisionDigits = 12;

struct MatchRateRow {
  std::string subset;
  double original = 0.0;
  double stemmed = 0.0;
  double lemmatized = 0.0;
};

/// Column means of the rows, labelled "average".
inline MatchRateRow match_rate_average(const std::vector<MatchRateRow>& rows) {
  if (rows.empty()) throw Error(ErrorKind::InsufficientSubsets, "no match-rate rows");
  MatchRateRow avg{"average", 0, 0, 0};
  for (const auto& r : rows) {
    avg.original += r.original;
    avg.stemmed += r.stemmed;
    avg.lemmatized += r.lemmatized;
  }
  const double n = static_cast<double>(rows.size());
  avg.original /= n;
  avg.stemmed /= n;
  avg.lemmatized /= n;
  return avg;
}

/// `subset,original,stemmed,lemmatized`, one row per subset plus an averages row.
inline void emit_match_rate_table(std::ostream& out, const std::vector<MatchRateRow>& rows) {
  auto line = [&](const MatchRateRow& r) {
    out << detail::quote_csv(r.subset) << ',' << detail::fixed(r.original, kMatchRateDecimals) << ','
        << detail::fixed(r.stemmed, kMatchRateDecimals) << ',' << detail::fixed(r.lemmatized, kMatchRateDecimals)
        << '\n';
  };
  out << "subset,original,stemmed,lemmatized\n";
  for (const auto& r : rows) line(r);
  line(match_rate_average(rows));
}

struct SentimentRow {
  std::string subset_id;
  std::string subset_name;
  lexicon::SubsetSentiment sentiment;
  double match_rate = 0.0;
};

inline void emit_sentiment_scores(std::ostream& out, const std::vector<SentimentRow>& rows) {
  const int d = kSentimentDecimals;
  out << "subset_id,subset_name,avg_pos,avg_neg,avg_obj,overall,n_pos,n_neg,ratio_pos,ratio_neg,match_rate\n";
  for (const auto& r : rows) {
    const auto& s = r.sentiment;
    out << detail::quote_csv(r.subset_id) << ',' << detail::quote_csv(r.subset_name) << ','
        << detail::fixed(s.avg_pos, d) << ',' << detail::fixed(s.avg_neg, d) << ',' << detail::fixed(s.avg_obj, d)
        << ',' << detail::fixed(s.overall, d) << ',' << s.n_pos_terms << ',' << s.n_neg_terms << ','
        << detail::fixed(s.ratio_pos, d) << ',' << detail::fixed(s.ratio_neg, d) << ','
        << detail::fixed(r.match_rate, d) << '\n';
  }
}

/// Polarity counts ordered from the smallest negative ratio to the largest.
inline void emit_sentiment_ratios(std::ostream& out, std::vector<SentimentRow> rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.sentiment.ratio_neg < b.sentiment.ratio_neg;
  });
  const int d = kSentimentDecimals;
  out << "subset_id,subset_name,n_pos,n_neg,ratio_pos,ratio_neg\n";
  for (const auto& r : rows) {
    const auto& s = r.sentiment;
    out << detail::quote_csv(r.subset_id) << ',' << detail::quote_csv(r.subset_name) << ',' << s.n_pos_terms << ','
        << s.n_neg_terms << ',' << detail::fixed(s.ratio_pos, d) << ',' << detail::fixed(s.ratio_neg, d) << '\n';
  }
}

}  // namespace subsent::report
