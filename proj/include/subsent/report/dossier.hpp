#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "subsent/detail/text.hpp"
#include "subsent/error.hpp"
#include "subsent/labeled_matrix.hpp"
#include "subsent/report/tables.hpp"

namespace subsent::report {

inline constexpr const char* kMethodW2vMax = "w2v_most_similar";
inline constexpr const char* kMethodD2vMax = "d2v_most_similar";
inline constexpr const char* kMethodW2vMin = "w2v_least_similar";
inline constexpr const char* kMethodD2vMin = "d2v_least_similar";
inline constexpr const char* kMethodOverall = "overall_max_difference";
inline constexpr const char* kMethodRatio = "ratio_max_difference";

/// Everything known about one headline pair of subsets.
struct PairDossier {
  std::vector<std::string> methods;
  std::size_t a = 0;  // subset indices, a < b
  std::size_t b = 0;
  std::string id_a, id_b;
  double w2v_cosine = 0.0;
  double d2v_cosine = 0.0;
  lexicon::SubsetSentiment sentiment_a, sentiment_b;
  double p_positive = 1.0;
  double p_negative = 1.0;
  double p_overall = 1.0;
};

struct DossierInputs {
  const std::vector<SentimentRow>& sentiment;
  const LabeledMatrix& w2v;
  const LabeledMatrix& d2v;
  const LabeledMatrix& p_positive;
  const LabeledMatrix& p_negative;
  const LabeledMatrix& p_overall;
};

namespace detail_dossier {

// Largest |value_i - value_j| over i < j; first pair wins ties.
template <typename Value>
CellRef max_difference(std::size_t n, Value value) {
  CellRef best{0, 1, -1.0};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = std::fabs(value(i) - value(j));
      if (d > best.value) best = {i, j, d};
    }
  return best;
}

}  // namespace detail_dossier

/// One dossier per headline pair: most and least similar under each
/// embedding, largest overall-sentiment gap and largest polarity-ratio gap.
/// A pair selected by several methods yields a single dossier carrying all
/// of their tags, in the order listed above.
inline std::vector<PairDossier> build_pair_dossiers(const DossierInputs& in) {
  const std::size_t n = in.sentiment.size();
  if (n < 2) throw Error(ErrorKind::InsufficientSubsets, "pair dossiers need at least 2 subsets");
  for (const auto* m : {&in.w2v, &in.d2v, &in.p_positive, &in.p_negative, &in.p_overall}) {
    if (m->size() != n) throw Error(ErrorKind::InvalidInput, "matrix size does not match subset count");
  }

  std::vector<std::pair<const char*, CellRef>> headlines = {
      {kMethodW2vMax, argmax_pair(in.w2v)},
      {kMethodD2vMax, argmax_pair(in.d2v)},
      {kMethodW2vMin, argmin_pair(in.w2v)},
      {kMethodD2vMin, argmin_pair(in.d2v)},
      {kMethodOverall, detail_dossier::max_difference(n, [&](std::size_t i) { return in.sentiment[i].sentiment.overall; })},
      {kMethodRatio, detail_dossier::max_difference(n, [&](std::size_t i) { return in.sentiment[i].sentiment.ratio_pos; })},
  };

  std::vector<PairDossier> out;
  for (const auto& [method, cell] : headlines) {
    auto it = std::find_if(out.begin(), out.end(), [&](const PairDossier& d) { return d.a == cell.row && d.b == cell.col; });
    if (it != out.end()) {
      it->methods.emplace_back(method);
      continue;
    }
    PairDossier d;
    d.methods.emplace_back(method);
    d.a = cell.row;
    d.b = cell.col;
    d.id_a = in.sentiment[d.a].subset_id;
    d.id_b = in.sentiment[d.b].subset_id;
    d.w2v_cosine = in.w2v.at(d.a, d.b);
    d.d2v_cosine = in.d2v.at(d.a, d.b);
    d.sentiment_a = in.sentiment[d.a].sentiment;
    d.sentiment_b = in.sentiment[d.b].sentiment;
    d.p_positive = in.p_positive.at(d.a, d.b);
    d.p_negative = in.p_negative.at(d.a, d.b);
    d.p_overall = in.p_overall.at(d.a, d.b);
    out.push_back(std::move(d));
  }
  return out;
}

/// Numbers use the same precision as the stage tables they summarize.
inline void emit_pair_dossiers(std::ostream& out, const std::vector<PairDossier>& dossiers) {
  const int s = kSentimentDecimals;
  out << "methods,subset_a,subset_b,w2v_cosine,d2v_cosine,"
         "a_avg_pos,a_avg_neg,a_avg_obj,a_overall,b_avg_pos,b_avg_neg,b_avg_obj,b_overall,"
         "p_positive,p_negative,p_overall,"
         "a_n_pos,a_n_neg,a_ratio_pos,a_ratio_neg,b_n_pos,b_n_neg,b_ratio_pos,b_ratio_neg\n";
  for (const auto& d : dossiers) {
    std::string methods;
    for (const auto& m : d.methods) methods += (methods.empty() ? "" : ";") + m;
    out << methods << ',' << detail::quote_csv(d.id_a) << ',' << detail::quote_csv(d.id_b) << ','
        << detail::fixed(d.w2v_cosine, kSimilarityDecimals) << ',' << detail::fixed(d.d2v_cosine, kSimilarityDecimals);
    for (const auto* x : {&d.sentiment_a, &d.sentiment_b}) {
      out << ',' << detail::fixed(x->avg_pos, s) << ',' << detail::fixed(x->avg_neg, s) << ','
          << detail::fixed(x->avg_obj, s) << ',' << detail::fixed(x->overall, s);
    }
    out << ',' << detail::fixed(d.p_positive, kPValueDecimals) << ',' << detail::fixed(d.p_negative, kPValueDecimals)
        << ',' << detail::fixed(d.p_overall, kPValueDecimals);
    for (const auto* x : {&d.sentiment_a, &d.sentiment_b}) {
      out << ',' << x->n_pos_terms << ',' << x->n_neg_terms << ',' << detail::fixed(x->ratio_pos, s) << ','
          << detail::fixed(x->ratio_neg, s);
    }
    out << '\n';
  }
}

}  // namespace subsent::report
