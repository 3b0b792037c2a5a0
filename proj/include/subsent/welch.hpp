#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "subsent/error.hpp"
#include "subsent/labeled_matrix.hpp"
#include "subsent/lexicon.hpp"
#include "subsent/student_t.hpp"

namespace subsent::stats {

enum class Channel { Positive, Negative, Overall };

constexpr std::string_view to_string(Channel c) {
  switch (c) {
    case Channel::Positive: return "positive";
    case Channel::Negative: return "negative";
    case Channel::Overall: return "overall";
  }
  return "overall";
}

/// Per matched-term-occurrence scores of one subset on one channel.
struct ScoreSample {
  std::string subset_id;
  Channel channel = Channel::Overall;
  std::vector<double> values;
};

inline ScoreSample make_sample(std::string subset_id, Channel channel,
                               const std::vector<lexicon::SentimentScore>& scores) {
  ScoreSample s{std::move(subset_id), channel, {}};
  s.values.reserve(scores.size());
  for (const auto& sc : scores) {
    switch (channel) {
      case Channel::Positive: s.values.push_back(sc.positive); break;
      case Channel::Negative: s.values.push_back(sc.negative); break;
      case Channel::Overall: s.values.push_back(sc.negative - sc.positive); break;
    }
  }
  return s;
}

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p_two_sided = 1.0;
  std::size_t n_a = 0, n_b = 0;
  double mean_a = 0.0, mean_b = 0.0;
  double var_a = 0.0, var_b = 0.0;
};

namespace detail_welch {

inline void moments(std::span<const double> v, double& mean, double& var) {
  double sum = 0.0;
  for (double x : v) sum += x;
  mean = sum / static_cast<double>(v.size());
  double ss = 0.0, comp = 0.0;
  for (double x : v) {
    const double d = x - mean;
    ss += d * d;
    comp += d;
  }
  // corrected two-pass
  var = (ss - comp * comp / static_cast<double>(v.size())) / static_cast<double>(v.size() - 1);
  if (var < 0) var = 0;
}

}  // namespace detail_welch

/// Welch's unequal-variance two-sample t-test, two-sided, with
/// Welch-Satterthwaite degrees of freedom. Variances use n - 1.
inline WelchResult welch_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw Error(ErrorKind::InsufficientData, "each sample needs at least 2 values (got " +
                                                 std::to_string(a.size()) + " and " +
                                                 std::to_string(b.size()) + ")");
  }
  WelchResult r;
  r.n_a = a.size();
  r.n_b = b.size();
  detail_welch::moments(a, r.mean_a, r.var_a);
  detail_welch::moments(b, r.mean_b, r.var_b);
  const double na = static_cast<double>(r.n_a), nb = static_cast<double>(r.n_b);

  if (r.var_a == 0.0 && r.var_b == 0.0) {
    if (r.mean_a != r.mean_b) {
      throw Error(ErrorKind::DegenerateVariance, "both samples are constant with different means");
    }
    r.t = 0.0;
    r.df = na + nb - 2.0;
    r.p_two_sided = 1.0;
    return r;
  }

  const double se_a = r.var_a / na, se_b = r.var_b / nb;
  const double se2 = se_a + se_b;
  r.t = (r.mean_a - r.mean_b) / std::sqrt(se2);
  r.df = se2 * se2 / (se_a * se_a / (na - 1.0) + se_b * se_b / (nb - 1.0));
  r.p_two_sided = std::min(1.0, 2.0 * student_t_sf(std::fabs(r.t), r.df));
  return r;
}

inline WelchResult welch_t_test(const ScoreSample& a, const ScoreSample& b) {
  return welch_t_test(std::span<const double>(a.values), std::span<const double>(b.values));
}

struct WelchMatrix {
  Channel channel = Channel::Overall;
  LabeledMatrix p_values;
  std::vector<WelchResult> results;  // row-major, diagonal left default
  CellRef min_pair;                  // smallest off-diagonal p-value
};

/// Two-sided p-values for every pair of samples; diagonal is 1.
inline WelchMatrix pairwise_welch_matrix(const std::vector<ScoreSample>& samples, Channel channel) {
  if (samples.size() < 2) throw Error(ErrorKind::InsufficientSubsets, "need at least 2 samples");
  std::vector<std::string> labels;
  for (const auto& s : samples) {
    if (s.channel != channel) {
      throw Error(ErrorKind::InvalidInput, "sample '" + s.subset_id + "' is on channel " +
                                               std::string(to_string(s.channel)));
    }
    labels.push_back(s.subset_id);
  }
  WelchMatrix out{channel, LabeledMatrix(labels), std::vector<WelchResult>(samples.size() * samples.size()), {}};
  const std::size_t n = samples.size();
  for (std::size_t i = 0; i < n; ++i) {
    out.p_values.at(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      WelchResult r;
      try {
        r = welch_t_test(samples[i], samples[j]);
      } catch (const Error& e) {
        throw Error(e.kind(), "subsets " + samples[i].subset_id + " vs " + samples[j].subset_id + ": " + e.what());
      }
      out.results[i * n + j] = r;
      WelchResult swapped = r;
      swapped.t = -r.t;
      std::swap(swapped.n_a, swapped.n_b);
      std::swap(swapped.mean_a, swapped.mean_b);
      std::swap(swapped.var_a, swapped.var_b);
      out.results[j * n + i] = swapped;
      out.p_values.at(i, j) = out.p_values.at(j, i) = r.p_two_sided;
    }
  }
  out.min_pair = argmin_pair(out.p_values);
  return out;
}

}  // namespace subsent::stats
