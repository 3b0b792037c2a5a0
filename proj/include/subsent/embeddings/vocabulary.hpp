#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "subsent/embeddings/random.hpp"
#include "subsent/error.hpp"

namespace subsent::embeddings {

/// Word index, frequencies and the frequency^0.75 negative-sampling distribution.
class Vocabulary {
 public:
  static constexpr double kSamplingPower = 0.75;

  Vocabulary() = default;

  /// Words ordered by (frequency desc, word asc). Throws EmptyVocabulary when empty.
  static Vocabulary from_counts(std::vector<std::pair<std::string, std::uint64_t>> counts) {
    if (counts.empty()) throw Error(ErrorKind::EmptyVocabulary, "no word survives the frequency floor");
    std::sort(counts.begin(), counts.end(), [](const auto& a, const auto& b) {
      return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    Vocabulary v;
    for (auto& [word, freq] : counts) {
      v.index_.emplace(word, v.words_.size());
      v.words_.push_back(std::move(word));
      v.freqs_.push_back(freq);
      v.total_ += freq;
    }
    v.build_table();
    return v;
  }

  std::size_t size() const { return words_.size(); }
  std::uint64_t total_token_count() const { return total_; }
  const std::string& word(std::size_t i) const { return words_[i]; }
  std::uint64_t frequency(std::size_t i) const { return freqs_[i]; }
  const std::vector<std::string>& words() const { return words_; }

  std::optional<std::size_t> find(std::string_view word) const {
    auto it = index_.find(std::string(word));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// P(word i) under the negative-sampling distribution.
  double sampling_probability(std::size_t i) const { return i == 0 ? cumulative_[0] : cumulative_[i] - cumulative_[i - 1]; }
  const std::vector<double>& cumulative() const { return cumulative_; }

  std::size_t sample(Rng& rng) const {
    const double u = rng.uniform();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) return words_.size() - 1;
    return static_cast<std::size_t>(it - cumulative_.begin());
  }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.words_ == b.words_ && a.freqs_ == b.freqs_;
  }

 private:
  void build_table() {
    cumulative_.resize(words_.size());
    double z = 0.0;
    for (auto f : freqs_) z += std::pow(static_cast<double>(f), kSamplingPower);
    double acc = 0.0;
    for (std::size_t i = 0; i < freqs_.size(); ++i) {
      acc += std::pow(static_cast<double>(freqs_[i]), kSamplingPower) / z;
      cumulative_[i] = acc;
    }
    cumulative_.back() = 1.0;
  }

  std::vector<std::string> words_;
  std::vector<std::uint64_t> freqs_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<double> cumulative_;
  std::uint64_t total_ = 0;
};

/// Counts every token of the corpus and keeps words seen at least `min_count` times.
template <typename Corpus>
Vocabulary build_vocabulary(const Corpus& corpus, std::uint64_t min_count) {
  std::map<std::string, std::uint64_t> counts;
  std::size_t tokens = 0;
  for (const auto& doc : corpus) {
    for (const auto& w : doc) {
      ++counts[std::string(w)];
      ++tokens;
    }
  }
  if (tokens == 0) throw Error(ErrorKind::EmptyVocabulary, "corpus has no tokens");
  std::vector<std::pair<std::string, std::uint64_t>> kept;
  for (auto& [w, c] : counts)
    if (c >= min_count) kept.emplace_back(w, c);
  return Vocabulary::from_counts(std::move(kept));
}

}  // namespace subsent::embeddings
