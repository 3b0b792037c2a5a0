#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "subsent/embeddings/matrix.hpp"
#include "subsent/embeddings/vocabulary.hpp"
#include "subsent/error.hpp"

namespace subsent::embeddings {

struct Hyperparams {
  std::uint32_t dim = 100;
  std::uint32_t window = 5;
  std::uint32_t epochs = 20;
  std::uint32_t negative = 5;
  double initial_lr = 0.025;
  double final_lr = 0.0001;
  std::uint32_t min_count = 2;
  std::uint64_t seed = 42;
  std::uint32_t workers = 1;
  double sample = 0.0;  // frequent-word subsampling threshold, 0 = off
  std::uint32_t infer_epochs = 20;

  void validate() const {
    if (dim < 1 || window < 1 || negative < 1) {
      throw Error(ErrorKind::InvalidConfig, "dim, window and negative must be >= 1");
    }
    if (!(initial_lr > final_lr) || !(final_lr > 0)) {
      throw Error(ErrorKind::InvalidConfig, "learning rates must satisfy initial_lr > final_lr > 0");
    }
    if (workers < 1) throw Error(ErrorKind::InvalidConfig, "workers must be >= 1");
    if (sample < 0) throw Error(ErrorKind::InvalidConfig, "sample must be >= 0");
  }

  friend bool operator==(const Hyperparams&, const Hyperparams&) = default;
};

enum class ModelKind : std::uint32_t { Word = 0, Document = 1 };

/// Trained weights. Input rows are the V word vectors followed, for
/// Document models, by one row per training document.
struct EmbeddingModel {
  ModelKind kind = ModelKind::Word;
  Hyperparams hyperparams;
  Vocabulary vocabulary;
  Matrix<float> input;
  Matrix<float> output;
  std::vector<std::string> doc_ids;

  std::size_t dim() const { return input.cols(); }

  std::optional<std::span<const float>> word_vector(std::string_view word) const {
    auto idx = vocabulary.find(word);
    if (!idx) return std::nullopt;
    return input.row(*idx);
  }

  std::optional<std::size_t> doc_row(std::string_view doc_id) const {
    for (std::size_t d = 0; d < doc_ids.size(); ++d)
      if (doc_ids[d] == doc_id) return vocabulary.size() + d;
    return std::nullopt;
  }

  std::span<const float> doc_vector(std::size_t d) const { return input.row(vocabulary.size() + d); }

  friend bool operator==(const EmbeddingModel& a, const EmbeddingModel& b) {
    return a.kind == b.kind && a.hyperparams == b.hyperparams && a.vocabulary == b.vocabulary &&
           a.input == b.input && a.output == b.output && a.doc_ids == b.doc_ids;
  }
};

}  // namespace subsent::embeddings
