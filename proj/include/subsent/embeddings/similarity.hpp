#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "subsent/embeddings/model.hpp"
#include "subsent/embeddings/training.hpp"
#include "subsent/error.hpp"
#include "subsent/labeled_matrix.hpp"

namespace subsent::embeddings {

template <typename A, typename B>
double cosine_similarity(std::span<const A> u, std::span<const B> v) {
  if (u.size() != v.size()) throw Error(ErrorKind::InvalidInput, "vector sizes differ");
  double dot = 0.0, uu = 0.0, vv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double a = u[i], b = v[i];
    dot += a * b;
    uu += a * a;
    vv += b * b;
  }
  if (uu == 0.0 || vv == 0.0) throw Error(ErrorKind::ZeroVector, "cosine of a zero vector");
  const double c = dot / (std::sqrt(uu) * std::sqrt(vv));
  return std::clamp(c, -1.0, 1.0);
}

template <typename A, typename B>
double cosine_similarity(const std::vector<A>& u, const std::vector<B>& v) {
  return cosine_similarity(std::span<const A>(u), std::span<const B>(v));
}

/// Mean input vector over the in-vocabulary tokens of a stream, repeats included.
template <typename Tokens>
std::vector<double> subset_vector_w2v(const EmbeddingModel& model, const Tokens& tokens) {
  std::vector<double> sum(model.dim(), 0.0);
  std::size_t known = 0;
  for (const auto& t : tokens) {
    auto idx = model.vocabulary.find(t);
    if (!idx) continue;
    auto row = model.input.row(*idx);
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += row[k];
    ++known;
  }
  if (known == 0) throw Error(ErrorKind::NoKnownTokens, "no token of the stream is in the vocabulary");
  for (auto& x : sum) x /= static_cast<double>(known);
  return sum;
}

/// Inferred paragraph vector of the whole stream.
template <typename Tokens>
std::vector<double> subset_vector_d2v(const EmbeddingModel& model, const Tokens& tokens, std::uint32_t infer_epochs) {
  auto v = infer_doc_vector(model, tokens, infer_epochs);
  return {v.begin(), v.end()};
}

struct LabeledVector {
  std::string label;
  std::vector<double> values;
};

struct SimilarityMatrix {
  LabeledMatrix matrix;
  CellRef most_similar;
  CellRef least_similar;
};

inline SimilarityMatrix pairwise_similarity_matrix(const std::vector<LabeledVector>& vectors) {
  if (vectors.size() < 2) throw Error(ErrorKind::InsufficientSubsets, "need at least 2 vectors");
  std::vector<std::string> labels;
  for (const auto& v : vectors) labels.push_back(v.label);
  SimilarityMatrix out{LabeledMatrix(labels), {}, {}};
  const std::size_t n = vectors.size();
  for (const auto& v : vectors) {
    if (std::all_of(v.values.begin(), v.values.end(), [](double x) { return x == 0.0; })) {
      throw Error(ErrorKind::ZeroVector, "subset " + v.label + " has a zero vector");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    out.matrix.at(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double c = cosine_similarity(vectors[i].values, vectors[j].values);
      out.matrix.at(i, j) = out.matrix.at(j, i) = c;
    }
  }
  out.most_similar = argmax_pair(out.matrix);
  out.least_similar = argmin_pair(out.matrix);
  return out;
}

}  // namespace subsent::embeddings
