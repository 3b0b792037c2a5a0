#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "subsent/embeddings/matrix.hpp"
#include "subsent/embeddings/model.hpp"
#include "subsent/error.hpp"

namespace subsent::embeddings {

template <std::floating_point T>
T sigmoid(T x) {
  return x >= 0 ? T(1) / (T(1) + std::exp(-x)) : std::exp(x) / (T(1) + std::exp(x));
}

/// -ln sigmoid(x), evaluated without overflow.
template <std::floating_point T>
T neg_log_sigmoid(T x) {
  return x >= 0 ? std::log1p(std::exp(-x)) : -x + std::log1p(std::exp(x));
}

/// Sparse gradient: one entry per distinct row touched.
template <std::floating_point T>
using RowGradients = std::vector<std::pair<std::size_t, std::vector<T>>>;

template <std::floating_point T>
struct LossGrad {
  T loss = 0;
  std::vector<T> hidden;        // context mean h
  std::vector<T> grad_hidden;   // dL/dh
  RowGradients<T> grad_input;   // dL/d input rows (context constituents)
  RowGradients<T> grad_output;  // dL/d output rows (center and negatives)
};

namespace detail_obj {

template <std::floating_point T>
std::vector<T>& row_slot(RowGradients<T>& grads, std::size_t row, std::size_t dim) {
  for (auto& [r, g] : grads)
    if (r == row) return g;
  grads.emplace_back(row, std::vector<T>(dim, T(0)));
  return grads.back().second;
}

}  // namespace detail_obj

/// Negative-sampling CBOW objective for one training example:
///   h = mean of the context input rows,
///   L = -ln s(h.v'_center) - sum_neg ln s(-h.v'_neg).
/// Computation runs in T regardless of the storage type E.
template <std::floating_point T = double, typename E>
LossGrad<T> cbow_loss_grad(const Matrix<E>& input, const Matrix<E>& output,
                           std::span<const std::size_t> context_rows, std::size_t center,
                           std::span<const std::size_t> negatives) {
  if (context_rows.empty()) throw Error(ErrorKind::EmptyContext, "context has no rows");
  const std::size_t dim = input.cols();
  LossGrad<T> out;
  out.hidden.assign(dim, T(0));
  out.grad_hidden.assign(dim, T(0));
  for (auto r : context_rows) {
    auto v = input.row(r);
    for (std::size_t k = 0; k < dim; ++k) out.hidden[k] += static_cast<T>(v[k]);
  }
  const T inv = T(1) / static_cast<T>(context_rows.size());
  for (auto& x : out.hidden) x *= inv;

  auto score = [&](std::size_t target, T label) {
    auto v = output.row(target);
    T f = 0;
    for (std::size_t k = 0; k < dim; ++k) f += out.hidden[k] * static_cast<T>(v[k]);
    out.loss += label > 0 ? neg_log_sigmoid(f) : neg_log_sigmoid(-f);
    const T coeff = sigmoid(f) - label;  // dL/df
    auto& g_out = detail_obj::row_slot(out.grad_output, target, dim);
    for (std::size_t k = 0; k < dim; ++k) {
      out.grad_hidden[k] += coeff * static_cast<T>(v[k]);
      g_out[k] += coeff * out.hidden[k];
    }
  };
  score(center, T(1));
  for (auto n : negatives) score(n, T(0));

  for (auto r : context_rows) {
    auto& g = detail_obj::row_slot(out.grad_input, r, dim);
    for (std::size_t k = 0; k < dim; ++k) g[k] += out.grad_hidden[k] * inv;
  }
  return out;
}

/// PV-DM objective: the document's input row joins the word context.
template <std::floating_point T = double, typename E>
LossGrad<T> pvdm_loss_grad(const Matrix<E>& input, const Matrix<E>& output, std::size_t doc_row,
                           std::span<const std::size_t> context_rows, std::size_t center,
                           std::span<const std::size_t> negatives) {
  std::vector<std::size_t> rows(context_rows.begin(), context_rows.end());
  rows.push_back(doc_row);
  return cbow_loss_grad<T>(input, output, std::span<const std::size_t>(rows), center, negatives);
}

/// Loss and gradients of a trained or initialized word model, by word index.
inline LossGrad<double> cbow_loss_grad(const EmbeddingModel& model, std::size_t center,
                                       std::span<const std::size_t> context,
                                       std::span<const std::size_t> negatives) {
  return cbow_loss_grad<double>(model.input, model.output, context, center, negatives);
}

}  // namespace subsent::embeddings
