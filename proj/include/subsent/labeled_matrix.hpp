#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "subsent/detail/text.hpp"

namespace subsent {

/// Square matrix whose rows and columns share one ordered label set.
struct LabeledMatrix {
  std::vector<std::string> labels;
  std::vector<double> values;  // row-major, n*n

  LabeledMatrix() = default;
  explicit LabeledMatrix(std::vector<std::string> l)
      : labels(std::move(l)), values(labels.size() * labels.size(), 0.0) {}

  std::size_t size() const { return labels.size(); }
  double& at(std::size_t i, std::size_t j) { return values[i * labels.size() + j]; }
  double at(std::size_t i, std::size_t j) const { return values[i * labels.size() + j]; }
};

/// An off-diagonal cell (i < j) and its value.
struct CellRef {
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;
};

/// Upper-triangle extremum; ties resolve to the first cell in row-major order.
template <typename Better>
CellRef extreme_pair(const LabeledMatrix& m, Better better) {
  CellRef best{0, 1, m.at(0, 1)};
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (better(m.at(i, j), best.value)) best = {i, j, m.at(i, j)};
  return best;
}

inline CellRef argmax_pair(const LabeledMatrix& m) {
  return extreme_pair(m, [](double a, double b) { return a > b; });
}
inline CellRef argmin_pair(const LabeledMatrix& m) {
  return extreme_pair(m, [](double a, double b) { return a < b; });
}

/// CSV with a `subset` corner cell, labels across the header row and down the first column.
template <typename Format>
void write_matrix_csv(std::ostream& out, const LabeledMatrix& m, Format format) {
  out << "subset";
  for (const auto& l : m.labels) out << ',' << detail::quote_csv(l);
  out << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << detail::quote_csv(m.labels[i]);
    for (std::size_t j = 0; j < m.size(); ++j) out << ',' << format(m.at(i, j));
    out << '\n';
  }
}

inline void write_matrix_csv(std::ostream& out, const LabeledMatrix& m, int decimals) {
  write_matrix_csv(out, m, [decimals](double v) { return detail::fixed(v, decimals); });
}

}  // namespace subsent
