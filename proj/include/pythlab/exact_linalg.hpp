#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pythlab/rational.hpp"

namespace pythlab {

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static RatMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rat& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rat& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RatMatrix transpose() const;
  RatMatrix operator*(const RatMatrix& o) const;
  std::vector<Rat> operator*(const std::vector<Rat>& v) const;
  bool is_symmetric() const;

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rat> data_;
};

// One term d * (c . v)^2 of a diagonalised quadratic form.
struct WeightedRow {
  Rat weight;
  std::vector<Rat> coeffs;
};

struct PsdFactorization {
  bool psd = false;
  // Positive-weight rows with A == sum weight * coeffs coeffs^T; size == rank(A).
  std::vector<WeightedRow> rows;
  std::string failure;
};

// Exact symmetric LDL^T with diagonal pivoting; semidefinite matrices allowed.
PsdFactorization ldlt_psd(const RatMatrix& a);

// Reflection H = I - 2 v v^T / (v^T v), v = a - e_last, with H a = e_last.
// Requires sum a_i^2 == 1; returns the identity when a == e_last.
RatMatrix householder_to_last(const std::vector<Rat>& a);

// One solution of A x = b (free variables set to zero), or nullopt if inconsistent.
std::optional<std::vector<Rat>> solve_linear(const RatMatrix& a, const std::vector<Rat>& b);

}  // namespace pythlab
