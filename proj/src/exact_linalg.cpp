#include "pythlab/exact_linalg.hpp"

#include <numeric>
#include <stdexcept>

namespace pythlab {

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix dimension mismatch");
  RatMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rat& a = (*this)(i, k);
      if (sgn(a) == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
    }
  return r;
}

std::vector<Rat> RatMatrix::operator*(const std::vector<Rat>& v) const {
  if (cols_ != v.size()) throw std::invalid_argument("matrix dimension mismatch");
  std::vector<Rat> r(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
  return r;
}

bool RatMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

PsdFactorization ldlt_psd(const RatMatrix& a) {
  PsdFactorization out;
  if (!a.is_symmetric()) {
    out.failure = "matrix is not symmetric";
    return out;
  }
  const std::size_t n = a.rows();
  RatMatrix w = a;
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  // Columns of L in original coordinates, built as pivots are eliminated.
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pivot = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      int s = sgn(w(i, i));
      if (s < 0) {
        out.failure = "negative pivot";
        return out;
      }
      if (s > 0 && pivot == n) pivot = i;
    }
    if (pivot == n) {
      // Remaining block has zero diagonal; PSD only if it vanishes entirely.
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!done[i] && !done[j] && sgn(w(i, j)) != 0) {
            out.failure = "zero pivot with nonzero off-diagonal entry";
            return out;
          }
      break;
    }
    const Rat d = w(pivot, pivot);
    WeightedRow row{d, std::vector<Rat>(n)};
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i]) row.coeffs[i] = w(i, pivot) / d;
    done[pivot] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || sgn(row.coeffs[i]) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (done[j]) continue;
        w(i, j) -= row.coeffs[i] * w(pivot, j);
      }
    }
    out.rows.push_back(std::move(row));
  }
  out.psd = true;
  return out;
}

RatMatrix householder_to_last(const std::vector<Rat>& a) {
  const std::size_t n = a.size();
  if (n == 0) throw std::invalid_argument("empty vector");
  Rat norm2 = 0;
  for (const auto& v : a) norm2 += v * v;
  if (norm2 != 1) throw std::invalid_argument("vector must have unit squared norm");
  std::vector<Rat> v = a;
  v[n - 1] -= 1;
  Rat vv = 0;
  for (const auto& x : v) vv += x * x;
  RatMatrix h = RatMatrix::identity(n);
  if (sgn(vv) == 0) return h;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) -= 2 * v[i] * v[j] / vv;
  return h;
}

std::optional<std::vector<Rat>> solve_linear(const RatMatrix& a, const std::vector<Rat>& b) {
  const std::size_t m = a.rows(), n = a.cols();
  if (b.size() != m) throw std::invalid_argument("rhs dimension mismatch");
  RatMatrix w(m, n + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) w(i, j) = a(i, j);
    w(i, n) = b[i];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t p = row;
    while (p < m && sgn(w(p, col)) == 0) ++p;
    if (p == m) continue;
    if (p != row)
      for (std::size_t j = 0; j <= n; ++j) std::swap(w(p, j), w(row, j));
    Rat inv = 1 / w(row, col);
    for (std::size_t j = col; j <= n; ++j) w(row, j) *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || sgn(w(i, col)) == 0) continue;
      Rat f = w(i, col);
      for (std::size_t j = col; j <= n; ++j) w(i, j) -= f * w(row, j);
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < m; ++i)
    if (sgn(w(i, n)) != 0) return std::nullopt;
  std::vector<Rat> x(n);
  for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = w(i, n);
  return x;
}

}  // namespace pythlab
