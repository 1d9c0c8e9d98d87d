#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "fewdist/util.hpp"

namespace fewdist {

template <class T>
class DenseMatrix {
 public:
  DenseMatrix() : rows_(0), cols_(0) {}
  DenseMatrix(std::size_t rows, std::size_t cols, T fill = T())
      : rows_(rows), cols_(cols), data_(rows * cols, std::move(fill)) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool operator==(const DenseMatrix&) const = default;

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
  }

  T trace() const {
    T t = T();
    for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i);
    return t;
  }

  DenseMatrix transposed() const {
    DenseMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j)
      std::swap(data_[a * cols_ + j], data_[b * cols_ + j]);
  }

  friend DenseMatrix operator+(const DenseMatrix& x, const DenseMatrix& y) {
    DenseMatrix r(x.rows_, x.cols_);
    for (std::size_t i = 0; i < x.data_.size(); ++i) r.data_[i] = x.data_[i] + y.data_[i];
    return r;
  }
  friend DenseMatrix operator-(const DenseMatrix& x, const DenseMatrix& y) {
    DenseMatrix r(x.rows_, x.cols_);
    for (std::size_t i = 0; i < x.data_.size(); ++i) r.data_[i] = x.data_[i] - y.data_[i];
    return r;
  }
  friend DenseMatrix operator*(const DenseMatrix& x, const DenseMatrix& y) {
    DenseMatrix r(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const T& a = x(i, k);
        if (a == T()) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) += a * y(k, j);
      }
    return r;
  }
  friend DenseMatrix operator*(const T& s, const DenseMatrix& x) {
    DenseMatrix r(x.rows_, x.cols_);
    for (std::size_t i = 0; i < x.data_.size(); ++i) r.data_[i] = s * x.data_[i];
    return r;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<T> data_;
};

/// Exact rank by fraction-free (Bareiss) elimination. Works over any exactly
/// represented field; pivots are the first nonzero entries, so the result is
/// deterministic. No size-cap check here; rank_exact applies the cap.
template <class F>
std::size_t bareiss_rank(DenseMatrix<F> m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t rank = 0;
  F prev(1);
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && m(pivot, col) == F()) ++pivot;
    if (pivot == rows) continue;
    m.swap_rows(rank, pivot);
    const F& p = m(rank, col);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j)
        m(i, j) = (p * m(i, j) - m(i, col) * m(rank, j)) / prev;
      m(i, col) = F();
    }
    prev = p;
    ++rank;
  }
  return rank;
}

template <class F>
int sign_of(const F& x) {
  return sign(x);
}

/// Exact positive-semidefinite test with rank, by pivoted symmetric
/// elimination: a symmetric matrix is PSD iff every Schur complement has a
/// nonnegative diagonal and vanishes entirely once its diagonal is zero.
/// Returns the rank, or nullopt if the matrix is not PSD.
template <class F>
std::optional<std::size_t> psd_rank(DenseMatrix<F> m) {
  const std::size_t n = m.rows();
  if (!m.is_symmetric()) return std::nullopt;
  std::vector<std::size_t> active(n);
  for (std::size_t i = 0; i < n; ++i) active[i] = i;
  std::size_t rank = 0;
  while (!active.empty()) {
    std::size_t pick = active.size();
    for (std::size_t idx = 0; idx < active.size(); ++idx) {
      int s = sign_of(m(active[idx], active[idx]));
      if (s < 0) return std::nullopt;
      if (s > 0 && pick == active.size()) pick = idx;
    }
    if (pick == active.size()) {
      // Zero diagonal: PSD forces the whole remaining block to vanish.
      for (std::size_t a : active)
        for (std::size_t b : active)
          if (!(m(a, b) == F())) return std::nullopt;
      return rank;
    }
    std::size_t p = active[pick];
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(pick));
    const F piv = m(p, p);
    for (std::size_t a : active) {
      if (m(a, p) == F()) continue;
      F factor = m(a, p) / piv;
      for (std::size_t b : active) m(a, b) = m(a, b) - factor * m(p, b);
    }
    ++rank;
  }
  return rank;
}

/// Exact determinant by Gaussian elimination with first-nonzero pivoting.
template <class F>
F determinant(DenseMatrix<F> m) {
  const std::size_t n = m.rows();
  F det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && m(p, col) == F()) ++p;
    if (p == n) return F();
    if (p != col) {
      m.swap_rows(col, p);
      det = -det;
    }
    det = det * m(col, col);
    F inv = F(1) / m(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (m(i, col) == F()) continue;
      F factor = m(i, col) * inv;
      for (std::size_t j = col; j < n; ++j) m(i, j) = m(i, j) - factor * m(col, j);
    }
  }
  return det;
}

/// In-place reduced row echelon form; returns the pivot columns.
template <class F>
std::vector<std::size_t> rref(DenseMatrix<F>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col) == F()) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(row, p);
    F inv = F(1) / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == F()) continue;
      F factor = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        m(i, j) = m(i, j) - factor * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

/// Basis of the right null space, one vector per row of the result.
template <class F>
DenseMatrix<F> null_space(DenseMatrix<F> m) {
  const std::size_t n = m.cols();
  std::vector<std::size_t> pivots = rref(m);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  DenseMatrix<F> basis(free_cols.size(), n);
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    basis(k, free_cols[k]) = F(1);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      basis(k, pivots[r]) = -m(r, free_cols[k]);
  }
  return basis;
}

/// Solves A x = b for square nonsingular A; returns nullopt when singular.
template <class F>
std::optional<std::vector<F>> solve_linear(DenseMatrix<F> a, std::vector<F> b) {
  const std::size_t n = a.rows();
  DenseMatrix<F> aug(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  std::vector<std::size_t> pivots = rref(aug);
  if (pivots.size() != n || pivots.back() == n) return std::nullopt;
  std::vector<F> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = aug(i, n);
  return x;
}

}  // namespace fewdist
