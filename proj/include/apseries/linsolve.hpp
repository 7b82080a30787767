#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace aps {

/// Dense matrix over an exact field, row-major.
template <class K>
struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<K> a;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

  K& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const K& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

/// In-place reduced row echelon form; returns pivot columns.
template <class K>
std::vector<std::size_t> rref(Matrix<K>& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t sel = r;
    while (sel < m.rows && m.at(sel, c).is_zero()) ++sel;
    if (sel == m.rows) continue;
    if (sel != r)
      for (std::size_t j = c; j < m.cols; ++j) std::swap(m.at(r, j), m.at(sel, j));
    K inv = m.at(r, c).inverse();
    for (std::size_t j = c; j < m.cols; ++j) m.at(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      K f = m.at(i, c);
      for (std::size_t j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// One exact solution of A x = b, or nullopt when inconsistent.
template <class K>
std::optional<std::vector<K>> solve(const Matrix<K>& A, const std::vector<K>& b) {
  require(b.size() == A.rows, errc::dimension, "solve: rhs length mismatch");
  Matrix<K> m(A.rows, A.cols + 1);
  for (std::size_t i = 0; i < A.rows; ++i) {
    for (std::size_t j = 0; j < A.cols; ++j) m.at(i, j) = A.at(i, j);
    m.at(i, A.cols) = b[i];
  }
  auto pivots = rref(m);
  if (!pivots.empty() && pivots.back() == A.cols) return std::nullopt;  // row [0..0 | 1]
  std::vector<K> x(A.cols, K());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = m.at(r, A.cols);
  return x;
}

template <class K>
K determinant(Matrix<K> m) {
  require(m.rows == m.cols, errc::dimension, "determinant of non-square matrix");
  K det(1);
  for (std::size_t c = 0; c < m.cols; ++c) {
    std::size_t sel = c;
    while (sel < m.rows && m.at(sel, c).is_zero()) ++sel;
    if (sel == m.rows) return K();
    if (sel != c) {
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(c, j), m.at(sel, j));
      det = -det;
    }
    det *= m.at(c, c);
    K inv = m.at(c, c).inverse();
    for (std::size_t i = c + 1; i < m.rows; ++i) {
      if (m.at(i, c).is_zero()) continue;
      K f = m.at(i, c) * inv;
      for (std::size_t j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(c, j);
    }
  }
  return det;
}

/// Sparse row: sorted (column, coefficient) pairs, no zeros.
template <class K>
using SparseRow = std::vector<std::pair<std::size_t, K>>;

/// Incrementally built echelon basis of a sparse row space. Pivot of a row is
/// its smallest column index; pivot coefficients are 1. Reduction against the
/// basis is canonical: the result has no pivot column in its support.
template <class K>
class SparseEchelon {
 public:
  /// Fully reduce a row against the current basis.
  SparseRow<K> reduce(SparseRow<K> row) const {
    SparseRow<K> out;
    out.reserve(row.size());
    // Work queue ordered by column; merge eliminations lazily.
    std::map<std::size_t, K> acc(row.begin(), row.end());
    while (!acc.empty()) {
      auto it = acc.begin();
      std::size_t col = it->first;
      K c = it->second;
      acc.erase(it);
      if (c.is_zero()) continue;
      auto p = rows_.find(col);
      if (p == rows_.end()) {
        out.emplace_back(col, c);
        continue;
      }
      // subtract c * pivot row (pivot coefficient is 1)
      const SparseRow<K>& pr = p->second;
      for (std::size_t k = 1; k < pr.size(); ++k) {
        K& slot = acc[pr[k].first];
        slot -= c * pr[k].second;
        if (slot.is_zero()) acc.erase(pr[k].first);
      }
    }
    return out;
  }

  /// Insert a row; returns false when it reduces to zero.
  bool insert(SparseRow<K> row) {
    SparseRow<K> red = reduce(std::move(row));
    if (red.empty()) return false;
    K lead = red.front().second;
    if (!lead.is_one()) {
      K inv = lead.inverse();
      for (auto& [c, v] : red) v *= inv;
    }
    rows_.emplace(red.front().first, std::move(red));
    return true;
  }

  /// Back-substitute so every pivot column appears in exactly one row.
  void canonicalize() {
    for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
      it->second = reduce_tail(it->second);
    }
  }

  std::size_t rank() const { return rows_.size(); }
  const std::map<std::size_t, SparseRow<K>>& rows() const { return rows_; }
  bool has_pivot(std::size_t col) const { return rows_.count(col) != 0; }

 private:
  SparseRow<K> reduce_tail(const SparseRow<K>& row) const {
    // Reduce everything after the leading entry.
    SparseRow<K> tail(row.begin() + 1, row.end());
    SparseRow<K> red = reduce(std::move(tail));
    SparseRow<K> out;
    out.reserve(red.size() + 1);
    out.push_back(row.front());
    out.insert(out.end(), red.begin(), red.end());
    return out;
  }

  std::map<std::size_t, SparseRow<K>> rows_;
};

}  // namespace aps
