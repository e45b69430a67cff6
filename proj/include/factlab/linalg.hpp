#pragma once

// Exact dense linear algebra on Eigen matrices over Fp or Rational.
//
// Nothing here uses Eigen's decompositions (they assume an ordered, inexact
// field); the routines below are exact elimination schemes that only need the
// four field operations. A default-constructed scalar acts as zero.

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "factlab/field.hpp"

namespace factlab {

template <class S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;
using Index = Eigen::Index;

template <class S>
Matrix<S> zero_matrix(Index rows, Index cols, const field_t<S>& field) {
  Matrix<S> m(rows, cols);
  m.setConstant(field.zero());
  return m;
}

template <class S>
Vector<S> zero_vector(Index size, const field_t<S>& field) {
  Vector<S> v(size);
  v.setConstant(field.zero());
  return v;
}

template <class Derived>
bool all_zero(const Eigen::MatrixBase<Derived>& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (!is_zero(m(i, j))) return false;
  return true;
}

/// Which rows raise the rank when the rows are taken in order.
struct RankProfile {
  std::size_t rank = 0;
  std::vector<std::size_t> independent_rows;
  std::vector<std::size_t> dependent_rows;
};

/// Modular Gaussian elimination, rows processed in order.
RankProfile rank_profile(const Matrix<Fp>& a);
/// Fraction-free (Bareiss) elimination on the transposed integer matrix;
/// its column rank profile is the row rank profile of `a`.
RankProfile rank_profile(const Matrix<Rational>& a);

template <class S>
std::size_t rank(const Matrix<S>& a) {
  return rank_profile(a).rank;
}

/// Row space kept in reduced row echelon form. Grows one row at a time and
/// answers membership queries; read-only use is thread-safe.
template <class S>
class RowSpace {
 public:
  explicit RowSpace(Index cols) : cols_(cols) {}

  Index cols() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }

  /// Remainder of `v` after subtracting its projection on the span; zero iff
  /// `v` lies in the span.
  Vector<S> reduce(Vector<S> v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const S c = v(pivots_[k]);
      if (!is_zero(c)) v -= c * rows_[k];
    }
    return v;
  }

  bool contains(const Vector<S>& v) const { return all_zero(reduce(v)); }

  /// Returns true when `v` was independent of the current span.
  bool insert(const Vector<S>& v) {
    Vector<S> r = reduce(v);
    Index pivot = -1;
    for (Index j = 0; j < r.size(); ++j) {
      if (!is_zero(r(j))) {
        pivot = j;
        break;
      }
    }
    if (pivot < 0) return false;
    const S inv = inverse(r(pivot));
    r *= inv;
    for (auto& row : rows_) {
      const S c = row(pivot);
      if (!is_zero(c)) row -= c * r;
    }
    rows_.push_back(std::move(r));
    pivots_.push_back(pivot);
    return true;
  }

  const std::vector<Vector<S>>& basis() const { return rows_; }
  const std::vector<Index>& pivots() const { return pivots_; }

 private:
  Index cols_;
  std::vector<Vector<S>> rows_;
  std::vector<Index> pivots_;
};

/// Reduced row echelon form together with its pivot columns.
template <class S>
struct Echelon {
  Matrix<S> reduced;
  std::vector<Index> pivots;
};

template <class S>
Echelon<S> rref(Matrix<S> a) {
  Echelon<S> out;
  Index row = 0;
  for (Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Index sel = -1;
    for (Index i = row; i < a.rows(); ++i) {
      if (!is_zero(a(i, col))) {
        sel = i;
        break;
      }
    }
    if (sel < 0) continue;
    a.row(row).swap(a.row(sel));
    const S inv = inverse(a(row, col));
    a.row(row) *= inv;
    for (Index i = 0; i < a.rows(); ++i) {
      if (i == row) continue;
      const S c = a(i, col);
      if (!is_zero(c)) a.row(i) -= c * a.row(row);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(a);
  return out;
}

/// Columns form a basis of { x : a x = 0 }.
template <class S>
Matrix<S> nullspace(const Matrix<S>& a, const field_t<S>& field) {
  const Echelon<S> e = rref(a);
  std::vector<bool> is_pivot(static_cast<std::size_t>(a.cols()), false);
  for (Index c : e.pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  const Index nfree = a.cols() - static_cast<Index>(e.pivots.size());
  Matrix<S> basis = zero_matrix<S>(a.cols(), nfree, field);
  Index k = 0;
  for (Index f = 0; f < a.cols(); ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    basis(f, k) = field.one();
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
      basis(e.pivots[i], k) = -e.reduced(static_cast<Index>(i), f);
    }
    ++k;
  }
  return basis;
}

/// Some solution of a x = b, or nullopt when the system is inconsistent.
template <class S>
std::optional<Vector<S>> solve(const Matrix<S>& a, const Vector<S>& b, const field_t<S>& field) {
  Matrix<S> aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  const Echelon<S> e = rref(aug);
  Vector<S> x = zero_vector<S>(a.cols(), field);
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] == a.cols()) return std::nullopt;
    x(e.pivots[i]) = e.reduced(static_cast<Index>(i), a.cols());
  }
  return x;
}

}  // namespace factlab
