#pragma once

/**
 * @file linalg.hpp
 * @brief Dense max-plus matrix and vector algebra.
 *
 * Covers entrywise addition, tropical products, conjugate transposition,
 * traces, the Kleene star, the spectral radius, norms, and the two canonical
 * inequality solvers: the greatest solution of A x <= d and the complete
 * solution family of A x + b <= x.
 *
 * Matrices and vectors are immutable after construction; every operation is
 * a pure function, so values can be shared freely across threads.
 */

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <memory>
#include <utility>
#include <vector>

#include "tropt/errors.hpp"
#include "tropt/semiring.hpp"

namespace tropt {

class TropicalVector {
 public:
  TropicalVector() = default;

  explicit TropicalVector(std::size_t dim)
      : entries_(dim), regular_(false), nonzero_(false) {}

  explicit TropicalVector(std::vector<TropicalValue> entries)
      : entries_(std::move(entries)) {
    scan();
  }

  TropicalVector(std::initializer_list<TropicalValue> entries)
      : entries_(entries) {
    scan();
  }

  static TropicalVector zeros(std::size_t dim) { return TropicalVector(dim); }

  static TropicalVector ones(std::size_t dim) {
    return filled(dim, TropicalValue::one());
  }

  static TropicalVector filled(std::size_t dim, const TropicalValue& v) {
    return TropicalVector(std::vector<TropicalValue>(dim, v));
  }

  std::size_t dim() const { return entries_.size(); }
  const TropicalValue& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<TropicalValue>& entries() const { return entries_; }

  /// No zero components.
  bool regular() const { return regular_; }
  /// At least one finite component.
  bool nonzero() const { return nonzero_; }

  friend bool operator==(const TropicalVector& a, const TropicalVector& b) {
    return a.entries_ == b.entries_;
  }

 private:
  void scan() {
    regular_ = true;
    nonzero_ = false;
    for (const auto& e : entries_) {
      if (e.is_zero()) {
        regular_ = false;
      } else {
        nonzero_ = true;
      }
    }
    if (entries_.empty()) regular_ = false;
  }

  std::vector<TropicalValue> entries_;
  bool regular_ = false;
  bool nonzero_ = false;
};

class TropicalMatrix {
 public:
  TropicalMatrix() = default;

  TropicalMatrix(std::size_t rows, std::size_t cols, std::vector<TropicalValue> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
      throw Error(ErrorCode::ShapeMismatch, "entry count does not match matrix shape");
    }
    scan();
  }

  TropicalMatrix(std::initializer_list<std::initializer_list<TropicalValue>> rows)
      : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    entries_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) {
        throw Error(ErrorCode::ShapeMismatch, "ragged rows in matrix literal");
      }
      entries_.insert(entries_.end(), r.begin(), r.end());
    }
    scan();
  }

  static TropicalMatrix zeros(std::size_t rows, std::size_t cols) {
    return TropicalMatrix(rows, cols, std::vector<TropicalValue>(rows * cols));
  }

  static TropicalMatrix identity(std::size_t n) {
    std::vector<TropicalValue> e(n * n);
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = TropicalValue::one();
    return TropicalMatrix(n, n, std::move(e));
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  const TropicalValue& at(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  const std::vector<TropicalValue>& entries() const { return entries_; }

  /// No zero columns.
  bool column_regular() const { return column_regular_; }
  /// At least one finite entry.
  bool nonzero() const { return nonzero_; }

  friend bool operator==(const TropicalMatrix& a, const TropicalMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  void scan() {
    nonzero_ = false;
    std::vector<bool> col_has(cols_, false);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!at(i, j).is_zero()) {
          nonzero_ = true;
          col_has[j] = true;
        }
      }
    }
    column_regular_ = rows_ > 0 && cols_ > 0;
    for (bool h : col_has) column_regular_ = column_regular_ && h;
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<TropicalValue> entries_;
  bool column_regular_ = false;
  bool nonzero_ = false;
};

// ---------------------------------------------------------------------------
// Elementwise and product operations
// ---------------------------------------------------------------------------

inline TropicalMatrix mat_add(const TropicalMatrix& a, const TropicalMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "matrix addition with unequal shapes");
  }
  std::vector<TropicalValue> e;
  e.reserve(a.entries().size());
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    e.push_back(oplus(a.entries()[i], b.entries()[i]));
  }
  return TropicalMatrix(a.rows(), a.cols(), std::move(e));
}

inline TropicalMatrix mat_mul(const TropicalMatrix& a, const TropicalMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "matrix product with mismatched inner dimension");
  }
  const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
  std::vector<TropicalValue> e(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t l = 0; l < k; ++l) {
      const TropicalValue& ail = a.at(i, l);
      if (ail.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const TropicalValue& blj = b.at(l, j);
        if (blj.is_zero()) continue;
        TropicalValue prod = otimes(ail, blj);
        TropicalValue& cell = e[i * n + j];
        if (cell < prod) cell = std::move(prod);
      }
    }
  }
  return TropicalMatrix(m, n, std::move(e));
}

inline TropicalMatrix scalar_mul(const TropicalValue& c, const TropicalMatrix& a) {
  std::vector<TropicalValue> e;
  e.reserve(a.entries().size());
  for (const auto& v : a.entries()) e.push_back(otimes(c, v));
  return TropicalMatrix(a.rows(), a.cols(), std::move(e));
}

inline TropicalVector scalar_mul(const TropicalValue& c, const TropicalVector& x) {
  std::vector<TropicalValue> e;
  e.reserve(x.dim());
  for (const auto& v : x.entries()) e.push_back(otimes(c, v));
  return TropicalVector(std::move(e));
}

inline TropicalVector mat_vec(const TropicalMatrix& a, const TropicalVector& x) {
  if (a.cols() != x.dim()) {
    throw Error(ErrorCode::ShapeMismatch, "matrix-vector product with mismatched dimension");
  }
  std::vector<TropicalValue> e(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    TropicalValue acc;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      acc = oplus(acc, otimes(a.at(i, j), x[j]));
    }
    e[i] = std::move(acc);
  }
  return TropicalVector(std::move(e));
}

/// Row-vector times matrix: r^T A.
inline TropicalVector vec_mat(const TropicalVector& r, const TropicalMatrix& a) {
  if (r.dim() != a.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "vector-matrix product with mismatched dimension");
  }
  std::vector<TropicalValue> e(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    TropicalValue acc;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      acc = oplus(acc, otimes(r[i], a.at(i, j)));
    }
    e[j] = std::move(acc);
  }
  return TropicalVector(std::move(e));
}

/// Tropical dot product of a row and a column of equal length.
inline TropicalValue dot(const TropicalVector& r, const TropicalVector& x) {
  if (r.dim() != x.dim()) {
    throw Error(ErrorCode::ShapeMismatch, "dot product with unequal dimensions");
  }
  TropicalValue acc;
  for (std::size_t i = 0; i < r.dim(); ++i) acc = oplus(acc, otimes(r[i], x[i]));
  return acc;
}

/// Outer product p q_row of a column and a row.
inline TropicalMatrix outer(const TropicalVector& p, const TropicalVector& q_row) {
  std::vector<TropicalValue> e;
  e.reserve(p.dim() * q_row.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) {
    for (std::size_t j = 0; j < q_row.dim(); ++j) {
      e.push_back(otimes(p[i], q_row[j]));
    }
  }
  return TropicalMatrix(p.dim(), q_row.dim(), std::move(e));
}

inline TropicalMatrix operator+(const TropicalMatrix& a, const TropicalMatrix& b) {
  return mat_add(a, b);
}
inline TropicalMatrix operator*(const TropicalMatrix& a, const TropicalMatrix& b) {
  return mat_mul(a, b);
}

/// Componentwise a <= b.
inline bool leq(const TropicalVector& a, const TropicalVector& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::ShapeMismatch, "comparing vectors of unequal dimension");
  }
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Conjugates, traces, norms
// ---------------------------------------------------------------------------

/// Multiplicative conjugate transpose: entry (i,j) is the inverse of (j,i),
/// zero entries stay zero.
inline TropicalMatrix conjugate_transpose(const TropicalMatrix& a) {
  if (!a.nonzero()) {
    throw Error(ErrorCode::AllZeroMatrix, "conjugate transpose of the zero matrix");
  }
  std::vector<TropicalValue> e;
  e.reserve(a.entries().size());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      const TropicalValue& v = a.at(i, j);
      e.push_back(v.is_zero() ? TropicalValue::zero() : inverse(v));
    }
  }
  return TropicalMatrix(a.cols(), a.rows(), std::move(e));
}

/// Conjugate of a vector: componentwise inverse, zero components stay zero.
/// The result of conjugating a column reads as a row and vice versa.
inline TropicalVector conjugate(const TropicalVector& x) {
  if (!x.nonzero()) {
    throw Error(ErrorCode::AllZeroMatrix, "conjugate of the zero vector");
  }
  std::vector<TropicalValue> e;
  e.reserve(x.dim());
  for (const auto& v : x.entries()) {
    e.push_back(v.is_zero() ? TropicalValue::zero() : inverse(v));
  }
  return TropicalVector(std::move(e));
}

inline TropicalVector conjugate_transpose(const TropicalVector& x) { return conjugate(x); }

inline TropicalValue trace(const TropicalMatrix& a) {
  if (!a.square()) throw Error(ErrorCode::NotSquare, "trace of a non-square matrix");
  TropicalValue acc;
  for (std::size_t i = 0; i < a.rows(); ++i) acc = oplus(acc, a.at(i, i));
  return acc;
}

inline TropicalValue norm(const TropicalMatrix& a) {
  TropicalValue acc;
  for (const auto& v : a.entries()) acc = oplus(acc, v);
  return acc;
}

inline TropicalValue norm(const TropicalVector& x) {
  TropicalValue acc;
  for (const auto& v : x.entries()) acc = oplus(acc, v);
  return acc;
}

// ---------------------------------------------------------------------------
// Power table and derived scalars
// ---------------------------------------------------------------------------

/// Cached powers A^0 .. A^m of a square matrix, computed by repeated
/// multiplication. Read-only after construction.
class PowerTable {
 public:
  PowerTable(const TropicalMatrix& a, std::size_t max_power) {
    if (!a.square()) throw Error(ErrorCode::NotSquare, "powers of a non-square matrix");
    powers_.reserve(max_power + 1);
    powers_.push_back(TropicalMatrix::identity(a.rows()));
    if (max_power >= 1) powers_.push_back(a);
    for (std::size_t k = 2; k <= max_power; ++k) {
      powers_.push_back(mat_mul(powers_.back(), a));
    }
  }

  std::size_t max_power() const { return powers_.size() - 1; }
  const TropicalMatrix& operator[](std::size_t k) const { return powers_[k]; }

 private:
  std::vector<TropicalMatrix> powers_;
};

/// Tr(A) = tr A + tr A^2 + ... + tr A^n for a square matrix of order n.
inline TropicalValue big_trace(const PowerTable& powers, std::size_t n) {
  TropicalValue acc;
  for (std::size_t k = 1; k <= n; ++k) acc = oplus(acc, trace(powers[k]));
  return acc;
}

inline TropicalValue big_trace(const TropicalMatrix& a) {
  if (!a.square()) throw Error(ErrorCode::NotSquare, "Tr of a non-square matrix");
  return big_trace(PowerTable(a, a.rows()), a.rows());
}

/// Spectral radius: the greatest k-th root of tr(A^k) over k = 1..n. Equals
/// the maximum mean weight over cycles of the precedence graph of A.
inline TropicalValue spectral_radius(const PowerTable& powers, std::size_t n) {
  TropicalValue acc;
  for (std::size_t k = 1; k <= n; ++k) {
    acc = oplus(acc, rpow(trace(powers[k]), Rat(1, static_cast<std::int64_t>(k))));
  }
  return acc;
}

inline TropicalValue spectral_radius(const TropicalMatrix& a) {
  if (!a.square()) throw Error(ErrorCode::NotSquare, "spectral radius of a non-square matrix");
  return spectral_radius(PowerTable(a, a.rows()), a.rows());
}

/// Kleene star I + A + ... + A^{n-1}; requires Tr(A) <= 1 (the tropical unit).
inline TropicalMatrix kleene_star(const TropicalMatrix& a) {
  if (!a.square()) throw Error(ErrorCode::NotSquare, "Kleene star of a non-square matrix");
  const std::size_t n = a.rows();
  PowerTable powers(a, n);
  const TropicalValue tr = big_trace(powers, n);
  if (tr > TropicalValue::one()) {
    throw Error(ErrorCode::StarDiverges, "Tr(A) = " + tr.str() + " exceeds the unit");
  }
  TropicalMatrix star = TropicalMatrix::identity(n);
  for (std::size_t k = 1; k < n; ++k) star = mat_add(star, powers[k]);
  return star;
}

// ---------------------------------------------------------------------------
// Inequality solvers
// ---------------------------------------------------------------------------

/// Greatest x with A x <= d, namely (d_conj A)_conj. Every solution of the
/// inequality lies componentwise below the result.
inline TropicalVector solve_upper(const TropicalMatrix& a, const TropicalVector& d) {
  if (a.rows() != d.dim()) {
    throw Error(ErrorCode::ShapeMismatch, "bound dimension does not match matrix rows");
  }
  if (!a.column_regular()) {
    throw Error(ErrorCode::NotColumnRegular, "upper solve requires a column-regular matrix");
  }
  if (!d.regular()) {
    throw Error(ErrorCode::IrregularBound, "upper solve requires a regular bound vector");
  }
  return conjugate(vec_mat(conjugate(d), a));
}

/// Solution x = A* u of A x + b <= x for a chosen parameter u >= b.
/// Requires Tr(A) <= 1; otherwise only the trivial solution exists.
inline TropicalVector solve_lower(const TropicalMatrix& a, const TropicalVector& b,
                                  const TropicalVector& u) {
  if (!a.square() || a.rows() != b.dim() || b.dim() != u.dim()) {
    throw Error(ErrorCode::ShapeMismatch, "lower solve with mismatched dimensions");
  }
  if (!leq(b, u)) {
    throw Error(ErrorCode::ParameterBelowBound, "parameter vector below the bound");
  }
  return mat_vec(kleene_star(a), u);
}

}  // namespace tropt
