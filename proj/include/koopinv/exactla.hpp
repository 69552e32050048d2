#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "koopinv/errors.hpp"
#include "koopinv/scalar.hpp"

namespace koopinv {

/// Dense matrix over an exact scalar field K (F_p or F_p(a)). Entries stay
/// canonical in K; all operations are exact.
template <ScalarField K>
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, const K& fill)
      : rows_(rows), cols_(cols), zero_(fill.zero()), a_(rows * cols, fill) {}

  static Matrix identity(std::size_t n, const K& one_sample) {
    Matrix out(n, n, one_sample.zero());
    for (std::size_t i = 0; i < n; ++i) out.at(i, i) = one_sample.one();
    return out;
  }

  static Matrix from_rows(const std::vector<std::vector<K>>& rows) {
    Matrix out(rows.size(), rows.empty() ? 0 : rows[0].size(), rows.at(0).at(0).zero());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != out.cols_) throw DimensionMismatchError(out.cols_, rows[i].size());
      for (std::size_t j = 0; j < out.cols_; ++j) out.at(i, j) = rows[i][j];
    }
    return out;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  K& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const K& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  std::vector<K> row(std::size_t r) const {
    return std::vector<K>(a_.begin() + r * cols_, a_.begin() + (r + 1) * cols_);
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatchError(a.cols_, b.rows_);
    Matrix out(a.rows_, b.cols_, a.zero_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a.at(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          out.at(i, j) = out.at(i, j) + a.at(i, k) * b.at(k, j);
        }
      }
    }
    return out;
  }

  /// M v (column vector on the right).
  std::vector<K> mat_vec(const std::vector<K>& v) const {
    if (v.size() != cols_) throw DimensionMismatchError(cols_, v.size());
    std::vector<K> out(rows_, zero_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) out[i] = out[i] + at(i, j) * v[j];
    }
    return out;
  }

  /// u^T M (row vector on the left).
  std::vector<K> vec_mat(const std::vector<K>& u) const {
    if (u.size() != rows_) throw DimensionMismatchError(rows_, u.size());
    std::vector<K> out(cols_, zero_);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (u[i].is_zero()) continue;
      for (std::size_t j = 0; j < cols_; ++j) out[j] = out[j] + u[i] * at(i, j);
    }
    return out;
  }

  /// Exact determinant by Gaussian elimination; pivots are the first nonzero
  /// entry per column, no reordering heuristics.
  K det() const {
    if (rows_ != cols_) throw NotSquareError(rows_, cols_);
    Matrix w = *this;
    K result = zero_.one();
    bool negate = false;
    for (std::size_t c = 0; c < cols_; ++c) {
      std::size_t pivot = c;
      while (pivot < rows_ && w.at(pivot, c).is_zero()) ++pivot;
      if (pivot == rows_) return zero_;
      if (pivot != c) {
        for (std::size_t j = 0; j < cols_; ++j) std::swap(w.at(pivot, j), w.at(c, j));
        negate = !negate;
      }
      result = result * w.at(c, c);
      const K inv = w.at(c, c).inverse();
      for (std::size_t r = c + 1; r < rows_; ++r) {
        if (w.at(r, c).is_zero()) continue;
        const K factor = w.at(r, c) * inv;
        for (std::size_t j = c; j < cols_; ++j) {
          w.at(r, j) = w.at(r, j) - factor * w.at(c, j);
        }
      }
    }
    return negate ? -result : result;
  }

  /// Exact inverse (Gauss-Jordan); throws SingularMatrixError.
  Matrix inverse() const {
    if (rows_ != cols_) throw NotSquareError(rows_, cols_);
    Matrix w = *this;
    Matrix inv = identity(rows_, zero_.one());
    for (std::size_t c = 0; c < cols_; ++c) {
      std::size_t pivot = c;
      while (pivot < rows_ && w.at(pivot, c).is_zero()) ++pivot;
      if (pivot == rows_) throw SingularMatrixError();
      if (pivot != c) {
        for (std::size_t j = 0; j < cols_; ++j) {
          std::swap(w.at(pivot, j), w.at(c, j));
          std::swap(inv.at(pivot, j), inv.at(c, j));
        }
      }
      const K scale = w.at(c, c).inverse();
      for (std::size_t j = 0; j < cols_; ++j) {
        w.at(c, j) = w.at(c, j) * scale;
        inv.at(c, j) = inv.at(c, j) * scale;
      }
      for (std::size_t r = 0; r < rows_; ++r) {
        if (r == c || w.at(r, c).is_zero()) continue;
        const K factor = w.at(r, c);
        for (std::size_t j = 0; j < cols_; ++j) {
          w.at(r, j) = w.at(r, j) - factor * w.at(c, j);
          inv.at(r, j) = inv.at(r, j) - factor * inv.at(c, j);
        }
      }
    }
    return inv;
  }

  /// M^k by repeated squaring; k < 0 requires M non-singular.
  Matrix pow(std::int64_t k) const {
    if (rows_ != cols_) throw NotSquareError(rows_, cols_);
    Matrix base = k < 0 ? inverse() : *this;
    std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-k) : static_cast<std::uint64_t>(k);
    Matrix result = identity(rows_, zero_.one());
    while (e) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  Matrix transposed() const {
    Matrix out(cols_, rows_, zero_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    }
    return out;
  }

  bool operator==(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && a_ == other.a_;
  }

 private:
  std::size_t rows_, cols_;
  K zero_;
  std::vector<K> a_;
};

/// Incremental linear-independence tracker: accepts vectors one by one,
/// keeping an echelon form plus the expression of each echelon row over the
/// accepted originals, so a dependent insert yields its exact coordinates
/// over the accepted basis. Detects when a Koopman iterate becomes dependent.
template <ScalarField K>
class IndependenceTracker {
 public:
  struct InsertResult {
    bool independent;
    std::vector<K> coeffs;  // filled iff dependent: v = sum coeffs[i] * accepted[i]
  };

  IndependenceTracker(std::size_t dimension, const K& zero_sample)
      : dim_(dimension), zero_(zero_sample.zero()) {}

  std::size_t dimension() const { return dim_; }
  std::size_t size() const { return rows_.size(); }

  /// Coordinates of v over the accepted basis, or nullopt if v is outside
  /// the span. Does not modify the tracker.
  std::optional<std::vector<K>> decompose(const std::vector<K>& v) const {
    auto [residual, combo] = reduce(v);
    for (const auto& x : residual) {
      if (!x.is_zero()) return std::nullopt;
    }
    return combo;
  }

  InsertResult insert(const std::vector<K>& v) {
    auto [residual, combo] = reduce(v);
    std::size_t pivot = 0;
    while (pivot < dim_ && residual[pivot].is_zero()) ++pivot;
    if (pivot == dim_) return {false, std::move(combo)};
    // residual = v - sum combo[j] * accepted[j]; accept v as a new original.
    std::vector<K> crow;
    crow.reserve(combo.size() + 1);
    for (const auto& c : combo) crow.push_back(-c);
    crow.push_back(zero_.one());
    rows_.push_back(std::move(residual));
    pivots_.push_back(pivot);
    reps_.push_back(std::move(crow));
    return {true, {}};
  }

 private:
  // Reduces v against the echelon rows. Returns the residual and the
  // combination of accepted originals it subtracted.
  std::pair<std::vector<K>, std::vector<K>> reduce(const std::vector<K>& v) const {
    if (v.size() != dim_) throw DimensionMismatchError(dim_, v.size());
    std::vector<K> w = v;
    std::vector<K> combo(rows_.size(), zero_);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const K& lead = w[pivots_[i]];
      if (lead.is_zero()) continue;
      const K factor = lead * rows_[i][pivots_[i]].inverse();
      for (std::size_t j = 0; j < dim_; ++j) {
        if (!rows_[i][j].is_zero()) w[j] = w[j] - factor * rows_[i][j];
      }
      for (std::size_t j = 0; j < reps_[i].size(); ++j) {
        combo[j] = combo[j] + factor * reps_[i][j];
      }
    }
    return {std::move(w), std::move(combo)};
  }

  std::size_t dim_;
  K zero_;
  std::vector<std::vector<K>> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<std::vector<K>> reps_;  // rows_[i] = sum reps_[i][j] * accepted[j]
};

}  // namespace koopinv
