#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace nilred {

template <class S>
using Vec = std::vector<S>;

using QVec = Vec<Rational>;
using DVec = Vec<double>;

/// Dense row-major matrix over an exact or floating scalar.
template <class S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, S(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = S(1);
    return m;
  }

  static Matrix from_rows(std::initializer_list<std::initializer_list<S>> rows) {
    Matrix m(rows.size(), rows.size() ? rows.begin()->size() : 0);
    std::size_t r = 0;
    for (const auto& row : rows) {
      if (row.size() != m.cols_) throw std::invalid_argument("ragged matrix literal");
      std::size_t c = 0;
      for (const auto& v : row) m.at(r, c++) = v;
      ++r;
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  S& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const S& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<S>& data() const { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
  }

  Matrix operator+(const Matrix& o) const {
    require_same_shape(o);
    Matrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
    return r;
  }

  Matrix operator-(const Matrix& o) const {
    require_same_shape(o);
    Matrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
    return r;
  }

  Matrix operator-() const {
    Matrix r = *this;
    for (auto& v : r.data_) v = -v;
    return r;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const S& aik = at(i, k);
        if (aik == S(0)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += aik * o.at(k, j);
      }
    return r;
  }

  Matrix operator*(const S& s) const {
    Matrix r = *this;
    for (auto& v : r.data_) v *= s;
    return r;
  }

  Vec<S> operator*(const Vec<S>& x) const {
    if (cols_ != x.size()) throw std::invalid_argument("matvec shape mismatch");
    Vec<S> y(rows_, S(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) y[i] += at(i, j) * x[j];
    return y;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  S trace() const {
    S t(0);
    for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += at(i, i);
    return t;
  }

  bool is_zero(double tol = 0.0) const {
    for (const auto& v : data_)
      if (!ScalarOps<S>::is_zero(v, tol)) return false;
    return true;
  }

  /// First violating entry pair (r, c) with at(r,c) != -at(c,r), if any.
  bool is_skew_symmetric(std::pair<std::size_t, std::size_t>* violation = nullptr,
                         double tol = 0.0) const {
    if (rows_ != cols_) {
      if (violation) *violation = {0, 0};
      return false;
    }
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = r; c < cols_; ++c)
        if (!ScalarOps<S>::is_zero(at(r, c) + at(c, r), tol)) {
          if (violation) *violation = {r, c};
          return false;
        }
    return true;
  }

 private:
  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("matrix shape mismatch");
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<S> data_;
};

using QMatrix = Matrix<Rational>;
using DMatrix = Matrix<double>;

template <class S>
Matrix<S> commutator(const Matrix<S>& a, const Matrix<S>& b) {
  return a * b - b * a;
}

template <class S>
S frobenius_dot(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("frobenius_dot shape mismatch");
  S s(0);
  for (std::size_t i = 0; i < a.data().size(); ++i) s += a.data()[i] * b.data()[i];
  return s;
}

template <class S>
S frobenius_norm_sq(const Matrix<S>& a) {
  return frobenius_dot(a, a);
}

template <class S>
S dot(const Vec<S>& a, const Vec<S>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot shape mismatch");
  S s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Block-diagonal assembly of equally-typed square blocks.
template <class S>
Matrix<S> block_diag(const std::vector<Matrix<S>>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.rows();
  Matrix<S> m(n, n);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) m.at(off + r, off + c) = b.at(r, c);
    off += b.rows();
  }
  return m;
}

inline DMatrix to_float(const QMatrix& m) {
  DMatrix d(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) d.at(r, c) = to_double(m.at(r, c));
  return d;
}

inline DVec to_float(const QVec& v) {
  DVec d(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) d[i] = to_double(v[i]);
  return d;
}

}  // namespace nilred
