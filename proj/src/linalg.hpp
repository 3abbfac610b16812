#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "matrix.hpp"

namespace nilred {

/// Reduced row echelon form in place. Returns the rank; pivot columns are
/// appended to `pivot_cols` when given. `tol` is the zero threshold in
/// float mode and ignored for exact scalars.
template <class S>
std::size_t rref_in_place(Matrix<S>& m, std::vector<std::size_t>* pivot_cols,
                          double tol) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    // Largest pivot by magnitude; for rationals this only tames entry growth.
    std::size_t best = r;
    bool found = false;
    for (std::size_t i = r; i < m.rows(); ++i) {
      if (ScalarOps<S>::is_zero(m.at(i, c), tol)) continue;
      if (!found || ScalarOps<S>::abs(m.at(i, c)) > ScalarOps<S>::abs(m.at(best, c))) {
        best = i;
        found = true;
      }
    }
    if (!found) continue;
    if (best != r)
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m.at(r, k), m.at(best, k));
    S pivot = m.at(r, c);
    for (std::size_t k = c; k < m.cols(); ++k) m.at(r, k) /= pivot;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      S f = m.at(i, c);
      if (ScalarOps<S>::is_zero(f, tol)) {
        m.at(i, c) = S(0);
        continue;
      }
      for (std::size_t k = c; k < m.cols(); ++k) m.at(i, k) -= f * m.at(r, k);
      m.at(i, c) = S(0);
    }
    if (pivot_cols) pivot_cols->push_back(c);
    ++r;
  }
  return r;
}

template <class S>
std::size_t rank(Matrix<S> m, double tol = 0.0) {
  return rref_in_place(m, nullptr, tol);
}

inline void symmetric_eigensystem(DMatrix a, std::vector<double>& evals, DMatrix& evecs);

/// Basis of the right null space {x : M x = 0}. Empty iff M is injective;
/// a zero (or empty) map yields the full standard basis. Exact mode returns
/// the canonical RREF basis, ordered by free column; float mode keeps the
/// right singular vectors whose singular value is at most `tol`.
template <class S>
std::vector<Vec<S>> kernel_basis(Matrix<S> m, double tol = 0.0) {
  if constexpr (!ScalarOps<S>::exact) {
    DMatrix ata = m.transpose() * m;
    std::vector<double> evals;
    DMatrix evecs;
    symmetric_eigensystem(std::move(ata), evals, evecs);
    std::vector<Vec<S>> basis;
    for (std::size_t i = 0; i < evals.size(); ++i) {
      if (std::sqrt(std::max(0.0, evals[i])) > tol) continue;
      Vec<S> v(m.cols());
      for (std::size_t r = 0; r < m.cols(); ++r) v[r] = evecs.at(r, i);
      basis.push_back(std::move(v));
    }
    return basis;
  } else {
    std::vector<std::size_t> piv;
    rref_in_place(m, &piv, tol);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : piv) is_pivot[c] = true;
    std::vector<Vec<S>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
      if (is_pivot[f]) continue;
      Vec<S> v(m.cols(), S(0));
      v[f] = S(1);
      for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -m.at(k, f);
      basis.push_back(std::move(v));
    }
    return basis;
  }
}

/// Basis of the row space, as the nonzero rows of the RREF.
template <class S>
std::vector<Vec<S>> row_space_basis(Matrix<S> m, double tol = 0.0) {
  std::size_t rk = rref_in_place(m, nullptr, tol);
  std::vector<Vec<S>> rows;
  for (std::size_t r = 0; r < rk; ++r) {
    Vec<S> v(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) v[c] = m.at(r, c);
    rows.push_back(std::move(v));
  }
  return rows;
}

/// A particular solution of A x = b, or nullopt when inconsistent.
/// Free variables are set to zero.
template <class S>
std::optional<Vec<S>> solve_linear(const Matrix<S>& a, const Vec<S>& b,
                                   double tol = 0.0) {
  if (a.rows() != b.size()) throw std::invalid_argument("solve_linear shape mismatch");
  Matrix<S> aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug.at(r, c) = a.at(r, c);
    aug.at(r, a.cols()) = b[r];
  }
  std::vector<std::size_t> piv;
  rref_in_place(aug, &piv, tol);
  if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
  Vec<S> x(a.cols(), S(0));
  for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = aug.at(k, a.cols());
  return x;
}

template <class S>
struct Membership {
  Vec<S> coeffs;
  S residual_sq;

  /// Exact mode: residual is zero iff residual_sq is exactly zero.
  /// Float mode: compare sqrt(residual_sq) against the tolerance.
  bool in_span(double tol) const {
    if constexpr (ScalarOps<S>::exact) {
      (void)tol;
      return residual_sq == S(0);
    } else {
      return std::sqrt(std::max(0.0, ScalarOps<S>::to_double(residual_sq))) <= tol;
    }
  }

  double residual() const {
    return std::sqrt(std::max(0.0, ScalarOps<S>::to_double(residual_sq)));
  }
};

/// Least-squares coefficients expressing `target` in span(basis) with respect
/// to the Frobenius inner product, via the normal equations. residual_sq is
/// ||target - sum c_k basis_k||_F^2 and vanishes exactly (exact mode) iff the
/// target lies in the span. An empty basis gives residual_sq = ||target||_F^2.
template <class S>
Membership<S> solve_membership(const Matrix<S>& target,
                               const std::vector<Matrix<S>>& basis,
                               double tol = 0.0) {
  for (const auto& b : basis)
    if (b.rows() != target.rows() || b.cols() != target.cols())
      throw std::invalid_argument("solve_membership shape mismatch");
  const std::size_t k = basis.size();
  if (k == 0) return {{}, frobenius_norm_sq(target)};

  Matrix<S> gram(k, k);
  Vec<S> rhs(k, S(0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      S g = frobenius_dot(basis[i], basis[j]);
      gram.at(i, j) = g;
      gram.at(j, i) = g;
    }
    rhs[i] = frobenius_dot(basis[i], target);
  }
  // The normal equations are always consistent (rhs lies in range(gram)).
  auto coeffs = solve_linear(gram, rhs, tol);
  if (!coeffs) throw std::logic_error("normal equations inconsistent");
  // Residual via the explicit remainder matrix; the algebraic shortcut
  // ||T||^2 - c.b cancels catastrophically in float mode.
  Matrix<S> remainder = target;
  for (std::size_t i = 0; i < k; ++i)
    if (!ScalarOps<S>::is_zero((*coeffs)[i], 0.0))
      remainder = remainder - basis[i] * (*coeffs)[i];
  return {std::move(*coeffs), frobenius_norm_sq(remainder)};
}

/// Characteristic polynomial coefficients of a square matrix by
/// Faddeev-LeVerrier: det(lambda I - A) = sum_k c[k] lambda^(n-k), c[0] = 1.
template <class S>
std::vector<S> char_poly(const Matrix<S>& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("char_poly needs square input");
  const std::size_t n = a.rows();
  std::vector<S> c(n + 1, S(0));
  c[0] = S(1);
  Matrix<S> m = Matrix<S>::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    if (k > 1) {
      Matrix<S> am = a * m;
      for (std::size_t i = 0; i < n; ++i) am.at(i, i) += c[k - 1];
      m = std::move(am);
    }
    c[k] = -(a * m).trace() / S(static_cast<int>(k));
  }
  return c;
}

/// Eigen-decomposition of a symmetric matrix by the cyclic Jacobi method.
/// Eigenvalues come out ascending, with matching orthonormal eigenvectors
/// in the columns of `evecs`.
inline void symmetric_eigensystem(DMatrix a, std::vector<double>& evals, DMatrix& evecs) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("symmetric_eigensystem needs square input");
  DMatrix v = DMatrix::identity(n);
  double scale = 1.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::fabs(a.at(i, j)));
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a.at(p, q) * a.at(p, q);
    if (off <= 1e-30 * scale * scale) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = a.at(p, q);
        if (std::fabs(apq) < 1e-300) continue;
        double theta = (a.at(q, q) - a.at(p, p)) / (2 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1));
        double cos = 1.0 / std::sqrt(t * t + 1), sin = t * cos;
        for (std::size_t k = 0; k < n; ++k) {
          double akp = a.at(k, p), akq = a.at(k, q);
          a.at(k, p) = cos * akp - sin * akq;
          a.at(k, q) = sin * akp + cos * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double apk = a.at(p, k), aqk = a.at(q, k);
          a.at(p, k) = cos * apk - sin * aqk;
          a.at(q, k) = sin * apk + cos * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double vkp = v.at(k, p), vkq = v.at(k, q);
          v.at(k, p) = cos * vkp - sin * vkq;
          v.at(k, q) = sin * vkp + cos * vkq;
        }
      }
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return a.at(x, x) < a.at(y, y); });
  evals.resize(n);
  evecs = DMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    evals[i] = a.at(order[i], order[i]);
    for (std::size_t r = 0; r < n; ++r) evecs.at(r, i) = v.at(r, order[i]);
  }
}

/// Eigenvalues of a symmetric matrix, ascending.
inline std::vector<double> symmetric_eigenvalues(DMatrix a) {
  std::vector<double> evals;
  DMatrix evecs;
  symmetric_eigensystem(std::move(a), evals, evecs);
  return evals;
}

}  // namespace nilred
