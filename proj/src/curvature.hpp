#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "algebra.hpp"
#include "linalg.hpp"
#include "matrix.hpp"

namespace nilred {

/// Structure constants c[i][j][k] = <[b_i, b_j], b_k> over the full
/// orthonormal frame. The curvature pipeline below only assumes a metric
/// Lie algebra in an orthonormal frame, not the 2-step shape.
template <class S>
struct StructureConstants {
  std::size_t dim = 0;
  std::vector<S> c;

  explicit StructureConstants(std::size_t dim = 0) : dim(dim), c(dim * dim * dim, S(0)) {}
  S& at(std::size_t i, std::size_t j, std::size_t k) { return c[(i * dim + j) * dim + k]; }
  const S& at(std::size_t i, std::size_t j, std::size_t k) const {
    return c[(i * dim + j) * dim + k];
  }
};

inline StructureConstants<Rational> full_structure_constants(
    const MetricNilpotentAlgebra& alg) {
  const std::size_t n = alg.dim_v;
  StructureConstants<Rational> sc(alg.dim_total());
  for (std::size_t a = 0; a < alg.dim_z; ++a)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) sc.at(i, j, n + a) = alg.slices[a].at(i, j);
  return sc;
}

inline StructureConstants<double> to_float(const StructureConstants<Rational>& sc) {
  StructureConstants<double> f(sc.dim);
  for (std::size_t i = 0; i < sc.c.size(); ++i) f.c[i] = to_double(sc.c[i]);
  return f;
}

/// Levi-Civita connection coefficients Gamma[i][j][k] = <nabla_{b_i} b_j, b_k>
/// on a left-invariant orthonormal frame.
template <class S>
struct ConnectionCoefficients {
  std::size_t dim = 0;
  std::vector<S> g;

  explicit ConnectionCoefficients(std::size_t dim = 0)
      : dim(dim), g(dim * dim * dim, S(0)) {}
  S& at(std::size_t i, std::size_t j, std::size_t k) { return g[(i * dim + j) * dim + k]; }
  const S& at(std::size_t i, std::size_t j, std::size_t k) const {
    return g[(i * dim + j) * dim + k];
  }
};

/// Koszul formula on an orthonormal left-invariant frame:
/// Gamma[i][j][k] = (c[i][j][k] - c[j][k][i] + c[k][i][j]) / 2.
template <class S>
ConnectionCoefficients<S> koszul_connection(const StructureConstants<S>& sc) {
  ConnectionCoefficients<S> conn(sc.dim);
  const S half = S(1) / S(2);
  for (std::size_t i = 0; i < sc.dim; ++i)
    for (std::size_t j = 0; j < sc.dim; ++j)
      for (std::size_t k = 0; k < sc.dim; ++k)
        conn.at(i, j, k) = (sc.at(i, j, k) - sc.at(j, k, i) + sc.at(k, i, j)) * half;
  return conn;
}

/// The 2-step closed forms, computed independently from the j map:
/// nabla_U V = [U,V]/2;  nabla_U Z = nabla_Z U = -(j_Z U)/2;  nabla_Z W = 0.
template <class S>
ConnectionCoefficients<S> two_step_connection(const BasicJMap<S>& j) {
  const std::size_t n = j.dim_v, d = j.dim_v + j.dim_z;
  ConnectionCoefficients<S> conn(d);
  const S half = S(1) / S(2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t jj = 0; jj < n; ++jj)
      for (std::size_t a = 0; a < j.dim_z; ++a) {
        // <[e_i, e_j], f_a> = <J_a e_i, e_j> = (J_a)(j, i)
        conn.at(i, jj, n + a) = j.mats[a].at(jj, i) * half;
        // <nabla_{e_i} f_a, e_j> = -<J_a e_i, e_j>/2
        conn.at(i, n + a, jj) = -j.mats[a].at(jj, i) * half;
        conn.at(n + a, i, jj) = -j.mats[a].at(jj, i) * half;
      }
  return conn;
}

template <class S>
bool operator==(const ConnectionCoefficients<S>& x, const ConnectionCoefficients<S>& y) {
  return x.dim == y.dim && x.g == y.g;
}

/// R[i][j][k][l] = <R(b_i, b_j) b_k, b_l> with
/// R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_{[X,Y]} Z.
template <class S>
struct CurvatureTensor {
  std::size_t dim = 0;
  std::vector<S> r;

  explicit CurvatureTensor(std::size_t dim = 0)
      : dim(dim), r(dim * dim * dim * dim, S(0)) {}
  S& at(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    return r[((i * dim + j) * dim + k) * dim + l];
  }
  const S& at(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return r[((i * dim + j) * dim + k) * dim + l];
  }
};

template <class S>
CurvatureTensor<S> curvature_tensor(const ConnectionCoefficients<S>& conn,
                                    const StructureConstants<S>& sc) {
  const std::size_t d = conn.dim;
  CurvatureTensor<S> curv(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) {
          S sum(0);
          for (std::size_t s = 0; s < d; ++s) {
            if (conn.at(j, k, s) != S(0)) sum += conn.at(j, k, s) * conn.at(i, s, l);
            if (conn.at(i, k, s) != S(0)) sum -= conn.at(i, k, s) * conn.at(j, s, l);
            if (sc.at(i, j, s) != S(0)) sum -= sc.at(i, j, s) * conn.at(s, k, l);
          }
          curv.at(i, j, k, l) = sum;
        }
  return curv;
}

/// Ric(Y, Z) = sum_i <R(b_i, Y) Z, b_i>.
template <class S>
Matrix<S> ricci(const CurvatureTensor<S>& curv) {
  Matrix<S> ric(curv.dim, curv.dim);
  for (std::size_t j = 0; j < curv.dim; ++j)
    for (std::size_t k = 0; k < curv.dim; ++k) {
      S sum(0);
      for (std::size_t i = 0; i < curv.dim; ++i) sum += curv.at(i, j, k, i);
      ric.at(j, k) = sum;
    }
  return ric;
}

/// Basis-independent quadratic invariants plus the Ricci spectrum. In exact
/// mode the characteristic polynomial carries the spectrum exactly; the
/// float eigenvalue list is for display and float-mode comparison.
template <class S>
struct CurvatureSummary {
  S scalar = S(0);
  S ricci_sq = S(0);
  S riem_sq = S(0);
  std::vector<S> ricci_char_poly;       // det(lambda I - Ric), leading 1
  std::vector<double> ricci_spectrum;   // ascending, binary64
};

/// Summary without materializing the full 4-index tensor: the operators
/// R(b_p, b_q) = [nabla_p, nabla_q] - nabla_{[b_p,b_q]} are assembled one
/// antisymmetric pair at a time, feeding Ricci and |R|^2 directly.
template <class S>
CurvatureSummary<S> curvature_summary(const StructureConstants<S>& sc) {
  auto conn = koszul_connection(sc);
  const std::size_t d = sc.dim;
  std::vector<Matrix<S>> nabla(d, Matrix<S>(d, d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t l = 0; l < d; ++l) nabla[i].at(l, j) = conn.at(i, j, l);

  Matrix<S> ric(d, d);
  S riem(0);
  // TODO: compressed storage for the nabla operators; the dense products
  // start to dominate above total dimension ~40 in exact mode.
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = p + 1; q < d; ++q) {
      Matrix<S> op = commutator(nabla[p], nabla[q]);
      for (std::size_t s = 0; s < d; ++s)
        if (sc.at(p, q, s) != S(0)) op = op - nabla[s] * sc.at(p, q, s);
      // R[p][q][k][l] = op(l, k); the (q,p) pair contributes with a sign.
      riem += frobenius_norm_sq(op) * S(2);
      for (std::size_t k = 0; k < d; ++k) {
        ric.at(q, k) += op.at(p, k);
        ric.at(p, k) -= op.at(q, k);
      }
    }

  CurvatureSummary<S> sum;
  sum.scalar = ric.trace();
  sum.ricci_sq = frobenius_norm_sq(ric);
  sum.riem_sq = std::move(riem);
  sum.ricci_char_poly = char_poly(ric);
  DMatrix ricf(ric.rows(), ric.cols());
  for (std::size_t r = 0; r < ric.rows(); ++r)
    for (std::size_t c = 0; c < ric.cols(); ++c)
      ricf.at(r, c) = ScalarOps<S>::to_double(ric.at(r, c));
  sum.ricci_spectrum = symmetric_eigenvalues(ricf);
  return sum;
}

inline CurvatureTensor<Rational> curvature_tensor(const MetricNilpotentAlgebra& alg) {
  auto sc = full_structure_constants(alg);
  return curvature_tensor(koszul_connection(sc), sc);
}

inline QMatrix ricci(const MetricNilpotentAlgebra& alg) {
  return ricci(curvature_tensor(alg));
}

inline CurvatureSummary<Rational> curvature_summary(const MetricNilpotentAlgebra& alg) {
  return curvature_summary(full_structure_constants(alg));
}

/// Exact mode: componentwise equality including the characteristic
/// polynomial. Float mode: the invariants and sorted spectra within tol.
template <class S>
bool summaries_equal(const CurvatureSummary<S>& x, const CurvatureSummary<S>& y,
                     double tol = 0.0) {
  if constexpr (ScalarOps<S>::exact) {
    (void)tol;
    return x.scalar == y.scalar && x.ricci_sq == y.ricci_sq && x.riem_sq == y.riem_sq &&
           x.ricci_char_poly == y.ricci_char_poly;
  } else {
    if (x.ricci_spectrum.size() != y.ricci_spectrum.size()) return false;
    auto near = [tol](double a, double b) { return std::fabs(a - b) <= tol; };
    if (!near(x.scalar, y.scalar) || !near(x.ricci_sq, y.ricci_sq) ||
        !near(x.riem_sq, y.riem_sq))
      return false;
    for (std::size_t i = 0; i < x.ricci_spectrum.size(); ++i)
      if (!near(x.ricci_spectrum[i], y.ricci_spectrum[i])) return false;
    return true;
  }
}

}  // namespace nilred
