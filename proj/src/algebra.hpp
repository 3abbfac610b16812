#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "matrix.hpp"

namespace nilred {

/// The linear map j : z -> so(v), stored as one skew matrix per central
/// basis direction; j_Z = sum_a z_a * mats[a].
template <class S>
struct BasicJMap {
  std::size_t dim_v = 0;
  std::size_t dim_z = 0;
  std::vector<Matrix<S>> mats;

  Matrix<S> of(const Vec<S>& z) const {
    if (z.size() != dim_z) throw std::invalid_argument("j_Z coordinate size mismatch");
    Matrix<S> m(dim_v, dim_v);
    for (std::size_t a = 0; a < dim_z; ++a)
      if (!ScalarOps<S>::is_zero(z[a], 0.0)) m = m + mats[a] * z[a];
    return m;
  }
};

using JMap = BasicJMap<Rational>;

inline BasicJMap<double> to_float(const JMap& j) {
  BasicJMap<double> f{j.dim_v, j.dim_z, {}};
  f.mats.reserve(j.mats.size());
  for (const auto& m : j.mats) f.mats.push_back(to_float(m));
  return f;
}

/// A 2-step nilpotent metric Lie algebra n = v (+) z in an orthonormal basis
/// {e_1..e_n} of v and {f_1..f_m} of z, with the standard inner product.
///
/// slices[a](i, j) = <[e_{i+1}, e_{j+1}], f_{a+1}>   (0-based storage).
///
/// Sign convention, fixed globally: <J_a e_i, e_j> = <[e_i, e_j], f_a>,
/// hence J_a = slices[a]^T = -slices[a].
struct MetricNilpotentAlgebra {
  std::size_t dim_v = 0;
  std::size_t dim_z = 0;
  std::vector<QMatrix> slices;

  std::size_t dim_total() const { return dim_v + dim_z; }
};

/// [X, Y] for X, Y in v, as central coordinates: sum_a <J_a X, Y> f_a.
template <class S>
Vec<S> bracket_from_j(const BasicJMap<S>& j, const Vec<S>& x, const Vec<S>& y) {
  if (x.size() != j.dim_v || y.size() != j.dim_v)
    throw std::invalid_argument("bracket_from_j: vector dimension mismatch");
  Vec<S> z(j.dim_z, S(0));
  for (std::size_t a = 0; a < j.dim_z; ++a) z[a] = dot(j.mats[a] * x, y);
  return z;
}

inline JMap j_from_brackets(const MetricNilpotentAlgebra& alg) {
  JMap j{alg.dim_v, alg.dim_z, {}};
  j.mats.reserve(alg.dim_z);
  for (const auto& s : alg.slices) j.mats.push_back(s.transpose());
  return j;
}

inline MetricNilpotentAlgebra algebra_from_j(const JMap& j) {
  MetricNilpotentAlgebra alg{j.dim_v, j.dim_z, {}};
  alg.slices.reserve(j.dim_z);
  for (const auto& m : j.mats) alg.slices.push_back(m.transpose());
  return alg;
}

/// Result of the structural check: slice antisymmetry, centrality of z,
/// derived algebra inside z, and the Jacobi identity on all basis triples.
struct TwoStepCertificate {
  bool pass = true;
  std::string violation;                    // human-readable, empty when pass
  std::size_t a = 0, i = 0, j = 0;          // 1-based indices of the offender
};

/// Full-algebra bracket on coordinates over {e_1..e_n, f_1..f_m}.
inline QVec full_bracket(const MetricNilpotentAlgebra& alg, const QVec& x, const QVec& y) {
  const std::size_t n = alg.dim_v, d = alg.dim_total();
  if (x.size() != d || y.size() != d)
    throw std::invalid_argument("full_bracket: coordinate size mismatch");
  QVec out(d, Rational(0));
  for (std::size_t a = 0; a < alg.dim_z; ++a) {
    Rational s(0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s += alg.slices[a].at(i, j) * x[i] * y[j];
    out[n + a] = s;
  }
  return out;
}

TwoStepCertificate verify_two_step(const MetricNilpotentAlgebra& alg);

/// Basis of ker(j) = {Z in z : j_Z = 0}. Empty iff the algebra has no
/// Euclidean factor. Each mats[a] is vectorized into column a.
template <class S>
std::vector<Vec<S>> kernel_of_j(const BasicJMap<S>& j, double tol = 0.0) {
  Matrix<S> stacked(j.dim_v * j.dim_v, j.dim_z);
  for (std::size_t a = 0; a < j.dim_z; ++a)
    for (std::size_t r = 0; r < j.dim_v; ++r)
      for (std::size_t c = 0; c < j.dim_v; ++c)
        stacked.at(r * j.dim_v + c, a) = j.mats[a].at(r, c);
  return kernel_basis(std::move(stacked), tol);
}

/// Orthogonal splitting z = [n,n] (+) ([n,n])^perp. The core keeps v and the
/// derived part of the center; the complement is the flat R^k factor.
///
/// The core's central basis {w_a} is rational and orthogonal but generally
/// not unit length (unit vectors may need irrational coordinates), so the
/// core is stored as pre-normalization slices B_a with squared norms N_a:
/// the orthonormal-frame structure constants are B_a / sqrt(N_a).
struct ReducedAlgebra {
  std::size_t core_dim_v = 0;
  std::vector<QVec> core_z_basis;          // orthogonal basis of [n,n], f-coordinates
  std::vector<Rational> core_z_norms_sq;   // N_a = |w_a|^2
  std::vector<QMatrix> core_slices;        // B_a(i,j) = <[e_i,e_j], w_a>
  std::size_t euclidean_rank = 0;
  std::vector<QVec> euclidean_basis;       // basis of ([n,n])^perp = ker(j)

  std::size_t core_dim_z() const { return core_z_basis.size(); }

  /// Exact orthonormal core, available when every N_a is a rational square.
  std::optional<MetricNilpotentAlgebra> exact_core() const;

  /// Orthonormal core in binary64, always available.
  struct FloatCore {
    std::size_t dim_v = 0, dim_z = 0;
    std::vector<DMatrix> slices;
  };
  FloatCore float_core() const;
};

ReducedAlgebra reduce_euclidean_factor(const MetricNilpotentAlgebra& alg);

inline BasicJMap<double> j_from_float_core(const ReducedAlgebra::FloatCore& core) {
  BasicJMap<double> j{core.dim_v, core.dim_z, {}};
  for (const auto& s : core.slices) j.mats.push_back(s.transpose());
  return j;
}

}  // namespace nilred
