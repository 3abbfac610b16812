#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "matrix.hpp"

namespace nilred {

/// The three normed division algebras beyond R that carry the constructions
/// here: complex numbers, quaternions, octonions.
enum class Family { Complex, Quaternion, Octonion };

constexpr std::size_t family_dim(Family f) {
  switch (f) {
    case Family::Complex: return 2;
    case Family::Quaternion: return 4;
    case Family::Octonion: return 8;
  }
  return 0;
}

const char* family_name(Family f);

/// Element in the standard basis {1, e_1, ..., e_{dim-1}}. The basis is
/// fixed by Cayley-Dickson doubling from R with the convention
/// e_{d+i} = e_i * e_d at each doubling (so for the octonions,
/// e_{4+i} = e_i * e_4). Any other valid table would do; this is the single
/// point where the choice lives.
struct CompositionElement {
  Family family = Family::Complex;
  QVec coords;
};

CompositionElement ce_zero(Family f);
CompositionElement ce_basis(Family f, std::size_t index);
CompositionElement ce_from(Family f, QVec coords);

inline bool operator==(const CompositionElement& x, const CompositionElement& y) {
  return x.family == y.family && x.coords == y.coords;
}

CompositionElement multiply(const CompositionElement& x, const CompositionElement& y);
CompositionElement conjugate(const CompositionElement& x);
CompositionElement add(const CompositionElement& x, const CompositionElement& y);
CompositionElement subtract(const CompositionElement& x, const CompositionElement& y);
Rational norm_sq(const CompositionElement& x);

/// Matrix of x |-> e_u * x (columns are e_u * e_c). `unit` in 1..dim-1.
QMatrix left_mult_matrix(Family f, std::size_t unit);
/// Matrix of x |-> x * e_u.
QMatrix right_mult_matrix(Family f, std::size_t unit);

/// Parameters naming n(p,q): v = A^p (+) A^q with the center acting by left
/// multiplication on the first p copies and right multiplication on the
/// last q. For the complex family left and right actions coincide, so q is
/// normalized into p.
struct HTypeParams {
  Family family = Family::Quaternion;
  std::size_t p = 0;
  std::size_t q = 0;
};

HTypeParams normalize(HTypeParams params);

struct BuiltHType {
  HTypeParams params;  // normalized
  JMap j;
  MetricNilpotentAlgebra alg;
};

/// The j map of n(p,q): m = dim(A) - 1 skew matrices with entries in
/// {-1, 0, 1}, block-diagonal over the p + q copies of A.
BuiltHType build_j_pq(HTypeParams params);

/// Check of the polarized identity J_a J_b + J_b J_a = -2 delta_ab Id for
/// all a <= b, equivalent to j_Z^2 = -|Z|^2 Id for every Z.
template <class S>
struct HTypeCertificate {
  bool pass = true;
  std::size_t a = 0, b = 0;   // 1-based violating pair when !pass
  Matrix<S> deviation;        // J_a J_b + J_b J_a + 2 delta_ab Id
};

template <class S>
HTypeCertificate<S> verify_htype(const BasicJMap<S>& j, double tol = 0.0) {
  const auto id = Matrix<S>::identity(j.dim_v);
  for (std::size_t a = 0; a < j.dim_z; ++a)
    for (std::size_t b = a; b < j.dim_z; ++b) {
      Matrix<S> dev = j.mats[a] * j.mats[b] + j.mats[b] * j.mats[a];
      if (a == b) dev = dev + id * S(2);
      if (!dev.is_zero(tol)) return {false, a + 1, b + 1, std::move(dev)};
    }
  return {};
}

enum class IsotypicStatus {
  TriviallyIsotypic,    // dim z != 3 mod 4: a unique irreducible module
  Decomposed,           // dim z in {3, 7}: multiplicities {p, q} recovered
  UnsupportedCenterDim  // dim z = 3 mod 4 but not 3 or 7: eigenspaces only
};

/// Outcome of splitting v by the volume element omega = J_1 ... J_m.
/// The multiplicity pair is unordered (swapping the eigenspaces corresponds
/// to the isomorphism n(p,q) ~ n(q,p)), reported high first.
template <class S>
struct IsotypicResult {
  IsotypicStatus status = IsotypicStatus::TriviallyIsotypic;
  std::size_t dim_plus = 0, dim_minus = 0;  // omega eigenspace dimensions
  std::size_t mult_high = 0, mult_low = 0;  // {p, q} sorted descending
  Matrix<S> omega;

  bool isotypic() const {
    return status == IsotypicStatus::TriviallyIsotypic ||
           (status == IsotypicStatus::Decomposed && mult_low == 0);
  }
};

template <class S>
IsotypicResult<S> isotypic_decomposition(const BasicJMap<S>& j, double tol = 0.0) {
  auto cert = verify_htype(j, tol);
  if (!cert.pass)
    throw ValidationError("isotypic_decomposition requires a map of Heisenberg type");
  IsotypicResult<S> res;
  const std::size_t m = j.dim_z;
  if (m % 4 != 3) return res;

  Matrix<S> omega = Matrix<S>::identity(j.dim_v);
  for (const auto& jm : j.mats) omega = omega * jm;
  Matrix<S> sq = omega * omega - Matrix<S>::identity(j.dim_v);
  if (!sq.is_zero(tol))
    throw ValidationError("volume element does not square to the identity");

  const auto id = Matrix<S>::identity(j.dim_v);
  res.dim_plus = kernel_basis(omega - id, tol).size();
  res.dim_minus = kernel_basis(omega + id, tol).size();
  res.omega = std::move(omega);
  if (m == 3 || m == 7) {
    const std::size_t d = (m == 3) ? 4 : 8;
    if (res.dim_plus % d != 0 || res.dim_minus % d != 0)
      throw ValidationError("eigenspace dimensions are not multiples of the module dimension");
    res.mult_high = std::max(res.dim_plus, res.dim_minus) / d;
    res.mult_low = std::min(res.dim_plus, res.dim_minus) / d;
    res.status = IsotypicStatus::Decomposed;
  } else {
    res.status = IsotypicStatus::UnsupportedCenterDim;
  }
  return res;
}

}  // namespace nilred
