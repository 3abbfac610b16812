#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "algebra.hpp"
#include "composition.hpp"
#include "errors.hpp"
#include "linalg.hpp"

namespace nilred {

/// Structure map of the center defined by [j_X, j_Y] = j_{tau_X Y}:
/// tau_{f_a} f_b = sum_c t[c][a][b] f_c. Defined only when j_z is closed
/// under commutators and ker(j) = {0} (which makes the coefficients unique).
template <class S>
struct TauTensor {
  std::size_t m = 0;
  std::vector<S> t;

  explicit TauTensor(std::size_t m = 0) : m(m), t(m * m * m, S(0)) {}
  S& at(std::size_t c, std::size_t a, std::size_t b) { return t[(c * m + a) * m + b]; }
  const S& at(std::size_t c, std::size_t a, std::size_t b) const {
    return t[(c * m + a) * m + b];
  }
};

template <class S>
struct ClosureWitness {
  std::size_t a = 0, b = 0;  // 1-based pair with [J_a, J_b] outside span{J_c}
  S residual_sq = S(0);
  double residual() const {
    return std::sqrt(std::max(0.0, ScalarOps<S>::to_double(residual_sq)));
  }
};

template <class S>
struct ClosureResult {
  bool closed = true;
  std::optional<TauTensor<S>> tau;
  std::optional<ClosureWitness<S>> witness;
};

/// Condition 1: j_z = span{J_a} is a Lie subalgebra of so(v). For every
/// a < b the commutator [J_a, J_b] is solved against span{J_c}; witnesses
/// are reported in lexicographic (a, b) order. Requires ker(j) = {0}.
template <class S>
ClosureResult<S> check_closure(const BasicJMap<S>& j, double tol = 0.0) {
  if (!kernel_of_j(j, tol).empty())
    throw ValidationError("check_closure requires ker(j) = {0} (no Euclidean factor)");
  const std::size_t m = j.dim_z;
  ClosureResult<S> res;
  res.tau = TauTensor<S>(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      Membership<S> mem = solve_membership(commutator(j.mats[a], j.mats[b]), j.mats, tol);
      if (!mem.in_span(tol)) {
        res.closed = false;
        res.tau.reset();
        res.witness = ClosureWitness<S>{a + 1, b + 1, mem.residual_sq};
        return res;
      }
      for (std::size_t c = 0; c < m; ++c) {
        res.tau->at(c, a, b) = mem.coeffs[c];
        res.tau->at(c, b, a) = -mem.coeffs[c];
      }
    }
  return res;
}

struct SkewWitness {
  std::size_t c = 0, a = 0, b = 0;  // 1-based indices with t[c][a][b] != -t[b][a][c]
};

template <class S>
struct SkewCheck {
  bool pass = true;
  std::optional<SkewWitness> witness;
};

/// Condition 2: tau_X is skew on z for every X, i.e. t[c][a][b] = -t[b][a][c].
/// The first violation in lexicographic (c, a, b) order is reported.
template <class S>
SkewCheck<S> check_tau_skew(const TauTensor<S>& tau, double tol = 0.0) {
  for (std::size_t c = 0; c < tau.m; ++c)
    for (std::size_t a = 0; a < tau.m; ++a)
      for (std::size_t b = 0; b < tau.m; ++b)
        if (!ScalarOps<S>::is_zero(tau.at(c, a, b) + tau.at(b, a, c), tol))
          return {false, SkewWitness{c + 1, a + 1, b + 1}};
  return {};
}

enum class NRStatus {
  NaturallyReductive,
  NotNaturallyReductive,
  OutOfScopeEuclideanFactor,
};

inline const char* nr_status_name(NRStatus s) {
  switch (s) {
    case NRStatus::NaturallyReductive: return "naturally_reductive";
    case NRStatus::NotNaturallyReductive: return "not_naturally_reductive";
    case NRStatus::OutOfScopeEuclideanFactor: return "out_of_scope_euclidean_factor";
  }
  return "?";
}

template <class S>
struct NRVerdict {
  NRStatus status = NRStatus::NaturallyReductive;
  std::optional<TauTensor<S>> tau;               // certificate on success
  std::optional<ClosureWitness<S>> closure_witness;
  std::optional<SkewWitness> skew_witness;
};

/// Decision pipeline: kernel check, closure, skewness. The criterion is
/// stated for algebras without Euclidean factor, so ker(j) != {0} yields
/// OutOfScopeEuclideanFactor rather than a silent reduction.
template <class S>
NRVerdict<S> classify_nr(const BasicJMap<S>& j, double tol = 0.0) {
  NRVerdict<S> verdict;
  if (!kernel_of_j(j, tol).empty()) {
    verdict.status = NRStatus::OutOfScopeEuclideanFactor;
    return verdict;
  }
  ClosureResult<S> closure = check_closure(j, tol);
  if (!closure.closed) {
    verdict.status = NRStatus::NotNaturallyReductive;
    verdict.closure_witness = closure.witness;
    return verdict;
  }
  SkewCheck<S> skew = check_tau_skew(*closure.tau, tol);
  if (!skew.pass) {
    verdict.status = NRStatus::NotNaturallyReductive;
    verdict.skew_witness = skew.witness;
    return verdict;
  }
  verdict.status = NRStatus::NaturallyReductive;
  verdict.tau = std::move(closure.tau);
  return verdict;
}

/// Closed-form classification of generalized Heisenberg groups: naturally
/// reductive iff the center has dimension 1, or dimension 3 with v isotypic.
/// Statement-level verdict; no certificate. Requires a genuine H-type input.
template <class S>
NRVerdict<S> classify_nr_htype_closed_form(const BasicJMap<S>& j, double tol = 0.0) {
  if (j.dim_v == 0 || j.dim_z == 0)
    throw ValidationError("closed-form classifier requires dim v >= 1 and dim z >= 1");
  auto cert = verify_htype(j, tol);
  if (!cert.pass)
    throw ValidationError("closed-form classifier requires a map of Heisenberg type");
  NRVerdict<S> verdict;
  if (j.dim_z == 1) {
    verdict.status = NRStatus::NaturallyReductive;
  } else if (j.dim_z == 3) {
    auto iso = isotypic_decomposition(j, tol);
    verdict.status = iso.isotypic() ? NRStatus::NaturallyReductive
                                    : NRStatus::NotNaturallyReductive;
  } else {
    verdict.status = NRStatus::NotNaturallyReductive;
  }
  return verdict;
}

}  // namespace nilred
