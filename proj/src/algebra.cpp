#include "algebra.hpp"

#include <sstream>

namespace nilred {

TwoStepCertificate verify_two_step(const MetricNilpotentAlgebra& alg) {
  const std::size_t n = alg.dim_v, m = alg.dim_z, d = alg.dim_total();
  if (alg.slices.size() != m)
    return {false, "slice count does not match dim_z", 0, 0, 0};
  for (std::size_t a = 0; a < m; ++a)
    if (alg.slices[a].rows() != n || alg.slices[a].cols() != n)
      return {false, "slice shape does not match dim_v", a + 1, 0, 0};

  // Antisymmetry of the bracket: A[a][i][j] = -A[a][j][i].
  for (std::size_t a = 0; a < m; ++a) {
    std::pair<std::size_t, std::size_t> bad;
    if (!alg.slices[a].is_skew_symmetric(&bad)) {
      std::ostringstream os;
      os << "antisymmetry violated: A[" << a + 1 << "][" << bad.first + 1 << "]["
         << bad.second + 1 << "] != -A[" << a + 1 << "][" << bad.second + 1 << "]["
         << bad.first + 1 << "]";
      return {false, os.str(), a + 1, bad.first + 1, bad.second + 1};
    }
  }

  // [b_x, b_y] on basis vectors; nonzero only for pairs inside v.
  auto bracket_bb = [&](std::size_t x, std::size_t y) {
    QVec out(d, Rational(0));
    if (x < n && y < n)
      for (std::size_t a = 0; a < m; ++a) out[n + a] = alg.slices[a].at(x, y);
    return out;
  };
  // [b_x, w] for arbitrary w by bilinearity; central b_x brackets to zero.
  auto bracket_bv = [&](std::size_t x, const QVec& w) {
    QVec out(d, Rational(0));
    if (x < n)
      for (std::size_t j = 0; j < n; ++j) {
        if (w[j] == 0) continue;
        for (std::size_t a = 0; a < m; ++a)
          out[n + a] += alg.slices[a].at(x, j) * w[j];
      }
    return out;
  };

  // Derived algebra inside z, and centrality of z.
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y) {
      QVec bxy = bracket_bb(x, y);
      for (std::size_t i = 0; i < n; ++i)
        if (bxy[i] != 0)
          return {false, "derived algebra escapes the center", 0, x + 1, y + 1};
      if (x >= n || y >= n)
        for (std::size_t k = 0; k < d; ++k)
          if (bxy[k] != 0) return {false, "center is not central", 0, x + 1, y + 1};
    }

  // Jacobi identity over all basis triples (automatic in 2 steps, still run).
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = x; y < d; ++y)
      for (std::size_t z = y; z < d; ++z) {
        QVec t1 = bracket_bv(x, bracket_bb(y, z));
        QVec t2 = bracket_bv(y, bracket_bb(z, x));
        QVec t3 = bracket_bv(z, bracket_bb(x, y));
        for (std::size_t k = 0; k < d; ++k)
          if (t1[k] + t2[k] + t3[k] != 0)
            return {false, "Jacobi identity violated", x + 1, y + 1, z + 1};
      }
  return {};
}

namespace {

// Gram-Schmidt without normalization; keeps everything rational.
std::vector<QVec> orthogonalize(const std::vector<QVec>& vs) {
  std::vector<QVec> out;
  for (const auto& v : vs) {
    QVec w = v;
    for (const auto& u : out) {
      Rational c = dot<Rational>(w, u) / dot<Rational>(u, u);
      for (std::size_t k = 0; k < w.size(); ++k) w[k] -= c * u[k];
    }
    bool zero = true;
    for (const auto& x : w)
      if (x != 0) {
        zero = false;
        break;
      }
    if (!zero) out.push_back(std::move(w));
  }
  return out;
}

}  // namespace

ReducedAlgebra reduce_euclidean_factor(const MetricNilpotentAlgebra& alg) {
  const std::size_t n = alg.dim_v, m = alg.dim_z;
  ReducedAlgebra red;
  red.core_dim_v = n;

  // Span of all bracket values [e_i, e_j] inside z.
  std::vector<QVec> bracket_rows;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      QVec row(m);
      for (std::size_t a = 0; a < m; ++a) row[a] = alg.slices[a].at(i, j);
      bracket_rows.push_back(std::move(row));
    }
  QMatrix stacked(bracket_rows.size(), m);
  for (std::size_t r = 0; r < bracket_rows.size(); ++r)
    for (std::size_t c = 0; c < m; ++c) stacked.at(r, c) = bracket_rows[r][c];
  std::vector<QVec> image = row_space_basis(std::move(stacked));

  red.core_z_basis = orthogonalize(image);
  for (const auto& w : red.core_z_basis) {
    red.core_z_norms_sq.push_back(dot<Rational>(w, w));
    QMatrix b(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Rational s(0);
        for (std::size_t a = 0; a < m; ++a) s += alg.slices[a].at(i, j) * w[a];
        b.at(i, j) = s;
      }
    red.core_slices.push_back(std::move(b));
  }

  // The orthogonal complement of [n,n] in z is exactly ker(j).
  QMatrix wrows(red.core_z_basis.size(), m);
  for (std::size_t r = 0; r < red.core_z_basis.size(); ++r)
    for (std::size_t c = 0; c < m; ++c) wrows.at(r, c) = red.core_z_basis[r][c];
  red.euclidean_basis = kernel_basis(std::move(wrows));
  red.euclidean_rank = red.euclidean_basis.size();
  return red;
}

std::optional<MetricNilpotentAlgebra> ReducedAlgebra::exact_core() const {
  std::vector<Rational> roots;
  for (const auto& nsq : core_z_norms_sq) {
    Rational r;
    if (!rational_sqrt(nsq, r)) return std::nullopt;
    roots.push_back(r);
  }
  MetricNilpotentAlgebra core{core_dim_v, core_z_basis.size(), {}};
  for (std::size_t a = 0; a < core_slices.size(); ++a) {
    QMatrix s = core_slices[a];
    for (std::size_t i = 0; i < s.rows(); ++i)
      for (std::size_t j = 0; j < s.cols(); ++j) s.at(i, j) /= roots[a];
    core.slices.push_back(std::move(s));
  }
  return core;
}

ReducedAlgebra::FloatCore ReducedAlgebra::float_core() const {
  FloatCore core{core_dim_v, core_z_basis.size(), {}};
  for (std::size_t a = 0; a < core_slices.size(); ++a) {
    DMatrix s = to_float(core_slices[a]);
    double inv = 1.0 / std::sqrt(to_double(core_z_norms_sq[a]));
    for (std::size_t i = 0; i < s.rows(); ++i)
      for (std::size_t j = 0; j < s.cols(); ++j) s.at(i, j) *= inv;
    core.slices.push_back(std::move(s));
  }
  return core;
}

}  // namespace nilred
