#include "composition.hpp"

namespace nilred {

const char* family_name(Family f) {
  switch (f) {
    case Family::Complex: return "C";
    case Family::Quaternion: return "H";
    case Family::Octonion: return "O";
  }
  return "?";
}

CompositionElement ce_zero(Family f) {
  return {f, QVec(family_dim(f), Rational(0))};
}

CompositionElement ce_basis(Family f, std::size_t index) {
  if (index >= family_dim(f)) throw std::invalid_argument("basis index out of range");
  auto e = ce_zero(f);
  e.coords[index] = 1;
  return e;
}

CompositionElement ce_from(Family f, QVec coords) {
  if (coords.size() != family_dim(f))
    throw std::invalid_argument("coordinate count does not match the family");
  return {f, std::move(coords)};
}

namespace {

void cd_conjugate(const Rational* x, Rational* out, std::size_t dim) {
  out[0] = x[0];
  for (std::size_t i = 1; i < dim; ++i) out[i] = -x[i];
}

// Cayley-Dickson product on coordinate spans:
// (a, b)(c, d) = (a c - conj(d) b, d a + b conj(c)).
void cd_multiply(const Rational* x, const Rational* y, Rational* out, std::size_t dim) {
  if (dim == 1) {
    out[0] = x[0] * y[0];
    return;
  }
  const std::size_t h = dim / 2;
  const Rational *a = x, *b = x + h, *c = y, *d = y + h;
  std::vector<Rational> t1(h), t2(h), conj(h);

  cd_multiply(a, c, out, h);              // a c
  cd_conjugate(d, conj.data(), h);
  cd_multiply(conj.data(), b, t1.data(), h);  // conj(d) b
  for (std::size_t i = 0; i < h; ++i) out[i] -= t1[i];

  cd_multiply(d, a, t2.data(), h);        // d a
  cd_conjugate(c, conj.data(), h);
  cd_multiply(b, conj.data(), t1.data(), h);  // b conj(c)
  for (std::size_t i = 0; i < h; ++i) out[h + i] = t2[i] + t1[i];
}

void require_same_family(const CompositionElement& x, const CompositionElement& y) {
  if (x.family != y.family)
    throw std::invalid_argument("composition elements from different families");
}

}  // namespace

CompositionElement multiply(const CompositionElement& x, const CompositionElement& y) {
  require_same_family(x, y);
  CompositionElement out = ce_zero(x.family);
  cd_multiply(x.coords.data(), y.coords.data(), out.coords.data(), x.coords.size());
  return out;
}

CompositionElement conjugate(const CompositionElement& x) {
  CompositionElement out = x;
  cd_conjugate(x.coords.data(), out.coords.data(), x.coords.size());
  return out;
}

CompositionElement add(const CompositionElement& x, const CompositionElement& y) {
  require_same_family(x, y);
  CompositionElement out = x;
  for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] += y.coords[i];
  return out;
}

CompositionElement subtract(const CompositionElement& x, const CompositionElement& y) {
  require_same_family(x, y);
  CompositionElement out = x;
  for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] -= y.coords[i];
  return out;
}

Rational norm_sq(const CompositionElement& x) {
  Rational s(0);
  for (const auto& c : x.coords) s += c * c;
  return s;
}

QMatrix left_mult_matrix(Family f, std::size_t unit) {
  const std::size_t d = family_dim(f);
  if (unit == 0 || unit >= d) throw std::invalid_argument("imaginary unit index out of range");
  QMatrix m(d, d);
  auto eu = ce_basis(f, unit);
  for (std::size_t c = 0; c < d; ++c) {
    auto col = multiply(eu, ce_basis(f, c));
    for (std::size_t r = 0; r < d; ++r) m.at(r, c) = col.coords[r];
  }
  return m;
}

QMatrix right_mult_matrix(Family f, std::size_t unit) {
  const std::size_t d = family_dim(f);
  if (unit == 0 || unit >= d) throw std::invalid_argument("imaginary unit index out of range");
  QMatrix m(d, d);
  auto eu = ce_basis(f, unit);
  for (std::size_t c = 0; c < d; ++c) {
    auto col = multiply(ce_basis(f, c), eu);
    for (std::size_t r = 0; r < d; ++r) m.at(r, c) = col.coords[r];
  }
  return m;
}

HTypeParams normalize(HTypeParams params) {
  if (params.family == Family::Complex) {
    params.p += params.q;
    params.q = 0;
  }
  return params;
}

BuiltHType build_j_pq(HTypeParams raw) {
  HTypeParams params = normalize(raw);
  if (params.p + params.q == 0) throw ValidationError("p + q >= 1 required");

  const std::size_t dim = family_dim(params.family);
  const std::size_t m = dim - 1;
  BuiltHType built;
  built.params = params;
  built.j.dim_v = (params.p + params.q) * dim;
  built.j.dim_z = m;
  for (std::size_t a = 1; a <= m; ++a) {
    std::vector<QMatrix> blocks;
    blocks.reserve(params.p + params.q);
    QMatrix left = left_mult_matrix(params.family, a);
    QMatrix right = right_mult_matrix(params.family, a);
    for (std::size_t i = 0; i < params.p; ++i) blocks.push_back(left);
    for (std::size_t i = 0; i < params.q; ++i) blocks.push_back(right);
    built.j.mats.push_back(block_diag(blocks));
  }
  built.alg = algebra_from_j(built.j);
  return built;
}

}  // namespace nilred
