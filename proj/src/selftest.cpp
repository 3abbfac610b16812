#include "selftest.hpp"

#include <random>
#include <sstream>

#include "curvature.hpp"
#include "json.hpp"
#include "nr.hpp"
#include "report.hpp"

namespace nilred {

namespace {

struct Checker {
  bool pass = true;
  int checks = 0, failures = 0;
  std::ostringstream notes;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      pass = false;
      if (++failures <= 4) notes << "FAIL: " << what << "; ";
    }
  }

  std::string detail(const std::string& summary) const {
    std::ostringstream os;
    os << summary << " (" << checks - failures << "/" << checks << " checks)";
    std::string n = notes.str();
    if (!n.empty()) os << " " << n;
    return os.str();
  }
};

Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
  return Rational(num(rng), den(rng));
}

QMatrix random_skew(std::mt19937& rng, std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      m.at(i, j) = random_rational(rng);
      m.at(j, i) = -m.at(i, j);
    }
  return m;
}

// Residual of projecting `target` onto span(basis), by Gram-Schmidt; an
// independent route from the normal-equations solver.
Rational residual_sq_by_projection(const QMatrix& target,
                                   const std::vector<QMatrix>& basis) {
  std::vector<QMatrix> ortho;
  for (const auto& b : basis) {
    QMatrix w = b;
    for (const auto& u : ortho) {
      Rational c = frobenius_dot(w, u) / frobenius_norm_sq(u);
      w = w - u * c;
    }
    if (!w.is_zero()) ortho.push_back(std::move(w));
  }
  QMatrix r = target;
  for (const auto& u : ortho) {
    Rational c = frobenius_dot(r, u) / frobenius_norm_sq(u);
    r = r - u * c;
  }
  return frobenius_norm_sq(r);
}

// The raw 2+2 example with one flat central direction: [e1,e2] = f1 - f2.
JMap flat_example_j() {
  JMap j{2, 2, {}};
  j.mats.push_back(QMatrix::from_rows({{0, -1}, {1, 0}}));
  j.mats.push_back(QMatrix::from_rows({{0, 1}, {-1, 0}}));
  return j;
}

std::vector<HTypeParams> params_sweep(std::size_t max_total) {
  std::vector<HTypeParams> out;
  for (Family f : {Family::Complex, Family::Quaternion, Family::Octonion})
    for (std::size_t total = 1; total <= max_total; ++total)
      for (std::size_t p = 0; p <= total; ++p)
        out.push_back({f, p, total - p});
  return out;
}

CriterionResult criterion_agreement_sweep() {
  Checker ck;
  for (const auto& params : params_sweep(3)) {
    BuiltHType built = build_j_pq(params);
    auto general = classify_nr(built.j);
    auto closed = classify_nr_htype_closed_form(built.j);
    std::ostringstream tag;
    tag << family_name(params.family) << " p=" << params.p << " q=" << params.q;
    ck.expect(general.status == closed.status,
              "general and closed-form classifiers disagree for " + tag.str());
    const std::size_t m = built.j.dim_z;
    bool expect_nr =
        (m == 1) || (m == 3 && (built.params.p == 0 || built.params.q == 0));
    ck.expect(general.status == (expect_nr ? NRStatus::NaturallyReductive
                                           : NRStatus::NotNaturallyReductive),
              "unexpected NR verdict for " + tag.str());
  }
  return {1, "classification agreement sweep (p+q <= 3, all families)", ck.pass,
          ck.detail("general criterion vs closed form")};
}

CriterionResult criterion_headline_pair() {
  Checker ck;
  BuiltAlgebra a = build_constructor("n(1,1)", {Family::Quaternion, 1, 1});
  BuiltAlgebra b = build_constructor("n(2,0)", {Family::Quaternion, 2, 0});
  ck.expect(a.j.dim_v == 8 && b.j.dim_v == 8, "dim v must be 8 on both sides");
  ck.expect(a.j.dim_z == 3 && b.j.dim_z == 3, "dim z must be 3 on both sides");
  ck.expect(verify_htype(a.j).pass && verify_htype(b.j).pass,
            "both sides must be of Heisenberg type");

  auto sa = curvature_summary(a.alg);
  auto sb = curvature_summary(b.alg);
  ck.expect(summaries_equal(sa, sb), "curvature summaries must agree exactly");

  auto vb = classify_nr(b.j);
  ck.expect(vb.status == NRStatus::NaturallyReductive && vb.tau.has_value(),
            "n(2,0) must be naturally reductive with a tau certificate");
  if (vb.tau) {
    // Reconstruct j_{tau_{f_a} f_b} and compare with [J_a, J_b] entrywise.
    for (std::size_t aa = 0; aa < 3; ++aa)
      for (std::size_t bb = 0; bb < 3; ++bb) {
        QVec t(3);
        for (std::size_t c = 0; c < 3; ++c) t[c] = vb.tau->at(c, aa, bb);
        ck.expect(b.j.of(t) == commutator(b.j.mats[aa], b.j.mats[bb]),
                  "tau certificate must reproduce the commutators");
      }
    // tau_X Y = X*Y - Y*X on imaginary quaternions.
    for (std::size_t aa = 0; aa < 3; ++aa)
      for (std::size_t bb = 0; bb < 3; ++bb) {
        auto lhs = subtract(
            multiply(ce_basis(Family::Quaternion, aa + 1), ce_basis(Family::Quaternion, bb + 1)),
            multiply(ce_basis(Family::Quaternion, bb + 1), ce_basis(Family::Quaternion, aa + 1)));
        ck.expect(lhs.coords[0] == 0, "commutator of imaginary quaternions is imaginary");
        for (std::size_t c = 0; c < 3; ++c)
          ck.expect(vb.tau->at(c, aa, bb) == lhs.coords[c + 1],
                    "tau must equal the quaternion commutator");
      }
  }

  auto va = classify_nr(a.j);
  ck.expect(va.status == NRStatus::NotNaturallyReductive && va.closure_witness.has_value(),
            "n(1,1) must fail with a closure witness");
  if (va.closure_witness) {
    const auto& w = *va.closure_witness;
    ck.expect(w.residual_sq > 0, "closure witness residual must be positive");
    QMatrix target = commutator(a.j.mats[w.a - 1], a.j.mats[w.b - 1]);
    Rational indep = residual_sq_by_projection(target, a.j.mats);
    ck.expect(indep == w.residual_sq && indep > 0,
              "independent projection must confirm the residual");
  }

  Options opts;
  PairFlags flags = compare_flags(a, b, opts);
  ck.expect(flags.dims_equal && flags.summaries_equal && flags.nr_differs.value_or(false),
            "pair flags must be dims-equal, summaries-equal, nr-differs");
  return {2, "headline pair n(1,1) vs n(2,0)", ck.pass,
          ck.detail("shared invariants, differing NR verdicts")};
}

CriterionResult criterion_flat_example() {
  Checker ck;
  JMap j = flat_example_j();
  auto ker = kernel_of_j(j);
  ck.expect(ker.size() == 1, "ker(j) must be one-dimensional");
  if (ker.size() == 1)
    ck.expect(ker[0] == QVec{1, 1}, "ker(j) must be spanned by (1,1)");
  QVec x{1, 0}, y{0, 1};
  ck.expect(bracket_from_j(j, x, y) == QVec{Rational(1), Rational(-1)},
            "[e1,e2] must equal f1 - f2");

  MetricNilpotentAlgebra alg = algebra_from_j(j);
  ReducedAlgebra red = reduce_euclidean_factor(alg);
  ck.expect(red.euclidean_rank == 1, "Euclidean rank must be 1");
  ck.expect(red.core_dim_z() == 1 && red.core_dim_v == 2,
            "core must be 2+1 dimensional");
  if (red.core_dim_z() == 1) {
    const QMatrix& bslice = red.core_slices[0];
    ck.expect(bslice.at(0, 0) == 0 && bslice.at(1, 1) == 0 &&
                  bslice.at(0, 1) == -bslice.at(1, 0) && bslice.at(0, 1) != 0,
              "core bracket must have the Heisenberg pattern");
    // Normalized structure constant lambda = B(0,1)/sqrt(N) with lambda^2 = 2.
    Rational lam_sq =
        bslice.at(0, 1) * bslice.at(0, 1) / red.core_z_norms_sq[0];
    ck.expect(lam_sq == 2, "core bracket scale must satisfy lambda^2 = 2");
    ck.expect(!red.exact_core().has_value(),
              "normalization is irrational, exact core must be unavailable");
    auto fc = red.float_core();
    auto corenr = classify_nr(j_from_float_core(fc), 1e-9);
    ck.expect(corenr.status == NRStatus::NaturallyReductive,
              "the reduced Heisenberg core is naturally reductive");
  }
  auto verdict = classify_nr(j);
  ck.expect(verdict.status == NRStatus::OutOfScopeEuclideanFactor,
            "classification must be out of scope with a Euclidean factor");
  return {3, "flat-factor example (2+2 with one-dimensional kernel)", ck.pass,
          ck.detail("kernel, bracket, reduction")};
}

CriterionResult criterion_bracket_and_htype() {
  Checker ck;
  std::mt19937 rng(20240811u);
  std::uniform_int_distribution<std::size_t> nd(2, 6), md(1, 3);
  for (int iter = 0; iter < 100; ++iter) {
    JMap j{nd(rng), md(rng), {}};
    for (std::size_t a = 0; a < j.dim_z; ++a) j.mats.push_back(random_skew(rng, j.dim_v));
    MetricNilpotentAlgebra alg = algebra_from_j(j);
    JMap back = j_from_brackets(alg);
    bool same = back.dim_v == j.dim_v && back.dim_z == j.dim_z && back.mats == j.mats;
    ck.expect(same, "bracket <-> j round trip must be exact");
    for (std::size_t i = 0; i < j.dim_v && iter % 10 == 0; ++i)
      for (std::size_t k = 0; k < j.dim_v; ++k) {
        QVec x(j.dim_v, Rational(0)), y(j.dim_v, Rational(0));
        x[i] = 1;
        y[k] = 1;
        QVec br = bracket_from_j(j, x, y);
        for (std::size_t a = 0; a < j.dim_z; ++a)
          ck.expect(br[a] == j.mats[a].at(k, i),
                    "<[e_i,e_j], f_a> must equal <J_a e_i, e_j>");
      }
  }
  for (const auto& params : params_sweep(4)) {
    BuiltHType built = build_j_pq(params);
    ck.expect(verify_htype(built.j).pass, "constructed j maps must be H-type");
    ck.expect(kernel_of_j(built.j).empty(), "constructed j maps must have trivial kernel");
    const auto id = QMatrix::identity(built.j.dim_v);
    for (std::size_t a = 0; a < built.j.dim_z; ++a)
      for (std::size_t b = a; b < built.j.dim_z; ++b) {
        QMatrix lhs = built.j.mats[a] * built.j.mats[b] + built.j.mats[b] * built.j.mats[a];
        QMatrix rhs = (a == b) ? QMatrix(id * Rational(-2)) : QMatrix(built.j.dim_v, built.j.dim_v);
        ck.expect(lhs == rhs, "polarized identity must hold exactly");
      }
  }
  return {4, "bracket/j duality and Heisenberg-type identities", ck.pass,
          ck.detail("100 random round trips, constructor sweep p+q <= 4")};
}

CriterionResult criterion_isotypic() {
  Checker ck;
  for (Family f : {Family::Quaternion, Family::Octonion})
    for (std::size_t total = 1; total <= 4; ++total)
      for (std::size_t p = 0; p <= total; ++p) {
        BuiltHType built = build_j_pq({f, p, total - p});
        auto iso = isotypic_decomposition(built.j);
        std::ostringstream tag;
        tag << family_name(f) << " p=" << p << " q=" << total - p;
        ck.expect(iso.status == IsotypicStatus::Decomposed,
                  "decomposition must apply for " + tag.str());
        ck.expect(iso.mult_high == std::max(p, total - p) &&
                      iso.mult_low == std::min(p, total - p),
                  "multiplicities must recover {p,q} for " + tag.str());
        const auto id = QMatrix::identity(built.j.dim_v);
        ck.expect(iso.omega * iso.omega == id, "omega^2 must equal the identity");
        for (const auto& jm : built.j.mats)
          ck.expect(commutator(iso.omega, jm).is_zero(),
                    "omega must commute with every J_a");
      }
  return {5, "isotypic decomposition oracle (p+q <= 4 over H and O)", ck.pass,
          ck.detail("volume-element eigenspaces")};
}

CriterionResult criterion_curvature() {
  Checker ck;
  std::mt19937 rng(77u);

  std::vector<std::pair<std::string, MetricNilpotentAlgebra>> algebras;
  for (const auto& params : params_sweep(3)) {
    BuiltHType built = build_j_pq(params);
    std::ostringstream tag;
    tag << "n(" << params.p << "," << params.q << ") over " << family_name(params.family);
    algebras.emplace_back(tag.str(), built.alg);
  }
  algebras.emplace_back("flat example", algebra_from_j(flat_example_j()));
  MetricNilpotentAlgebra h3{2, 1, {QMatrix::from_rows({{0, 1}, {-1, 0}})}};
  algebras.emplace_back("H3", h3);
  MetricNilpotentAlgebra abelian{3, 2, {QMatrix(3, 3), QMatrix(3, 3)}};
  algebras.emplace_back("abelian", abelian);
  JMap random_raw{4, 2, {random_skew(rng, 4), random_skew(rng, 4)}};
  algebras.emplace_back("random raw", algebra_from_j(random_raw));

  for (const auto& [tag, alg] : algebras) {
    auto sc = full_structure_constants(alg);
    auto koszul = koszul_connection(sc);
    auto closed = two_step_connection(j_from_brackets(alg));
    ck.expect(koszul == closed, "Koszul vs closed-form connection: " + tag);

    const std::size_t d = alg.dim_total();
    if (d > 12) continue;
    auto curv = curvature_tensor(koszul, sc);
    bool sym = true, bianchi = true, pairsym = true;
    for (std::size_t i = 0; i < d && sym && bianchi && pairsym; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k)
          for (std::size_t l = 0; l < d; ++l) {
            if (curv.at(i, j, k, l) != -curv.at(j, i, k, l)) sym = false;
            if (curv.at(i, j, k, l) != -curv.at(i, j, l, k)) sym = false;
            if (curv.at(i, j, k, l) != curv.at(k, l, i, j)) pairsym = false;
            if (curv.at(i, j, k, l) + curv.at(j, k, i, l) + curv.at(k, i, j, l) != 0)
              bianchi = false;
          }
    ck.expect(sym, "index-pair antisymmetry: " + tag);
    ck.expect(pairsym, "pair-swap symmetry: " + tag);
    ck.expect(bianchi, "first Bianchi identity: " + tag);
  }

  auto abelian_sc = full_structure_constants(abelian);
  auto abelian_curv = curvature_tensor(koszul_connection(abelian_sc), abelian_sc);
  bool zero = true;
  for (const auto& v : abelian_curv.r)
    if (v != 0) zero = false;
  ck.expect(zero, "abelian algebras must be flat");

  return {6, "curvature oracle (connection closed forms, symmetries, Bianchi)", ck.pass,
          ck.detail("exhaustive to total dimension 12")};
}

CriterionResult criterion_composition_laws() {
  Checker ck;
  std::mt19937 rng(1234u);
  for (Family f : {Family::Complex, Family::Quaternion, Family::Octonion}) {
    const std::size_t d = family_dim(f);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        auto x = ce_basis(f, i), y = ce_basis(f, j);
        auto xy = multiply(x, y);
        ck.expect(norm_sq(xy) == norm_sq(x) * norm_sq(y),
                  "norm multiplicativity on basis pairs");
        ck.expect(multiply(multiply(x, x), y) == multiply(x, multiply(x, y)),
                  "left alternativity on basis pairs");
        ck.expect(multiply(y, multiply(x, x)) == multiply(multiply(y, x), x),
                  "right alternativity on basis pairs");
      }
    auto one = ce_basis(f, 0);
    for (std::size_t i = 0; i < d; ++i)
      ck.expect(multiply(one, ce_basis(f, i)) == ce_basis(f, i) &&
                    multiply(ce_basis(f, i), one) == ce_basis(f, i),
                "1 must be a two-sided unit");
  }
  for (int iter = 0; iter < 1000; ++iter) {
    Family f = (iter % 3 == 0)   ? Family::Complex
               : (iter % 3 == 1) ? Family::Quaternion
                                 : Family::Octonion;
    auto x = ce_zero(f), y = ce_zero(f);
    for (auto& c : x.coords) c = random_rational(rng);
    for (auto& c : y.coords) c = random_rational(rng);
    ck.expect(norm_sq(multiply(x, y)) == norm_sq(x) * norm_sq(y),
              "norm multiplicativity on random elements");
    ck.expect(multiply(multiply(x, x), y) == multiply(x, multiply(x, y)),
              "left alternativity on random elements");
    ck.expect(multiply(y, multiply(x, x)) == multiply(multiply(y, x), x),
              "right alternativity on random elements");
  }
  // Non-associativity witness in the octonions.
  auto e1 = ce_basis(Family::Octonion, 1), e2 = ce_basis(Family::Octonion, 2),
       e4 = ce_basis(Family::Octonion, 4), e7 = ce_basis(Family::Octonion, 7);
  auto left = multiply(multiply(e1, e2), e4);
  auto right = multiply(e1, multiply(e2, e4));
  ck.expect(left == e7, "(e1 e2) e4 must equal e7");
  ck.expect(right == subtract(ce_zero(Family::Octonion), e7), "e1 (e2 e4) must equal -e7");
  ck.expect(!(left == right), "associativity must fail in the octonions");
  return {7, "composition-algebra laws (norms, alternativity, witness)", ck.pass,
          ck.detail("basis pairs plus 1000 random elements")};
}

}  // namespace

std::vector<CriterionResult> run_selftest() {
  return {
      criterion_agreement_sweep(), criterion_headline_pair(), criterion_flat_example(),
      criterion_bracket_and_htype(), criterion_isotypic(), criterion_curvature(),
      criterion_composition_laws(),
  };
}

bool selftest_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

std::string render_selftest(const std::vector<CriterionResult>& results, bool as_json) {
  if (as_json) {
    nlohmann::ordered_json out;
    out["schema"] = 1;
    out["command"] = "selftest";
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& r : results)
      list.push_back(nlohmann::ordered_json{
          {"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    out["criteria"] = std::move(list);
    out["pass"] = selftest_passed(results);
    return out.dump(2) + "\n";
  }
  std::ostringstream os;
  for (const auto& r : results)
    os << "criterion " << r.id << " [" << (r.pass ? "pass" : "FAIL") << "] " << r.name
       << " - " << r.detail << "\n";
  os << (selftest_passed(results) ? "selftest: all criteria passed"
                                  : "selftest: FAILURES present")
     << "\n";
  return os.str();
}

}  // namespace nilred
