// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Criteria 1-7 exercise the library directly; criterion 8 drives the
// installed CLI binary end to end.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "curvature.hpp"
#include "json.hpp"
#include "nr.hpp"
#include "report.hpp"

using namespace nilred;

namespace {

struct Check {
  int total = 0;
  std::vector<std::string> failures;

  void that(bool ok, const std::string& what) {
    ++total;
    if (!ok) failures.push_back(what);
  }
};

Rational rand_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
  return Rational(num(rng), den(rng));
}

QMatrix rand_skew(std::mt19937& rng, std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      m.at(i, j) = rand_rational(rng);
      m.at(j, i) = -m.at(i, j);
    }
  return m;
}

// Independent least-squares residual via Gram-Schmidt projection.
Rational projection_residual_sq(const QMatrix& target, const std::vector<QMatrix>& basis) {
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

JMap flat_example_j() {
  JMap j{2, 2, {}};
  j.mats.push_back(QMatrix::from_rows({{0, -1}, {1, 0}}));
  j.mats.push_back(QMatrix::from_rows({{0, 1}, {-1, 0}}));
  return j;
}

std::vector<HTypeParams> sweep(std::size_t max_total) {
  std::vector<HTypeParams> out;
  for (Family f : {Family::Complex, Family::Quaternion, Family::Octonion})
    for (std::size_t total = 1; total <= max_total; ++total)
      for (std::size_t p = 0; p <= total; ++p) out.push_back({f, p, total - p});
  return out;
}

void criterion1_agreement(Check& ck) {
  for (const auto& params : sweep(3)) {
    BuiltHType built = build_j_pq(params);
    auto general = classify_nr(built.j);
    auto closed = classify_nr_htype_closed_form(built.j);
    std::ostringstream tag;
    tag << family_name(params.family) << "(" << params.p << "," << params.q << ")";
    ck.that(general.status == closed.status, "classifier disagreement on " + tag.str());
    bool expect_nr = built.j.dim_z == 1 ||
                     (built.j.dim_z == 3 && (built.params.p == 0 || built.params.q == 0));
    ck.that((general.status == NRStatus::NaturallyReductive) == expect_nr,
            "wrong NR verdict on " + tag.str());
  }
}

void criterion2_headline(Check& ck) {
  BuiltAlgebra a = build_constructor("n(1,1)", {Family::Quaternion, 1, 1});
  BuiltAlgebra b = build_constructor("n(2,0)", {Family::Quaternion, 2, 0});
  ck.that(a.j.dim_v == 8 && b.j.dim_v == 8 && a.j.dim_z == 3 && b.j.dim_z == 3,
          "headline pair dims must be v=8, z=3");
  ck.that(verify_htype(a.j).pass && verify_htype(b.j).pass, "both sides H-type");

  auto sa = curvature_summary(a.alg);
  auto sb = curvature_summary(b.alg);
  ck.that(sa.scalar == sb.scalar && sa.ricci_sq == sb.ricci_sq &&
              sa.riem_sq == sb.riem_sq && sa.ricci_char_poly == sb.ricci_char_poly,
          "curvature summaries equal exactly");

  auto vb = classify_nr(b.j);
  ck.that(vb.status == NRStatus::NaturallyReductive && vb.tau.has_value(),
          "n(2,0) naturally reductive with certificate");
  if (vb.tau) {
    bool tau_ok = true, comm_ok = true;
    for (std::size_t aa = 0; aa < 3; ++aa)
      for (std::size_t bb = 0; bb < 3; ++bb) {
        QVec t(3);
        for (std::size_t c = 0; c < 3; ++c) t[c] = vb.tau->at(c, aa, bb);
        if (!(b.j.of(t) == commutator(b.j.mats[aa], b.j.mats[bb]))) tau_ok = false;
        auto q = subtract(multiply(ce_basis(Family::Quaternion, aa + 1),
                                   ce_basis(Family::Quaternion, bb + 1)),
                          multiply(ce_basis(Family::Quaternion, bb + 1),
                                   ce_basis(Family::Quaternion, aa + 1)));
        for (std::size_t c = 0; c < 3; ++c)
          if (vb.tau->at(c, aa, bb) != q.coords[c + 1]) comm_ok = false;
      }
    ck.that(tau_ok, "certificate reconstructs j_{tau_X Y} = [j_X, j_Y] entrywise");
    ck.that(comm_ok, "tau_X Y = X*Y - Y*X entrywise");
  }

  auto va = classify_nr(a.j);
  ck.that(va.status == NRStatus::NotNaturallyReductive && va.closure_witness.has_value(),
          "n(1,1) not naturally reductive with closure witness");
  if (va.closure_witness) {
    const auto& w = *va.closure_witness;
    QMatrix target = commutator(a.j.mats[w.a - 1], a.j.mats[w.b - 1]);
    Rational indep = projection_residual_sq(target, a.j.mats);
    ck.that(indep > 0 && indep == w.residual_sq,
            "witness residual re-verifies positive independently");
  }
}

void criterion3_flat_example(Check& ck) {
  JMap j = flat_example_j();
  auto ker = kernel_of_j(j);
  ck.that(ker.size() == 1 && ker[0] == QVec{1, 1}, "ker(j) = span{(1,1)}");
  QVec e1{1, 0}, e2{0, 1};
  ck.that(bracket_from_j(j, e1, e2) == QVec{Rational(1), Rational(-1)},
          "[e1,e2] = e3 - e4");
  ReducedAlgebra red = reduce_euclidean_factor(algebra_from_j(j));
  ck.that(red.euclidean_rank == 1, "Euclidean rank 1");
  bool core_ok = red.core_dim_v == 2 && red.core_dim_z() == 1;
  if (core_ok) {
    const QMatrix& b = red.core_slices[0];
    core_ok = b.at(0, 0) == 0 && b.at(1, 1) == 0 && b.at(0, 1) == -b.at(1, 0) &&
              b.at(0, 1) != 0 &&
              b.at(0, 1) * b.at(0, 1) / red.core_z_norms_sq[0] == 2;
  }
  ck.that(core_ok,
          "reduced core is the 3-dim Heisenberg algebra (bracket scale sqrt 2)");
}

void criterion4_duality_and_htype(Check& ck) {
  std::mt19937 rng(9001);
  std::uniform_int_distribution<std::size_t> nd(1, 6), md(1, 4);
  bool round_ok = true;
  for (int iter = 0; iter < 100; ++iter) {
    JMap j{nd(rng), md(rng), {}};
    for (std::size_t a = 0; a < j.dim_z; ++a) j.mats.push_back(rand_skew(rng, j.dim_v));
    JMap back = j_from_brackets(algebra_from_j(j));
    if (!(back.mats == j.mats)) round_ok = false;
  }
  ck.that(round_ok, "bracket <-> j round trip exact on 100 random skew inputs");

  for (const auto& params : sweep(4)) {
    BuiltHType built = build_j_pq(params);
    std::ostringstream tag;
    tag << family_name(params.family) << "(" << params.p << "," << params.q << ")";
    ck.that(verify_htype(built.j).pass, "H-type verification on " + tag.str());
    const auto id = QMatrix::identity(built.j.dim_v);
    bool polarized = true;
    for (std::size_t a = 0; a < built.j.dim_z && polarized; ++a)
      for (std::size_t b = a; b < built.j.dim_z && polarized; ++b) {
        QMatrix lhs =
            built.j.mats[a] * built.j.mats[b] + built.j.mats[b] * built.j.mats[a];
        QMatrix rhs =
            (a == b) ? QMatrix(id * Rational(-2)) : QMatrix(built.j.dim_v, built.j.dim_v);
        if (!(lhs == rhs)) polarized = false;
      }
    ck.that(polarized, "polarized identity on " + tag.str());
    ck.that(kernel_of_j(built.j).empty(), "trivial kernel on " + tag.str());
  }
}

void criterion5_isotypic(Check& ck) {
  for (Family f : {Family::Quaternion, Family::Octonion})
    for (std::size_t total = 1; total <= 4; ++total)
      for (std::size_t p = 0; p <= total; ++p) {
        BuiltHType built = build_j_pq({f, p, total - p});
        auto iso = isotypic_decomposition(built.j);
        std::ostringstream tag;
        tag << family_name(f) << "(" << p << "," << total - p << ")";
        ck.that(iso.status == IsotypicStatus::Decomposed &&
                    iso.mult_high == std::max(p, total - p) &&
                    iso.mult_low == std::min(p, total - p),
                "multiplicities recover {p,q} for " + tag.str());
        ck.that(iso.omega * iso.omega == QMatrix::identity(built.j.dim_v),
                "omega^2 = Id for " + tag.str());
        bool commutes = true;
        for (const auto& jm : built.j.mats)
          if (!commutator(iso.omega, jm).is_zero()) commutes = false;
        ck.that(commutes, "[omega, J_a] = 0 for " + tag.str());
      }
}

void criterion6_curvature(Check& ck) {
  std::mt19937 rng(6);
  std::vector<std::pair<std::string, MetricNilpotentAlgebra>> algebras;
  for (const auto& params : sweep(3)) {
    BuiltHType built = build_j_pq(params);
    std::ostringstream tag;
    tag << family_name(params.family) << "(" << params.p << "," << params.q << ")";
    algebras.emplace_back(tag.str(), built.alg);
  }
  algebras.emplace_back("H3",
                        MetricNilpotentAlgebra{2, 1, {QMatrix::from_rows({{0, 1}, {-1, 0}})}});
  algebras.emplace_back("flat", algebra_from_j(flat_example_j()));
  MetricNilpotentAlgebra abelian{3, 2, {QMatrix(3, 3), QMatrix(3, 3)}};
  algebras.emplace_back("abelian", abelian);
  algebras.emplace_back("random", algebra_from_j(JMap{4, 2, {rand_skew(rng, 4), rand_skew(rng, 4)}}));

  for (const auto& [tag, alg] : algebras) {
    auto sc = full_structure_constants(alg);
    ck.that(koszul_connection(sc) == two_step_connection(j_from_brackets(alg)),
            "Koszul equals the closed-form connection on " + tag);
    if (alg.dim_total() > 12) continue;
    auto curv = curvature_tensor(koszul_connection(sc), sc);
    const std::size_t d = curv.dim;
    bool ok = true;
    for (std::size_t i = 0; i < d && ok; ++i)
      for (std::size_t j = 0; j < d && ok; ++j)
        for (std::size_t k = 0; k < d && ok; ++k)
          for (std::size_t l = 0; l < d; ++l) {
            if (curv.at(i, j, k, l) != -curv.at(j, i, k, l) ||
                curv.at(i, j, k, l) != -curv.at(i, j, l, k) ||
                curv.at(i, j, k, l) != curv.at(k, l, i, j) ||
                curv.at(i, j, k, l) + curv.at(j, k, i, l) + curv.at(k, i, j, l) != 0) {
              ok = false;
              break;
            }
          }
    ck.that(ok, "curvature symmetries and first Bianchi on " + tag);
  }

  auto sc = full_structure_constants(abelian);
  auto curv = curvature_tensor(koszul_connection(sc), sc);
  bool flat = true;
  for (const auto& r : curv.r)
    if (r != 0) flat = false;
  ck.that(flat, "abelian curvature vanishes identically");
}

void criterion7_composition(Check& ck) {
  std::mt19937 rng(7777);
  for (Family f : {Family::Complex, Family::Quaternion, Family::Octonion}) {
    const std::size_t d = family_dim(f);
    bool norm_ok = true, alt_ok = true;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        auto x = ce_basis(f, i), y = ce_basis(f, j);
        if (norm_sq(multiply(x, y)) != norm_sq(x) * norm_sq(y)) norm_ok = false;
        if (!(multiply(multiply(x, x), y) == multiply(x, multiply(x, y))) ||
            !(multiply(y, multiply(x, x)) == multiply(multiply(y, x), x)))
          alt_ok = false;
      }
    ck.that(norm_ok, std::string("norm multiplicativity on basis pairs, family ") +
                         family_name(f));
    ck.that(alt_ok, std::string("alternativity on basis pairs, family ") + family_name(f));
  }
  bool rand_ok = true;
  for (int iter = 0; iter < 1000; ++iter) {
    Family f = (iter % 3 == 0)   ? Family::Complex
               : (iter % 3 == 1) ? Family::Quaternion
                                 : Family::Octonion;
    auto x = ce_zero(f), y = ce_zero(f);
    for (auto& c : x.coords) c = rand_rational(rng);
    for (auto& c : y.coords) c = rand_rational(rng);
    if (norm_sq(multiply(x, y)) != norm_sq(x) * norm_sq(y)) rand_ok = false;
    if (!(multiply(multiply(x, x), y) == multiply(x, multiply(x, y)))) rand_ok = false;
    if (!(multiply(y, multiply(x, x)) == multiply(multiply(y, x), x))) rand_ok = false;
  }
  ck.that(rand_ok, "laws hold on 1000 random rational elements");

  auto e1 = ce_basis(Family::Octonion, 1), e2 = ce_basis(Family::Octonion, 2),
       e4 = ce_basis(Family::Octonion, 4), e7 = ce_basis(Family::Octonion, 7);
  ck.that(multiply(multiply(e1, e2), e4) == e7 &&
              multiply(e1, multiply(e2, e4)) == subtract(ce_zero(Family::Octonion), e7),
          "recorded non-associativity witness (e1 e2) e4 = -e1 (e2 e4) = e7");
}

int run_command(const std::string& cmd, std::string& output) {
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return -1;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, n);
  int rc = pclose(pipe);
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

void criterion8_cli(Check& ck) {
  const std::string cli = NILRED_CLI_PATH;
  std::string out;
  int rc = run_command("\"" + cli + "\" selftest", out);
  ck.that(rc == 0, "CLI selftest exits 0");
  ck.that(out.find("criterion 1 [pass]") != std::string::npos,
          "CLI selftest prints per-criterion lines");

  auto dir = std::filesystem::temp_directory_path();
  auto specfile = dir / ("nilred_acceptance_" + std::to_string(::getpid()) + ".nrs");
  {
    std::ofstream f(specfile);
    f << "algebra n11 { family = H; p = 1; q = 1; }\n"
      << "algebra n20 { family = H; p = 2; q = 0; }\n";
  }
  out.clear();
  rc = run_command("\"" + cli + "\" compare \"" + specfile.string() + "\" --json", out);
  ck.that(rc == 0, "CLI compare exits 0");
  bool nr_differs = false;
  try {
    auto doc = nlohmann::json::parse(out);
    nr_differs = doc.at("pair").at("nr-differs").get<bool>();
    ck.that(doc.at("schema").get<int>() == 1, "compare JSON carries schema 1");
  } catch (...) {
    ck.that(false, "compare emits parseable JSON");
  }
  ck.that(nr_differs, "compare JSON reports nr-differs = true");

  auto badfile = dir / ("nilred_acceptance_bad_" + std::to_string(::getpid()) + ".nrs");
  {
    std::ofstream f(badfile);
    f << "algebra ! {}\n";
  }
  out.clear();
  rc = run_command("\"" + cli + "\" classify \"" + badfile.string() + "\" 2>/dev/null", out);
  ck.that(rc == 1, "CLI exits 1 on syntax errors");
  {
    std::ofstream f(badfile);
    f << "algebra a { family = H; p = 0; q = 0; }\n";
  }
  out.clear();
  rc = run_command("\"" + cli + "\" classify \"" + badfile.string() + "\" 2>/dev/null", out);
  ck.that(rc == 2, "CLI exits 2 on validation errors");

  std::filesystem::remove(specfile);
  std::filesystem::remove(badfile);
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    std::function<void(Check&)> fn;
  };
  std::vector<Criterion> criteria = {
      {1, "classification agreement sweep (families C/H/O, p+q <= 3)", criterion1_agreement},
      {2, "headline pair n(1,1) vs n(2,0)", criterion2_headline},
      {3, "flat-factor example reproduction", criterion3_flat_example},
      {4, "bracket/j duality and Heisenberg-type identities", criterion4_duality_and_htype},
      {5, "isotypic decomposition oracle (p+q <= 4 over H and O)", criterion5_isotypic},
      {6, "curvature oracle (closed forms, symmetries, Bianchi)", criterion6_curvature},
      {7, "composition-algebra laws", criterion7_composition},
      {8, "CLI selftest and headline compare", criterion8_cli},
  };

  bool all_pass = true;
  for (const auto& c : criteria) {
    Check ck;
    try {
      c.fn(ck);
    } catch (const std::exception& e) {
      ck.that(false, std::string("exception: ") + e.what());
    }
    bool pass = ck.failures.empty();
    all_pass = all_pass && pass;
    std::cout << "criterion " << c.id << " [" << (pass ? "pass" : "FAIL") << "] " << c.name
              << " (" << ck.total - ck.failures.size() << "/" << ck.total << " checks)";
    if (!pass) {
      std::cout << " first failures:";
      for (std::size_t i = 0; i < ck.failures.size() && i < 3; ++i)
        std::cout << " | " << ck.failures[i];
    }
    std::cout << "\n";
  }
  std::cout << (all_pass ? "acceptance: PASS" : "acceptance: FAIL") << "\n";
  return all_pass ? 0 : 1;
}
