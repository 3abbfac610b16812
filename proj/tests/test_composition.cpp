#include <random>

#include "composition.hpp"
#include "doctest.h"

using namespace nilred;

namespace {

CompositionElement random_element(Family f, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
  auto x = ce_zero(f);
  for (auto& c : x.coords) c = Rational(num(rng), den(rng));
  return x;
}

}  // namespace

TEST_CASE("quaternion units multiply by the standard table") {
  auto i = ce_basis(Family::Quaternion, 1);
  auto j = ce_basis(Family::Quaternion, 2);
  auto k = ce_basis(Family::Quaternion, 3);
  CHECK(multiply(i, j) == k);
  CHECK(multiply(j, i) == subtract(ce_zero(Family::Quaternion), k));
  CHECK(multiply(i, i) == subtract(ce_zero(Family::Quaternion), ce_basis(Family::Quaternion, 0)));
  CHECK(multiply(j, k) == i);
  CHECK(multiply(k, i) == j);
}

TEST_CASE("one is a two-sided unit in every family") {
  std::mt19937 rng(3);
  for (Family f : {Family::Complex, Family::Quaternion, Family::Octonion}) {
    auto one = ce_basis(f, 0);
    auto x = random_element(f, rng);
    CHECK(multiply(one, x) == x);
    CHECK(multiply(x, one) == x);
  }
}

TEST_CASE("octonion non-associativity witness: (e1 e2) e4 = -e1 (e2 e4) = e7") {
  auto e1 = ce_basis(Family::Octonion, 1);
  auto e2 = ce_basis(Family::Octonion, 2);
  auto e4 = ce_basis(Family::Octonion, 4);
  auto e7 = ce_basis(Family::Octonion, 7);
  CHECK(multiply(multiply(e1, e2), e4) == e7);
  CHECK(multiply(e1, multiply(e2, e4)) == subtract(ce_zero(Family::Octonion), e7));
}

TEST_CASE("doubling convention: e_{4+i} = e_i * e_4 in the octonions") {
  auto e4 = ce_basis(Family::Octonion, 4);
  for (std::size_t i = 1; i <= 3; ++i)
    CHECK(multiply(ce_basis(Family::Octonion, i), e4) == ce_basis(Family::Octonion, 4 + i));
}

TEST_CASE("norms are multiplicative and alternativity holds") {
  std::mt19937 rng(31);
  for (Family f : {Family::Complex, Family::Quaternion, Family::Octonion}) {
    const std::size_t d = family_dim(f);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        auto x = ce_basis(f, i), y = ce_basis(f, j);
        CHECK(norm_sq(multiply(x, y)) == norm_sq(x) * norm_sq(y));
      }
    for (int iter = 0; iter < 200; ++iter) {
      auto x = random_element(f, rng), y = random_element(f, rng);
      CHECK(norm_sq(multiply(x, y)) == norm_sq(x) * norm_sq(y));
      CHECK(multiply(multiply(x, x), y) == multiply(x, multiply(x, y)));
      CHECK(multiply(y, multiply(x, x)) == multiply(multiply(y, x), x));
    }
  }
}

TEST_CASE("conjugation reverses products and recovers the squared norm") {
  std::mt19937 rng(37);
  auto x = random_element(Family::Octonion, rng);
  auto y = random_element(Family::Octonion, rng);
  CHECK(conjugate(multiply(x, y)) == multiply(conjugate(y), conjugate(x)));
  auto xxbar = multiply(x, conjugate(x));
  CHECK(xxbar.coords[0] == norm_sq(x));
  for (std::size_t i = 1; i < 8; ++i) CHECK(xxbar.coords[i] == 0);
}

TEST_CASE("family mismatch is rejected") {
  CHECK_THROWS_AS(multiply(ce_basis(Family::Complex, 1), ce_basis(Family::Quaternion, 1)),
                  std::invalid_argument);
}

TEST_CASE("quaternion n(1,0) blocks are the left-multiplication matrices") {
  BuiltHType built = build_j_pq({Family::Quaternion, 1, 0});
  REQUIRE(built.j.mats.size() == 3);
  CHECK(built.j.mats[0] == QMatrix::from_rows({{0, -1, 0, 0},
                                               {1, 0, 0, 0},
                                               {0, 0, 0, -1},
                                               {0, 0, 1, 0}}));
  CHECK(built.j.mats[1] == QMatrix::from_rows({{0, 0, -1, 0},
                                               {0, 0, 0, 1},
                                               {1, 0, 0, 0},
                                               {0, -1, 0, 0}}));
  CHECK(built.j.mats[2] == QMatrix::from_rows({{0, 0, 0, -1},
                                               {0, 0, -1, 0},
                                               {0, 1, 0, 0},
                                               {1, 0, 0, 0}}));
}

TEST_CASE("quaternion n(1,1) acts by the left on the first copy and the right on the second") {
  BuiltHType built = build_j_pq({Family::Quaternion, 1, 1});
  REQUIRE(built.j.dim_v == 8);
  QMatrix left = left_mult_matrix(Family::Quaternion, 1);
  QMatrix right = right_mult_matrix(Family::Quaternion, 1);
  CHECK(right == QMatrix::from_rows({{0, -1, 0, 0},
                                     {1, 0, 0, 0},
                                     {0, 0, 0, 1},
                                     {0, 0, -1, 0}}));
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) {
      CHECK(built.j.mats[0].at(r, c) == left.at(r, c));
      CHECK(built.j.mats[0].at(4 + r, 4 + c) == right.at(r, c));
      CHECK(built.j.mats[0].at(r, 4 + c) == 0);
      CHECK(built.j.mats[0].at(4 + r, c) == 0);
    }
}

TEST_CASE("complex constructor gives copies of the rotation generator") {
  for (std::size_t p = 1; p <= 3; ++p) {
    BuiltHType built = build_j_pq({Family::Complex, p, 0});
    REQUIRE(built.j.mats.size() == 1);
    REQUIRE(built.j.dim_v == 2 * p);
    QMatrix rot = QMatrix::from_rows({{0, -1}, {1, 0}});
    for (std::size_t b = 0; b < p; ++b)
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c)
          CHECK(built.j.mats[0].at(2 * b + r, 2 * b + c) == rot.at(r, c));
  }
}

TEST_CASE("complex constructor folds q into p") {
  BuiltHType built = build_j_pq({Family::Complex, 1, 2});
  CHECK(built.params.p == 3);
  CHECK(built.params.q == 0);
  CHECK(built.j.dim_v == 6);
  CHECK(built.j.dim_z == 1);
}

TEST_CASE("p + q = 0 is rejected") {
  CHECK_THROWS_AS(build_j_pq({Family::Quaternion, 0, 0}), ValidationError);
}

TEST_CASE("constructed maps are skew with entries in {-1,0,1}") {
  for (Family f : {Family::Complex, Family::Quaternion, Family::Octonion}) {
    BuiltHType built = build_j_pq({f, 2, 1});
    for (const auto& m : built.j.mats) {
      CHECK(m.is_skew_symmetric());
      for (const auto& v : m.data())
        CHECK((v == 0 || v == 1 || v == -1));
    }
  }
}

TEST_CASE("verify_htype accepts constructed maps") {
  CHECK(verify_htype(build_j_pq({Family::Quaternion, 1, 1}).j).pass);
  CHECK(verify_htype(build_j_pq({Family::Octonion, 2, 1}).j).pass);
}

TEST_CASE("verify_htype rejects the flat example at pair (1,2)") {
  JMap j{2, 2, {}};
  j.mats.push_back(QMatrix::from_rows({{0, -1}, {1, 0}}));
  j.mats.push_back(QMatrix::from_rows({{0, 1}, {-1, 0}}));
  auto cert = verify_htype(j);
  CHECK_FALSE(cert.pass);
  CHECK(cert.a == 1);
  CHECK(cert.b == 2);
  CHECK_FALSE(cert.deviation.is_zero());
}

TEST_CASE("isotypic decomposition recovers the construction multiplicities") {
  auto iso20 = isotypic_decomposition(build_j_pq({Family::Quaternion, 2, 0}).j);
  CHECK(iso20.status == IsotypicStatus::Decomposed);
  CHECK(iso20.mult_high == 2);
  CHECK(iso20.mult_low == 0);
  CHECK(iso20.isotypic());

  auto iso11 = isotypic_decomposition(build_j_pq({Family::Quaternion, 1, 1}).j);
  CHECK(iso11.mult_high == 1);
  CHECK(iso11.mult_low == 1);
  CHECK_FALSE(iso11.isotypic());

  auto iso_oct = isotypic_decomposition(build_j_pq({Family::Octonion, 1, 1}).j);
  CHECK(iso_oct.mult_high == 1);
  CHECK(iso_oct.mult_low == 1);
  CHECK(iso_oct.dim_plus == 8);
  CHECK(iso_oct.dim_minus == 8);
}

TEST_CASE("center dimension 1 is trivially isotypic") {
  auto iso = isotypic_decomposition(build_j_pq({Family::Complex, 3, 0}).j);
  CHECK(iso.status == IsotypicStatus::TriviallyIsotypic);
  CHECK(iso.isotypic());
}

TEST_CASE("isotypic decomposition refuses non-H-type input") {
  JMap j{2, 2, {}};
  j.mats.push_back(QMatrix::from_rows({{0, -1}, {1, 0}}));
  j.mats.push_back(QMatrix::from_rows({{0, 1}, {-1, 0}}));
  CHECK_THROWS_AS(isotypic_decomposition(j), ValidationError);
}

TEST_CASE("volume element squares to the identity and is central among the J_a") {
  for (Family f : {Family::Quaternion, Family::Octonion})
    for (std::size_t p = 0; p <= 2; ++p) {
      BuiltHType built = build_j_pq({f, p, 2 - p});
      auto iso = isotypic_decomposition(built.j);
      CHECK(iso.omega * iso.omega == QMatrix::identity(built.j.dim_v));
      for (const auto& jm : built.j.mats) CHECK(commutator(iso.omega, jm).is_zero());
    }
}
