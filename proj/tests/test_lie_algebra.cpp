#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

#include "dsim/lie_algebra.hpp"

using namespace dsim;
using Catcher = InvalidInput;

namespace {

MatrixC mat4(std::initializer_list<Complex> entries) {
  MatrixC m(4, 4);
  int i = 0;
  for (Complex v : entries) m(i / 4, i % 4) = v, ++i;
  return m;
}

const Complex J{0.0, 1.0};

// The fifteen su(4) generators this basis must reproduce entry for entry.
std::vector<MatrixC> reference_generators() {
  const double s3 = 1.0 / std::sqrt(3.0);
  const double s6 = 1.0 / std::sqrt(6.0);
  return {
      mat4({0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}),
      mat4({0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0}),
      mat4({0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0}),
      mat4({0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0}),
      mat4({0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0}),
      mat4({0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0}),
      mat4({0, J, 0, 0, -J, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}),
      mat4({0, 0, 0, 0, 0, 0, J, 0, 0, -J, 0, 0, 0, 0, 0, 0}),
      mat4({0, 0, J, 0, 0, 0, 0, 0, -J, 0, 0, 0, 0, 0, 0, 0}),
      mat4({0, 0, 0, J, 0, 0, 0, 0, 0, 0, 0, 0, -J, 0, 0, 0}),
      mat4({0, 0, 0, 0, 0, 0, 0, J, 0, 0, 0, 0, 0, -J, 0, 0}),
      mat4({0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, J, 0, 0, -J, 0}),
      mat4({-1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}),
      mat4({-s3, 0, 0, 0, 0, -s3, 0, 0, 0, 0, 2 * s3, 0, 0, 0, 0, 0}),
      mat4({-s6, 0, 0, 0, 0, -s6, 0, 0, 0, 0, -s6, 0, 0, 0, 0, 3 * s6}),
  };
}

// The 29 surviving structure constants, 1-based indices.
struct Triple { int i, j, k; double f; };
std::vector<Triple> reference_triples() {
  const double h = 0.5;
  const double s32 = std::sqrt(3.0) / 2.0;
  const double i2s3 = 1.0 / (2.0 * std::sqrt(3.0));
  const double r23 = std::sqrt(2.0 / 3.0);
  return {
      {1, 2, 9, -h},   {1, 3, 8, -h},   {1, 4, 11, -h},  {1, 5, 10, -h},
      {1, 7, 13, 1.0}, {2, 3, 7, h},    {2, 5, 12, -h},  {2, 6, 11, -h},
      {2, 8, 13, -h},  {2, 8, 14, s32}, {3, 4, 12, -h},  {3, 6, 10, -h},
      {3, 9, 13, h},   {3, 9, 14, s32}, {4, 5, 7, -h},   {4, 6, 9, -h},
      {4, 10, 13, h},  {4, 10, 14, i2s3}, {4, 10, 15, r23}, {5, 6, 8, -h},
      {5, 11, 13, -h}, {5, 11, 14, i2s3}, {5, 11, 15, r23},
      {6, 12, 14, -1.0 / std::sqrt(3.0)}, {6, 12, 15, r23}, {7, 8, 9, h},
      {7, 10, 11, -h}, {8, 11, 12, -h}, {9, 10, 12, -h},
  };
}

MatrixC random_hermitian(int n, std::mt19937& rng) {
  std::normal_distribution<double> dist;
  MatrixC a(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) a(r, c) = Complex(dist(rng), dist(rng));
  return MatrixC((a + a.adjoint()) / 2.0);
}

}  // namespace

TEST_CASE("four-level generators match the tabulated basis entry for entry") {
  const GeneratorSet gens(4);
  REQUIRE(gens.count() == 15);
  const auto ref = reference_generators();
  for (int a = 0; a < 15; ++a) {
    CAPTURE(a);
    // one ulp of slack for the irrational diagonal entries
    CHECK(max_abs(gens[a] - ref[a]) <= 1e-15);
  }
}

TEST_CASE("generators are Hermitian and traceless with orthonormal traces") {
  for (int n : {2, 3, 4, 5}) {
    const GeneratorSet gens(n);
    REQUIRE(gens.count() == n * n - 1);
    for (int a = 0; a < gens.count(); ++a) {
      CHECK(hermiticity_deviation(gens[a]) == 0.0);
      CHECK(std::abs(gens[a].trace()) <= 1e-14);
      for (int b = 0; b < gens.count(); ++b) {
        const Complex tr = (gens[a] * gens[b]).trace();
        const double expected = (a == b) ? 2.0 : 0.0;
        CHECK(std::abs(tr - expected) <= 1e-12);
      }
    }
  }
}

TEST_CASE("two-level basis reduces to the expected three matrices") {
  const GeneratorSet gens(2);
  REQUIRE(gens.count() == 3);
  MatrixC x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, J, -J, 0;
  z << -1, 0, 0, 1;
  CHECK(max_abs(gens[0] - x) == 0.0);
  CHECK(max_abs(gens[1] - y) == 0.0);
  CHECK(max_abs(gens[2] - z) == 0.0);
}

TEST_CASE("dimension below two is rejected") {
  CHECK_THROWS_AS(build_generators(1), Catcher);
  CHECK_THROWS_AS(build_generators(0), Catcher);
  CHECK_THROWS_AS(build_generators(-3), Catcher);
}

TEST_CASE("structure constants reproduce the 29 tabulated values and nothing else") {
  const GeneratorSet gens(4);
  const StructureTensor f = structure_constants(gens);
  const auto table = reference_triples();
  REQUIRE(table.size() == 29);
  for (const auto& t : table) {
    CAPTURE(t.i);
    CAPTURE(t.j);
    CAPTURE(t.k);
    CHECK(std::abs(f.value(t.i - 1, t.j - 1, t.k - 1) - t.f) <= 1e-12);
  }
  CHECK(f.canonical_entries().size() == 29);
}

TEST_CASE("structure tensor: spot values and antisymmetry") {
  const StructureTensor f = structure_constants(GeneratorSet(4));
  CHECK(f.value(0, 6, 12) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.value(1, 2, 6) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(f.value(0, 1, 2)) <= 1e-12);       // vanishing triple
  CHECK(f.value(6, 0, 12) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(f.value(0, 0, 5) == 0.0);                   // repeated index
  // all six permutations of one triple
  const double v = f.value(1, 7, 12);
  CHECK(v == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(f.value(7, 12, 1) == doctest::Approx(v));
  CHECK(f.value(12, 1, 7) == doctest::Approx(v));
  CHECK(f.value(7, 1, 12) == doctest::Approx(-v));
  CHECK(f.value(1, 12, 7) == doctest::Approx(-v));
  CHECK(f.value(12, 7, 1) == doctest::Approx(-v));
}

TEST_CASE("verify_algebra passes for N = 2, 3, 4") {
  for (int n : {2, 3, 4}) {
    const GeneratorSet gens(n);
    const StructureTensor f = structure_constants(gens);
    const AlgebraReport report = verify_algebra(gens, f);
    CAPTURE(n);
    CHECK(report.all_pass());
    CHECK(report.max_orthonormality_deviation <= 1e-10);
    CHECK(report.max_antisymmetry_violation <= 1e-10);
    CHECK(report.max_closure_residual <= 1e-10);
  }
  const StructureTensor f2 = structure_constants(GeneratorSet(2));
  CHECK(std::abs(f2.value(0, 1, 2)) == doctest::Approx(1.0).epsilon(1e-12));
  const AlgebraReport r4 =
      verify_algebra(GeneratorSet(4), structure_constants(GeneratorSet(4)));
  CHECK(r4.reference_triples_matched == 29);
  CHECK(r4.unexpected_triples == 0);
}

TEST_CASE("verify_algebra flags a perturbed tensor entry") {
  const GeneratorSet gens(4);
  const StructureTensor f = structure_constants(gens);
  auto entries = f.canonical_entries();
  entries[{0, 6, 12}] += 0.1;
  const StructureTensor broken(15, entries);
  const AlgebraReport report = verify_algebra(gens, broken);
  CHECK(report.max_closure_residual > 0.1);
  CHECK_FALSE(report.all_pass());
}

TEST_CASE("verify_algebra flags a sign-flipped generator") {
  const GeneratorSet gens(4);
  const StructureTensor f = structure_constants(gens);
  auto mats = gens.matrices();
  mats.back() = -mats.back();
  const AlgebraReport report =
      verify_algebra(GeneratorSet::unchecked(4, std::move(mats)), f);
  CHECK_FALSE(report.all_pass());
}

TEST_CASE("decompose: named projections") {
  const GeneratorSet gens(4);

  const auto [tr_mixed, c_mixed] =
      decompose(MatrixC(MatrixC::Identity(4, 4) / 4.0), gens);
  CHECK(tr_mixed == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(c_mixed.cwiseAbs().maxCoeff() <= 1e-14);

  MatrixC ground = MatrixC::Zero(4, 4);
  ground(0, 0) = 1.0;
  const auto [tr_g, c_g] = decompose(ground, gens);
  CHECK(tr_g == doctest::Approx(1.0));
  for (int a = 0; a < 15; ++a) {
    double expected = 0.0;
    if (a == 12) expected = -1.0;
    if (a == 13) expected = -1.0 / std::sqrt(3.0);
    if (a == 14) expected = -1.0 / std::sqrt(6.0);
    CHECK(c_g[a] == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("decompose rejects non-Hermitian input") {
  const GeneratorSet gens(4);
  MatrixC bad = MatrixC::Zero(4, 4);
  bad(0, 1) = 1.0;  // missing conjugate partner
  CHECK_THROWS_AS(decompose(bad, gens), Catcher);
}

TEST_CASE("recompose: maximally mixed and length checking") {
  const GeneratorSet gens(4);
  const MatrixC m = recompose(1.0, Eigen::VectorXd::Zero(15), gens);
  CHECK(max_abs(m - MatrixC::Identity(4, 4) / 4.0) <= 1e-15);
  CHECK_THROWS_AS(recompose(1.0, Eigen::VectorXd::Zero(14), gens), Catcher);
}

TEST_CASE("decompose and recompose are mutually inverse on Hermitian input") {
  std::mt19937 rng(7);
  for (int n : {2, 3, 4}) {
    const GeneratorSet gens(n);
    for (int trial = 0; trial < 20; ++trial) {
      const MatrixC m = random_hermitian(n, rng);
      const auto [tr, coeffs] = decompose(m, gens);
      CHECK(max_abs(recompose(tr, coeffs, gens) - m) <= 1e-12);
    }
  }
  // other composition order: coefficients -> matrix -> coefficients
  const GeneratorSet gens(4);
  std::normal_distribution<double> dist;
  Eigen::VectorXd coeffs(15);
  for (int a = 0; a < 15; ++a) coeffs[a] = dist(rng);
  const auto [tr, back] = decompose(recompose(0.7, coeffs, gens), gens);
  CHECK(tr == doctest::Approx(0.7).epsilon(1e-12));
  CHECK((back - coeffs).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("ground-state projector round-trips through the basis") {
  const GeneratorSet gens(4);
  MatrixC ground = MatrixC::Zero(4, 4);
  ground(0, 0) = 1.0;
  const auto [tr, coeffs] = decompose(ground, gens);
  CHECK(max_abs(recompose(tr, coeffs, gens) - ground) <= 1e-12);
}

TEST_CASE("algebra JSON document lists generators and canonical triples") {
  const GeneratorSet g4(4);
  const auto doc = nlohmann::json::parse(
      algebra_json(g4, structure_constants(g4)));
  CHECK(doc["n"] == 4);
  CHECK(doc["generators"].size() == 15);
  CHECK(doc["generators"][0].size() == 16);      // row-major [re, im] pairs
  CHECK(doc["generators"][0][1][0] == 1.0);      // G1 entry (0,1) = 1
  CHECK(doc["structure_constants"].size() == 29);
  // lexicographic canonical order with i < j < k, 1-based
  int prev_i = 0, prev_j = 0, prev_k = 0;
  for (const auto& t : doc["structure_constants"]) {
    const int i = t["i"], j = t["j"], k = t["k"];
    CHECK(i < j);
    CHECK(j < k);
    const bool after = (i > prev_i) || (i == prev_i && j > prev_j) ||
                       (i == prev_i && j == prev_j && k > prev_k);
    CHECK(after);
    prev_i = i, prev_j = j, prev_k = k;
  }
  const auto& first = doc["structure_constants"][0];
  CHECK(first["i"] == 1);

  const GeneratorSet g2(2);
  const auto doc2 = nlohmann::json::parse(
      algebra_json(g2, structure_constants(g2)));
  CHECK(doc2["generators"].size() == 3);
  CHECK(doc2["structure_constants"].size() == 1);
}
