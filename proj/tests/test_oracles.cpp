#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "z2cross/oracles.hpp"
#include "z2cross/random.hpp"

using namespace z2cross;

namespace {

CMatrix unit(Eigen::Index d, Eigen::Index i, Eigen::Index j) {
  CMatrix m = CMatrix::Zero(d, d);
  m(i, j) = 1.0;
  return m;
}

}  // namespace

TEST_CASE("scalar multiple is recovered exactly") {
  CMatrix a = CMatrix::Identity(3, 3);
  CMatrix b = 2.0 * a;
  OracleVerdict v = lemma_central_check(a, b);
  CHECK(v.conclusion_holds);
  REQUIRE(v.dependence_coefficient.has_value());
  CHECK(std::abs(*v.dependence_coefficient - 2.0) < 1e-12);
  CHECK(!v.witness.has_value());
}

TEST_CASE("independent diagonal units produce a hypothesis witness") {
  CMatrix a = unit(2, 0, 0), b = unit(2, 1, 1);
  OracleVerdict v = lemma_central_check(a, b);
  CHECK(!v.conclusion_holds);
  REQUIRE(v.witness.has_value());
  const CMatrix& t = *v.witness;
  CHECK((b * t * a - a * t * b).norm() > 1e-6);
  CHECK(!v.dependence_coefficient.has_value());
}

TEST_CASE("nilpotent partner produces a witness") {
  CMatrix a = unit(2, 0, 0), b = unit(2, 0, 1);
  OracleVerdict v = lemma_central_check(a, b);
  CHECK(!v.conclusion_holds);
  REQUIRE(v.witness.has_value());
  CHECK((b * *v.witness * a - a * *v.witness * b).norm() > 1e-6);
}

TEST_CASE("zero partner yields the zero coefficient") {
  Rng rng(5);
  CMatrix a = rng.gaussian_matrix(3, 3);
  CMatrix b = CMatrix::Zero(3, 3);
  OracleVerdict v = lemma_central_check(a, b);
  CHECK(v.conclusion_holds);
  REQUIRE(v.dependence_coefficient.has_value());
  CHECK(std::abs(*v.dependence_coefficient) < 1e-12);
}

TEST_CASE("vanishing first argument with nonzero partner: conclusion without data") {
  // B T A = A T B reads 0 = 0, yet no lambda with B = lambda A exists.
  // The verdict reports the (vacuous) conclusion and returns neither a
  // coefficient nor a witness.
  CMatrix a = CMatrix::Zero(2, 2);
  CMatrix b = unit(2, 0, 0);
  OracleVerdict v = lemma_central_check(a, b);
  CHECK(v.conclusion_holds);
  CHECK(!v.dependence_coefficient.has_value());
  CHECK(!v.witness.has_value());
}

TEST_CASE("second form recovers a pure phase") {
  Rng rng(9);
  CMatrix a = rng.gaussian_matrix(3, 3);
  Complex phase(0.0, 1.0);
  CMatrix b = phase * a;
  OracleVerdict v = lemma_central2_check(a, b);
  CHECK(v.conclusion_holds);
  REQUIRE(v.dependence_coefficient.has_value());
  CHECK(std::abs(*v.dependence_coefficient - phase) < 1e-9);
  // theta = 1/4 picks the phase i = exp(2 i pi / 4)
  double theta = std::arg(*v.dependence_coefficient) / (2.0 * std::numbers::pi);
  CHECK(theta == doctest::Approx(0.25));
}

TEST_CASE("second form: equal inputs give phase one") {
  Rng rng(21);
  CMatrix a = rng.gaussian_matrix(2, 2);
  OracleVerdict v = lemma_central2_check(a, a);
  CHECK(v.conclusion_holds);
  REQUIRE(v.dependence_coefficient.has_value());
  CHECK(std::abs(*v.dependence_coefficient - 1.0) < 1e-10);
}

TEST_CASE("second form: non-unimodular multiple fails the hypothesis") {
  Rng rng(23);
  CMatrix a = rng.gaussian_matrix(2, 2);
  CMatrix b = 2.0 * a;
  OracleVerdict v = lemma_central2_check(a, b);
  CHECK(!v.conclusion_holds);
  REQUIRE(v.witness.has_value());
  const CMatrix& t = *v.witness;
  CHECK((a * t * a.adjoint() - b * t * b.adjoint()).norm() > 1e-6);
}

TEST_CASE("second form: generic pair fails the hypothesis") {
  Rng rng(31);
  CMatrix a = rng.gaussian_matrix(3, 3);
  CMatrix b = rng.gaussian_matrix(3, 3);
  OracleVerdict v = lemma_central2_check(a, b);
  CHECK(!v.conclusion_holds);
  CHECK(v.witness.has_value());
}

TEST_CASE("shape mismatch is rejected") {
  CMatrix a = CMatrix::Identity(2, 2);
  CMatrix b = CMatrix::Identity(3, 3);
  CHECK_THROWS_AS((void)lemma_central_check(a, b), std::invalid_argument);
  CHECK_THROWS_AS((void)lemma_central2_check(a, b), std::invalid_argument);
}

TEST_CASE("witness is always a matrix unit of the right shape") {
  Rng master(77);
  for (int t = 0; t < 20; ++t) {
    Eigen::Index d = 2 + Eigen::Index(master.integer(4));
    Rng rng(split_seed(77, std::uint64_t(t)));
    CMatrix a = rng.gaussian_matrix(d, d);
    CMatrix b = rng.gaussian_matrix(d, d);
    OracleVerdict v = lemma_central_check(a, b);
    REQUIRE(v.witness.has_value());  // generic pairs are independent
    CHECK(v.witness->rows() == d);
    CHECK(v.witness->cols() == d);
    CHECK(std::abs(v.witness->norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("short randomized campaign passes") {
  CampaignReport report = rep0_campaign(1, 8, 2);
  CHECK(report.trials == 8);
  for (const CampaignFailure& f : report.failures) {
    CAPTURE(f.instance);
    CAPTURE(f.expected);
    CAPTURE(f.observed);
    CHECK(false);
  }
  CHECK(report.passed());
}

TEST_CASE("campaign rejects a non-positive trial count") {
  CHECK_THROWS_AS((void)rep0_campaign(1, 0, 2), std::invalid_argument);
}
