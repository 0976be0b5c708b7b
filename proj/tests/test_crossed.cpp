#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "z2cross/crossed.hpp"
#include "z2cross/models.hpp"
#include "z2cross/random.hpp"

using namespace z2cross;

namespace {

// Evaluation at the k-th point of a diagonal algebra, as a representation
// on C^1.
Representation point_character(const StarAlgebra& alg, Eigen::Index k) {
  std::vector<CMatrix> images;
  for (const CMatrix& b : alg.basis()) {
    CMatrix v(1, 1);
    v(0, 0) = b(k, k);
    images.push_back(v);
  }
  return make_star_hom(alg, StarAlgebra::full_matrix(1), images);
}

}  // namespace

TEST_CASE("grading of the M2 demo splits diagonal and off-diagonal parts") {
  auto demo = build_m2_demo();
  Grading g = grading(demo.second);
  CHECK(g.fixed_basis.size() == 2);
  CHECK(g.odd_basis.size() == 2);
  for (const CMatrix& f : g.fixed_basis)
    CHECK((twist(demo.second, f) - f).norm() < 1e-9);
  for (const CMatrix& o : g.odd_basis)
    CHECK((twist(demo.second, o) + o).norm() < 1e-9);
}

TEST_CASE("grading of the identity automorphism has no odd part") {
  StarAlgebra m2 = StarAlgebra::full_matrix(2);
  OrderTwoAutomorphism id = make_automorphism(m2, m2.generators());
  Grading g = grading(id);
  CHECK(g.fixed_basis.size() == 4);
  CHECK(g.odd_basis.empty());
}

TEST_CASE("make_automorphism rejects a map that is not order two") {
  StarAlgebra m2 = StarAlgebra::full_matrix(2);
  CMatrix u = CMatrix::Zero(2, 2);
  u(0, 0) = 1.0;
  u(1, 1) = Complex(0, 1);  // u^2 is not central modulo scalars
  std::vector<CMatrix> images;
  for (const CMatrix& b : m2.generators()) images.push_back(u * b * u.adjoint());
  CHECK_THROWS_AS(make_automorphism(m2, images), std::invalid_argument);
}

TEST_CASE("make_automorphism rejects inconsistent generator images") {
  StarAlgebra m2 = StarAlgebra::full_matrix(2);
  // the generating set holds both E12 and its adjoint E21; fixing E12 while
  // negating E21 contradicts adjoint preservation and cannot extend
  std::vector<CMatrix> images;
  for (const CMatrix& g : m2.generators()) {
    bool lower = std::abs(g(1, 0)) > 0.5;
    images.push_back(lower ? CMatrix(-g) : g);
  }
  CHECK_THROWS_AS(make_automorphism(m2, images), std::invalid_argument);
}

TEST_CASE("crossed product doubles dimension and satisfies covariance") {
  auto demo = build_m2_demo();
  CrossedProduct cp = crossed_product(demo.second);
  CHECK(cp.algebra.dim() == 2 * cp.base.dim());
  CHECK(cp.algebra.ambient_dim() == 2 * cp.base.ambient_dim());

  const CMatrix& w = cp.symmetry;
  CHECK((w * w - CMatrix::Identity(w.rows(), w.cols())).norm() < 1e-12);
  CHECK((w - w.adjoint()).norm() < 1e-12);
  for (const CMatrix& g : cp.base.generators()) {
    CMatrix lhs = w * z2cross::apply(cp.embed, g) * w.adjoint();
    CMatrix rhs = z2cross::apply(cp.embed, twist(cp.sigma, g));
    CHECK((lhs - rhs).norm() < 1e-10);
  }
  CHECK(cp.algebra.contains(w));
  CHECK(cp.algebra.contains(z2cross::apply(cp.embed, cp.base.basis()[1])));
}

TEST_CASE("split_element recovers the two coordinates") {
  auto demo = build_m2_demo();
  CrossedProduct cp = crossed_product(demo.second);
  Rng rng(3);
  CMatrix a = CMatrix::Zero(2, 2), b = CMatrix::Zero(2, 2);
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 2; ++j) {
      a(i, j) = rng.cgauss();
      b(i, j) = rng.cgauss();
    }
  CMatrix x =
      z2cross::apply(cp.embed, a) + z2cross::apply(cp.embed, b) * cp.symmetry;
  CrossedCoordinates coords = split_element(cp, x);
  CHECK((coords.base_part - a).norm() < 1e-9);
  CHECK((coords.twisted_part - b).norm() < 1e-9);
}

TEST_CASE("induced representation doubles the carrier and flips corners") {
  CircleModel m = build_circle(4, CirclePointMap::Flip);
  CrossedProduct cp = crossed_product(m.sigma);
  Representation pi = point_character(m.algebra, 1);
  Representation tilde = induce(cp, pi);
  CHECK(carrier_dim(tilde) == 2);
  // the symmetry image is the block flip
  CMatrix expected(2, 2);
  expected << 0, 1, 1, 0;
  CHECK((z2cross::apply(tilde, cp.symmetry) - expected).norm() < 1e-9);
}

TEST_CASE("induction criteria: flip point evaluations induce irreducibly") {
  CircleModel m = build_circle(4, CirclePointMap::Flip);
  CrossedProduct cp = crossed_product(m.sigma);
  for (Eigen::Index k = 0; k < 4; ++k) {
    InductionCriteria crit = induction_criteria(cp, point_character(m.algebra, k));
    CHECK(crit.induced_irreducible);
    CHECK(crit.twist_inequivalent);
    REQUIRE(crit.no_order_two_intertwiner.has_value());
    CHECK(*crit.no_order_two_intertwiner);
  }
}

TEST_CASE("induction criteria: conjugation-fixed point induces reducibly") {
  CircleModel m = build_circle(4, CirclePointMap::Conj);
  CrossedProduct cp = crossed_product(m.sigma);
  InductionCriteria crit = induction_criteria(cp, point_character(m.algebra, 0));
  CHECK(!crit.induced_irreducible);
  CHECK(!crit.twist_inequivalent);
  REQUIRE(crit.no_order_two_intertwiner.has_value());
  CHECK(!*crit.no_order_two_intertwiner);

  // a moving point still induces irreducibly
  InductionCriteria moving = induction_criteria(cp, point_character(m.algebra, 1));
  CHECK(moving.induced_irreducible);
  CHECK(moving.twist_inequivalent);
}

TEST_CASE("criteria agree for a reducible input only on the first two bullets") {
  CircleModel m = build_circle(4, CirclePointMap::Flip);
  CrossedProduct cp = crossed_product(m.sigma);
  Representation full = identity_rep(m.algebra);  // 4-dim, reducible
  InductionCriteria crit = induction_criteria(cp, full);
  CHECK(!crit.induced_irreducible);
  CHECK(!crit.twist_inequivalent);
  CHECK(!crit.no_order_two_intertwiner.has_value());
}

TEST_CASE("faithfulness passes from the base to the induced representation") {
  auto demo = build_m2_demo();
  CrossedProduct cp = crossed_product(demo.second);
  FaithfulnessReport rep = faithfulness_check(cp, identity_rep(demo.first));
  CHECK(rep.base_faithful);
  CHECK(rep.induced_faithful);
  CHECK(rep.implication_holds);
}

TEST_CASE("a non-faithful base representation keeps the implication vacuous") {
  CircleModel m = build_circle(4, CirclePointMap::Flip);
  CrossedProduct cp = crossed_product(m.sigma);
  FaithfulnessReport rep = faithfulness_check(cp, point_character(m.algebra, 0));
  CHECK(!rep.base_faithful);
  CHECK(rep.implication_holds);
}
