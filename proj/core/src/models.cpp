#include "z2cross/models.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace z2cross {

std::pair<StarAlgebra, OrderTwoAutomorphism> build_m2_demo() {
  std::vector<CMatrix> units;
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 2; ++j) {
      CMatrix e = CMatrix::Zero(2, 2);
      e(i, j) = 1.0;
      units.push_back(e);
    }
  CMatrix e12 = CMatrix::Zero(2, 2), e21 = CMatrix::Zero(2, 2);
  e12(0, 1) = 1.0;
  e21(1, 0) = 1.0;
  StarAlgebra m2 = StarAlgebra::closed_span(
      2, units, {CMatrix::Identity(2, 2), e12, e21}, "M2");

  // Conjugation by diag(1, -1) negates the off-diagonal units.
  OrderTwoAutomorphism sigma =
      make_automorphism(m2, {CMatrix::Identity(2, 2), -e12, -e21});
  return {m2, std::move(sigma)};
}

CircleModel build_circle(int n, CirclePointMap map) {
  if (n < 2)
    throw std::invalid_argument("circle model: n must be at least 2");
  if (map == CirclePointMap::Flip && n % 2 != 0)
    throw std::invalid_argument(
        "flip undefined: -1 is not an n-th root of unity for odd n");

  CMatrix z = CMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    double angle = 2.0 * std::numbers::pi * k / n;
    z(k, k) = Complex(std::cos(angle), std::sin(angle));
  }
  std::vector<CMatrix> points;
  for (int k = 0; k < n; ++k) {
    CMatrix e = CMatrix::Zero(n, n);
    e(k, k) = 1.0;
    points.push_back(e);
  }
  StarAlgebra alg = StarAlgebra::closed_span(
      n, points, {CMatrix::Identity(n, n), z, z.adjoint()},
      "C(mu_" + std::to_string(n) + ")");

  // sigma(f) = f after the point map: Flip sends z to -z, Conj to its
  // adjoint.
  std::vector<CMatrix> images;
  images.push_back(CMatrix::Identity(n, n));
  if (map == CirclePointMap::Flip) {
    images.push_back(-z);
    images.push_back(-z.adjoint());
  } else {
    images.push_back(z.adjoint());
    images.push_back(z);
  }
  OrderTwoAutomorphism sigma = make_automorphism(alg, images);
  return CircleModel{n, map, std::move(alg), std::move(sigma), std::move(z)};
}

Census census(const CrossedProduct& cp, std::uint64_t seed) {
  IrrepDecomposition dec = decompose_rep(identity_rep(cp.algebra), seed);
  Census out;
  Eigen::Index squares = 0;
  for (const IrrepClass& cls : dec.classes) {
    Eigen::Index d = carrier_dim(cls.irrep);
    out.class_dims.push_back(d);
    squares += d * d;
    Classification c = classify(cp, cls.irrep);
    switch (c.kind) {
      case RepKind::Type1:
        ++out.type1_count;
        break;
      case RepKind::Type2Split:
        ++out.type2split_count;
        break;
      case RepKind::Type2Induced:
        ++out.type2induced_count;
        break;
    }
    out.classifications.push_back(std::move(c));
  }
  if (squares != cp.algebra.dim())
    throw ToleranceError(
        "census: class dimensions do not account for the crossed product");
  return out;
}

}  // namespace z2cross
