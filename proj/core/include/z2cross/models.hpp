// Built-in example gallery: the 2x2 inner-twist demo and discretized
// circles with the two order-two point maps, plus the census that
// classifies every irreducible class of a crossed product.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "z2cross/classify.hpp"
#include "z2cross/crossed.hpp"

namespace z2cross {

// M2 with conjugation by diag(1, -1).
std::pair<StarAlgebra, OrderTwoAutomorphism> build_m2_demo();

enum class CirclePointMap { Flip, Conj };

// Functions on the n-th roots of unity mu_n, realized as diagonal
// matrices indexed by omega_k = exp(2 pi i k / n), k = 0..n-1.  The
// automorphism acts by composition with the point map: Flip sends
// omega to -omega (n must be even), Conj to its conjugate.
struct CircleModel {
  int n = 0;
  CirclePointMap map = CirclePointMap::Flip;
  StarAlgebra algebra;
  OrderTwoAutomorphism sigma;
  CMatrix z_element;  // the coordinate function diag(omega_0..omega_{n-1})
};

CircleModel build_circle(int n, CirclePointMap map);

// Tally of the classification over every irreducible class of the
// crossed-product algebra's identity representation.  The sum of the
// squared class dimensions equals twice the base dimension.
struct Census {
  int type1_count = 0;
  int type2split_count = 0;
  int type2induced_count = 0;
  std::vector<Eigen::Index> class_dims;
  std::vector<Classification> classifications;
};

Census census(const CrossedProduct& cp, std::uint64_t seed = kDefaultSeed);

}  // namespace z2cross
