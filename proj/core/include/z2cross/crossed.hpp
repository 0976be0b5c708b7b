#pragma once

#include <optional>
#include <vector>

#include "z2cross/star_algebra.hpp"

namespace z2cross {

// An automorphism with sigma∘sigma = id, stored as a linear map on the
// basis so that non-inner actions (block swaps) are expressible.
struct OrderTwoAutomorphism {
  StarAlgebra algebra;
  StarHom action;  // source == target == algebra
};

// Eigenspaces of the action: fixed_basis spans {x : sigma(x) = x},
// odd_basis spans {x : sigma(x) = -x}; dimensions add to dim(algebra).
struct Grading {
  std::vector<CMatrix> fixed_basis;
  std::vector<CMatrix> odd_basis;
};

// The doubled-matrix model: `algebra` is the span of all
// [[a, b], [sigma(b), sigma(a)]] inside 2d x 2d matrices, embed is
// a |-> diag(a, sigma(a)), symmetry is the block flip W with
// W embed(a) W = embed(sigma(a)).
struct CrossedProduct {
  StarAlgebra algebra;
  StarAlgebra base;
  OrderTwoAutomorphism sigma;
  StarHom embed;
  CMatrix symmetry;
};

// Linearly extends generator images (paired with alg.generators()) to the
// whole algebra, then validates multiplicativity, adjoint preservation,
// unitality and the order-two identity. Throws std::invalid_argument with
// the failing property.
OrderTwoAutomorphism make_automorphism(const StarAlgebra& alg,
                                       const std::vector<CMatrix>& generator_images);

// Convenience: the action applied to one element.
CMatrix twist(const OrderTwoAutomorphism& sigma, const CMatrix& x);

Grading grading(const OrderTwoAutomorphism& sigma);

CrossedProduct crossed_product(const OrderTwoAutomorphism& sigma);

// Splits an element of the crossed-product algebra as embed(a) + embed(b) W.
struct CrossedCoordinates {
  CMatrix base_part;  // a
  CMatrix twisted_part;  // b
};
CrossedCoordinates split_element(const CrossedProduct& cp, const CMatrix& x);

// The representation a |-> pi(a) + pi(sigma(a)) on the doubled carrier with
// the symmetry acting as the block flip; expressed on cp.algebra so the
// classifier can consume it directly. Throws ToleranceError if the
// covariance identities drift.
Representation induce(const CrossedProduct& cp, const Representation& pi);

// The three irreducibility criteria for an induced representation:
//   induced_irreducible:        induce(pi) is irreducible;
//   twist_inequivalent:         pi is irreducible and not unitarily
//                               equivalent to pi∘sigma;
//   no_order_two_intertwiner:   no order-two unitary u with u pi u* = pi∘sigma.
// The third is settled by phase-normalizing a generic intertwiner and is
// only evaluated when pi is irreducible (nullopt otherwise: for reducible
// pi the three conditions are not equivalent).
struct InductionCriteria {
  bool induced_irreducible = false;
  bool twist_inequivalent = false;
  std::optional<bool> no_order_two_intertwiner;
};
InductionCriteria induction_criteria(const CrossedProduct& cp, const Representation& pi);

// Injectivity of pi and of induce(pi) on the coefficient spaces, plus the
// implication "base faithful => induced faithful".
struct FaithfulnessReport {
  bool base_faithful = false;
  bool induced_faithful = false;
  bool implication_holds = false;
};
FaithfulnessReport faithfulness_check(const CrossedProduct& cp, const Representation& pi);

}  // namespace z2cross
