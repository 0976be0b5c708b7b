#pragma once

#include <optional>
#include <vector>

#include "z2cross/crossed.hpp"

namespace z2cross {

// Corner decomposition of an irreducible representation pi of the crossed
// product whose symmetry image has spectrum {-1, 1}: relative to the two
// spectral subspaces H+ and H-, the restriction to the base splits as
// [[alpha, beta], [gamma, delta]] with alpha, delta irreducible
// representations of the fixed subalgebra, alpha/delta vanishing on the
// odd part and beta/gamma vanishing on the fixed part.
struct CornerData {
  StarAlgebra fixed_subalgebra;
  StarHom alpha;  // representation of fixed_subalgebra on H+
  StarHom delta;  // representation of fixed_subalgebra on H-
  std::vector<CMatrix> beta_images;   // per base basis element: H- -> H+
  std::vector<CMatrix> gamma_images;  // per base basis element: H+ -> H-
  CMatrix proj_plus;
  CMatrix proj_minus;
};

enum class RepKind { Type1, Type2Split, Type2Induced };

// Outcome of the dichotomy for one irreducible representation: either the
// symmetry acts as a scalar (Type1, with its sign) or its spectrum is
// {-1, 1} and the corner data decides Type2Split (alpha inequivalent to
// delta; restriction to the base irreducible) versus Type2Induced (alpha
// equivalent to delta; the representation is induced from the recovered
// base representation phi = alpha + eta * beta').
struct Classification {
  RepKind kind = RepKind::Type1;
  int sign = 0;                            // Type1 only
  std::optional<CornerData> corners;       // Type2 kinds
  std::optional<StarHom> inducing_rep;     // Type2Induced only: phi
  std::optional<Complex> linking_scalar;   // Type2Induced only: lambda with
                                           // gamma' = lambda * beta'
};

const char* to_string(RepKind kind);

Classification classify(const CrossedProduct& cp, const Representation& pi);

// The corner maps alone; requires non-scalar symmetry image.
CornerData corner_maps(const CrossedProduct& cp, const Representation& pi);

// For an irreducible representation pi of the base: lhs is the existence of
// a NON-SCALAR order-two unitary u with u pi u* = pi∘sigma, rhs is whether
// the restriction of pi to the fixed subalgebra splits into exactly two
// inequivalent irreducible classes of multiplicity one. The two agree; the
// non-scalar guard excludes the degenerate witness u = 1 for sigma = id.
struct SplittingCheck {
  bool lhs = false;
  bool rhs = false;
  bool agree = false;
};
SplittingCheck corollary_splitting(const OrderTwoAutomorphism& sigma,
                                   const Representation& pi);

// Extension of a representation of the crossed product to the family
// indexed by a unit-modulus scalar: the larger symmetry acts as
// lambda * pi(W). Covariance and the square identity are verified.
struct ZExtension {
  Representation base_rep;
  Complex lambda{1.0, 0.0};
  CMatrix wz_image;
};
ZExtension extend_to_z(const CrossedProduct& cp, const Representation& pi2,
                       Complex lambda);

}  // namespace z2cross
