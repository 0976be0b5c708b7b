// AlgebraFile loading: a versioned JSON document (format: 1) listing an
// ambient dimension, generator matrices as arrays of [re, im] entry
// pairs, and optionally the generator images of an order-two
// automorphism.  Parse errors carry the offending entry's coordinates.
#pragma once

#include <optional>
#include <string>

#include "z2cross/crossed.hpp"

namespace z2cross {

struct LoadedAlgebra {
  StarAlgebra algebra;
  std::optional<OrderTwoAutomorphism> sigma;
};

LoadedAlgebra parse_algebra_text(
    const std::string& text,
    const TolerancePolicy& tol = TolerancePolicy::defaults());

LoadedAlgebra load_algebra_file(
    const std::string& path,
    const TolerancePolicy& tol = TolerancePolicy::defaults());

// Serializes the algebra's generating set (and the automorphism's
// action on it, when given) back into the file format.
std::string algebra_file_text(const StarAlgebra& alg,
                              const OrderTwoAutomorphism* sigma = nullptr);

}  // namespace z2cross
