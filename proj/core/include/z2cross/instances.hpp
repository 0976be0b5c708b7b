// Seeded generators for randomized test instances: multi-block matrix
// algebras in general position, order-two automorphisms on them, random
// finite-dimensional representations, and composable homomorphism pairs.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "z2cross/crossed.hpp"
#include "z2cross/star_algebra.hpp"

namespace z2cross {

// A randomized (algebra, automorphism, representation) triple.  The
// algebra is a direct sum of full matrix blocks conjugated into general
// position by a Haar unitary; the automorphism composes an inner twist
// with an optional swap of two equal-size blocks; the representation
// repeats each block with a small random multiplicity and is conjugated
// by a fresh Haar unitary.  Everything is a deterministic function of
// the seed.
struct RandomInstance {
  StarAlgebra algebra;
  OrderTwoAutomorphism sigma;
  Representation rep;
  std::vector<int> block_sizes;
  std::vector<int> multiplicities;
  // Indices of the swapped block pair, or -1/-1 when sigma fixes every
  // block.
  int swap_first = -1;
  int swap_second = -1;
  // Compact replay string: block sizes, swap choice, multiplicities,
  // and the seed.  Detailed matrices are intentionally omitted; replay
  // the seed to reconstruct them.
  std::string descriptor;
};

// max_block bounds the size of each matrix block (at most three blocks
// are drawn).  Requires max_block >= 1.
RandomInstance random_instance(std::uint64_t seed, int max_block);

// A composable pair of unital *-homomorphisms f: a -> b and g: b -> c
// between multi-block algebras, built from random multiplicity
// matrices.  Block sizes are capped so downstream commutant
// computations stay small.
struct ComposablePair {
  StarAlgebra a;
  StarAlgebra b;
  StarAlgebra c;
  StarHom f;
  StarHom g;
};

ComposablePair random_composable_pair(std::uint64_t seed);

}  // namespace z2cross
