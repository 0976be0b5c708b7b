#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "z2cross/numkernel.hpp"

namespace z2cross {

// Seed used by operations whose contract allows internal randomized
// sampling (central element draws, equivalence witnesses) when the caller
// does not supply one. Every report quotes the seed actually used.
inline constexpr std::uint64_t kDefaultSeed = 0x5eedba5e0c0ffee1ULL;

// A unital *-closed span of complex ambient_dim x ambient_dim matrices,
// held as an HS-orthonormal basis. Instances are immutable; copies share
// storage.
class StarAlgebra {
 public:
  // Smallest unital *-closed span containing the generators. Iterates
  // adjoin-products-and-adjoints, re-orthonormalizing, until the dimension
  // stabilizes (at most ambient_dim^2 + 1 rounds).
  static StarAlgebra generate(
      Eigen::Index ambient_dim, const std::vector<CMatrix>& generators,
      std::string name = "", const TolerancePolicy& tol = TolerancePolicy::defaults());

  // Wraps a spanning set that is already known to be a unital *-algebra;
  // orthonormalizes and validates closure, throwing std::invalid_argument
  // if the span is not closed.
  static StarAlgebra from_span(
      Eigen::Index ambient_dim, const std::vector<CMatrix>& spanning,
      std::string name = "", const TolerancePolicy& tol = TolerancePolicy::defaults());

  // Wraps a spanning set whose closure under products and adjoints is
  // guaranteed by the construction site; closure is not re-verified.
  // `generators` (a *-closed generating set containing the identity) is
  // validated for membership and kept for constraint thinning; pass {} to
  // fall back to the basis.
  static StarAlgebra closed_span(
      Eigen::Index ambient_dim, const std::vector<CMatrix>& spanning,
      std::vector<CMatrix> generators, std::string name = "",
      const TolerancePolicy& tol = TolerancePolicy::defaults());

  // Full matrix algebra on C^ambient_dim with the matrix-unit basis.
  static StarAlgebra full_matrix(Eigen::Index ambient_dim, std::string name = "");

  Eigen::Index ambient_dim() const;
  Eigen::Index dim() const;
  const std::vector<CMatrix>& basis() const;
  // A *-closed generating set containing the identity (defaults to the
  // basis when no smaller set is known). Linear-system operations use it
  // to thin their constraint stacks.
  const std::vector<CMatrix>& generators() const;
  const std::string& name() const;
  const TolerancePolicy& tol() const;

  CMatrix identity() const;
  bool is_full() const;

  // Coordinates in the orthonormal basis; contains() tests the projection
  // residual against the span.
  CVector coordinates(const CMatrix& x) const;
  CMatrix project(const CMatrix& x) const;
  bool contains(const CMatrix& x) const;

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
  explicit StarAlgebra(std::shared_ptr<const Data> data);
};

// A linear multiplicative adjoint-preserving unital map, stored by images
// of the source basis. A representation is a StarHom whose target is the
// full matrix algebra on its carrier.
struct StarHom {
  StarAlgebra source;
  StarAlgebra target;
  std::vector<CMatrix> images;
};

using Representation = StarHom;

// Validates linearity data: multiplicative and adjoint-preserving on basis
// pairs, unital. Throws std::invalid_argument with the failing identity.
StarHom make_star_hom(const StarAlgebra& source, const StarAlgebra& target,
                      std::vector<CMatrix> images);

// The inclusion of the algebra into the full matrix algebra on its
// ambient space.
StarHom identity_rep(const StarAlgebra& alg);

// Value of the linear extension on an arbitrary element of the source
// span; throws if x lies outside.
CMatrix apply(const StarHom& hom, const CMatrix& x);

StarHom compose(const StarHom& outer, const StarHom& inner);

// Restriction to a subalgebra of the source (same ambient space).
StarHom restrict_hom(const StarHom& hom, const StarAlgebra& subalgebra);

Eigen::Index carrier_dim(const StarHom& rep);

// {X : XB = BX for all B in the set}, as a StarAlgebra on the ambient
// space of the operators.
StarAlgebra commutant_of(const std::vector<CMatrix>& operators,
                         Eigen::Index ambient_dim,
                         const TolerancePolicy& tol = TolerancePolicy::defaults(),
                         std::string name = "");

StarAlgebra commutant(const StarAlgebra& alg);

// Intersection of the algebra with its commutant.
StarAlgebra center(const StarAlgebra& alg);

// Pairwise-orthogonal central projections summing to the identity, each
// minimal among central projections. Randomized central-element sampling
// is driven by the explicit seed.
std::vector<CMatrix> minimal_central_projections(
    const StarAlgebra& alg, std::uint64_t seed = kDefaultSeed);

struct IrrepClass {
  StarHom irrep;
  int multiplicity = 0;
};

struct IrrepDecomposition {
  std::vector<IrrepClass> classes;        // pairwise inequivalent, sorted by
                                          // descending carrier dimension
  std::vector<Eigen::Index> block_dims;   // carrier dims, same order
};

// Splits the carrier along minimal projections of the commutant of the
// image and groups the sub-representations into unitary-equivalence
// classes with multiplicities.
IrrepDecomposition decompose_rep(const StarHom& rep,
                                 std::uint64_t seed = kDefaultSeed);

// True iff the commutant of the image is one-dimensional.
bool is_irreducible(const StarHom& rep);

// True when the two algebras live on the same ambient space with equal
// spans.
bool same_span(const StarAlgebra& a, const StarAlgebra& b);

// Basis of {T : T rep1(b) = rep2(b) T for all b}; both maps must share
// their source algebra.
std::vector<CMatrix> intertwiners(const StarHom& rep1, const StarHom& rep2);

struct EquivalenceResult {
  bool equivalent = false;
  std::optional<CMatrix> witness;  // unitary u with u rep1 u^* = rep2
};

EquivalenceResult unitarily_equivalent(
    const StarHom& rep1, const StarHom& rep2,
    const TolerancePolicy& tol = TolerancePolicy::defaults());

}  // namespace z2cross
