// Exact integer K-theory machinery: Smith normal form over
// arbitrary-precision integers, finitely generated abelian groups,
// K0 of finite-dimensional algebras with induced maps as multiplicity
// matrices, and the amalgamated-free-product pushout with its two
// fixture-driven case studies.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "z2cross/star_algebra.hpp"

namespace z2cross {

using BigInt = boost::multiprecision::cpp_int;

// Dense integer matrix, row-major, arbitrary precision so pivot growth
// never overflows.  Zero-dimensional shapes are legal.
struct IntMatrix {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  std::vector<BigInt> entries;

  IntMatrix() = default;
  IntMatrix(Eigen::Index r, Eigen::Index c)
      : rows(r), cols(c), entries(std::size_t(r * c)) {}

  BigInt& at(Eigen::Index r, Eigen::Index c) {
    return entries[std::size_t(r * cols + c)];
  }
  const BigInt& at(Eigen::Index r, Eigen::Index c) const {
    return entries[std::size_t(r * cols + c)];
  }

  static IntMatrix identity(Eigen::Index n);
  bool operator==(const IntMatrix&) const = default;
};

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

// Exact determinant (fraction-free elimination); requires square input.
BigInt determinant(const IntMatrix& m);

std::string to_string(const IntMatrix& m);

// u * input * v = d with u, v unimodular and d diagonal, nonnegative,
// each diagonal entry dividing the next.
struct SmithDecomposition {
  IntMatrix u;
  IntMatrix d;
  IntMatrix v;
};

SmithDecomposition smith_normal_form(const IntMatrix& m);

// Invariant factors are >= 2, each dividing the next; the trivial group
// is free_rank 0 with no factors.
struct FgAbelianGroup {
  int free_rank = 0;
  std::vector<BigInt> invariant_factors;

  bool operator==(const FgAbelianGroup&) const = default;
  // Number of generators in the presentation (free part + one per
  // invariant factor).
  Eigen::Index generator_count() const {
    return free_rank + Eigen::Index(invariant_factors.size());
  }
};

std::string to_string(const FgAbelianGroup& g);

// Z^target_rank / image(m); requires m.rows == target_rank.
FgAbelianGroup cokernel(const IntMatrix& m, Eigen::Index target_rank);

// Rank and elementary divisors (including trivial ones) of the
// subgroup of Z^n generated by the given vectors.
struct SubgroupInvariants {
  int rank = 0;
  std::vector<BigInt> divisors;
  bool operator==(const SubgroupInvariants&) const = default;
};

SubgroupInvariants subgroup_invariants(
    const std::vector<std::vector<BigInt>>& generators);

// K0 of a finite-dimensional algebra: free on the Wedderburn blocks,
// one minimal projection of the algebra recorded per block.  Blocks
// follow the deterministic decomposition order.
struct K0Block {
  Eigen::Index dim = 0;
  int multiplicity = 0;
  CMatrix minimal_projection;
};

struct K0Result {
  FgAbelianGroup group;
  std::vector<K0Block> blocks;
};

K0Result k0(const StarAlgebra& alg, std::uint64_t seed = kDefaultSeed);

// Induced map on K0 as a multiplicity matrix: entry (j, i) counts the
// source irrep i inside (target irrep j) composed with phi.  Requires
// phi unital.
IntMatrix k0_map(const StarHom& phi, std::uint64_t seed = kDefaultSeed);

// K-group of an amalgamated free product from the groups of the two
// factors and the amalgam: the cokernel of x -> (i1 x, -i2 x) into
// g1 + g2.  Torsion inputs are folded in through their presentation
// matrices.  i1: gG -> g1 and i2: gG -> g2 must have consistent shapes.
FgAbelianGroup pushout_k(const FgAbelianGroup& g1, const FgAbelianGroup& g2,
                         const FgAbelianGroup& gG, const IntMatrix& i1,
                         const IntMatrix& i2);

// One pushout computation as stored in the fixture file.
struct PushoutInput {
  FgAbelianGroup g1;
  FgAbelianGroup g2;
  FgAbelianGroup gG;
  IntMatrix i1;
  IntMatrix i2;
  FgAbelianGroup expected;
};

struct SubgroupSideCheck {
  std::vector<std::vector<BigInt>> generators;
  int expected_rank = 0;
  std::vector<BigInt> expected_divisors;
};

struct PaperFixture {
  std::string case_id;
  PushoutInput k0;
  PushoutInput k1;
  std::optional<SubgroupSideCheck> side_check;
  std::vector<std::string> generator_notes;
  std::vector<std::string> notes;
};

// Parses the versioned fixture file; throws std::invalid_argument on a
// missing file, wrong format version, or malformed entries.
std::vector<PaperFixture> load_fixtures(const std::string& path);

struct PaperCaseReport {
  PaperFixture fixture;
  FgAbelianGroup k0_computed;
  FgAbelianGroup k1_computed;
  bool k0_matches = false;
  bool k1_matches = false;
  std::optional<SubgroupInvariants> side_check_computed;
  bool side_check_matches = true;

  bool all_match() const {
    return k0_matches && k1_matches && side_check_matches;
  }
};

// Runs both pushout computations (and the subgroup side check when the
// fixture carries one) for the named case and compares against the
// expected groups.
PaperCaseReport paper_case(const std::string& case_id,
                           const std::string& fixtures_path);

}  // namespace z2cross
