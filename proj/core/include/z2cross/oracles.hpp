// Brute-force verifiers: two operator identities checked exhaustively on
// matrix units, and a randomized campaign exercising the induced
// representation machinery end to end.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "z2cross/numkernel.hpp"

namespace z2cross {

// Outcome of one lemma check.  When the hypothesis is decided, exactly
// one of {dependence_coefficient, witness} is set: the coefficient when
// every matrix unit passes, the first violating unit (row-major) when
// one fails.  Sole exception: A ~ 0 with B far from zero passes the
// sandwich hypothesis and makes the pair trivially dependent, yet no
// scalar satisfies B = lambda A; then both optionals stay empty.
struct OracleVerdict {
  bool conclusion_holds = false;
  std::optional<Complex> dependence_coefficient;
  std::optional<CMatrix> witness;
};

// Checks B T A = A T B over the matrix-unit basis (sufficient by
// linearity); on a full pass returns lambda with B = lambda A and
// verifies |B - lambda A| <= rel_tol (1 + |A|).  A residual failure
// after the hypothesis passed means the tolerance regime cannot decide
// the instance and raises ToleranceError.
OracleVerdict lemma_central_check(
    const CMatrix& a, const CMatrix& b,
    const TolerancePolicy& tol = TolerancePolicy::defaults());

// Checks A T A* = B T B* over the matrix units; on a full pass returns
// the unimodular phase c with B = c A (built with |c| = 1 by
// construction) under the same residual bound.
OracleVerdict lemma_central2_check(
    const CMatrix& a, const CMatrix& b,
    const TolerancePolicy& tol = TolerancePolicy::defaults());

struct CampaignFailure {
  std::string instance;
  std::string expected;
  std::string observed;
};

// failures empty <=> campaign passed.
struct CampaignReport {
  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<CampaignFailure> failures;
  double elapsed_seconds = 0.0;
  bool passed() const { return failures.empty(); }
};

// Per trial: draw a random instance, form the crossed product, and
// assert (i) the irreducibility bullets agree on irreducible inputs,
// (ii) faithful inputs induce faithfully, (iii) unitarily equivalent
// inputs induce equivalent representations, (iv) the grading
// reconstructs the algebra.  Failures are recorded, never thrown.
CampaignReport rep0_campaign(std::uint64_t seed, int trials, int max_block);

}  // namespace z2cross
