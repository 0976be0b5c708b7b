#include "z2cross/oracles.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "z2cross/classify.hpp"
#include "z2cross/crossed.hpp"
#include "z2cross/instances.hpp"
#include "z2cross/random.hpp"

namespace z2cross {
namespace {

void require_same_square(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw std::invalid_argument(
        "lemma check: A and B must be square of equal size");
}

CMatrix unit(Eigen::Index d, Eigen::Index i, Eigen::Index j) {
  CMatrix e = CMatrix::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

}  // namespace

OracleVerdict lemma_central_check(const CMatrix& a, const CMatrix& b,
                                  const TolerancePolicy& tol) {
  require_same_square(a, b);
  Eigen::Index d = a.rows();
  double scale = a.norm() * b.norm();
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      CMatrix t = unit(d, i, j);
      double residual = (b * t * a - a * t * b).norm();
      if (!tol.is_zero(residual, scale))
        return OracleVerdict{false, std::nullopt, t};
    }

  double na = a.norm();
  double nb = b.norm();
  if (tol.is_zero(na, 1.0)) {
    if (tol.is_zero(nb, 1.0))
      return OracleVerdict{true, Complex(0.0), std::nullopt};
    // A vanishes while B does not: the pair is linearly dependent, but
    // no scalar lambda solves B = lambda A.
    return OracleVerdict{true, std::nullopt, std::nullopt};
  }
  Complex lambda = hs_inner(a, b) / Complex(na * na);
  double residual = (b - lambda * a).norm();
  if (residual > tol.rel_tol * (1.0 + na))
    throw ToleranceError(
        "lemma central: dependence residual exceeds tolerance after the "
        "hypothesis passed");
  return OracleVerdict{true, lambda, std::nullopt};
}

OracleVerdict lemma_central2_check(const CMatrix& a, const CMatrix& b,
                                   const TolerancePolicy& tol) {
  require_same_square(a, b);
  Eigen::Index d = a.rows();
  double na = a.norm();
  double nb = b.norm();
  double scale = std::max(na * na, nb * nb);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      CMatrix t = unit(d, i, j);
      double residual = (a * t * a.adjoint() - b * t * b.adjoint()).norm();
      if (!tol.is_zero(residual, scale))
        return OracleVerdict{false, std::nullopt, t};
    }

  // The hypothesis at T = E_ii forces the columns of B to vanish with
  // those of A, so A ~ 0 leaves only B ~ 0 and phase 1.
  Complex phase(1.0);
  if (!tol.is_zero(na, 1.0)) {
    Complex ratio = hs_inner(a, b);
    if (std::abs(ratio) <= tol.threshold(na * nb))
      throw ToleranceError(
          "lemma central2: phase extraction failed (inner product vanishes "
          "after the hypothesis passed)");
    phase = ratio / std::abs(ratio);
  }
  double residual = (b - phase * a).norm();
  if (residual > tol.rel_tol * (1.0 + na))
    throw ToleranceError(
        "lemma central2: phase residual exceeds tolerance after the "
        "hypothesis passed");
  return OracleVerdict{true, phase, std::nullopt};
}

namespace {

std::string format_rounded(const CMatrix& m) {
  std::ostringstream os;
  os << std::setprecision(6) << std::fixed;
  os << "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << (i ? ";" : "") << "[";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      Complex z = m(i, j);
      os << (j ? "," : "") << z.real() << (z.imag() < 0 ? "-" : "+")
         << std::abs(z.imag()) << "i";
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

std::string replay_detail(const RandomInstance& inst) {
  std::ostringstream os;
  os << inst.descriptor << " sigma_images=";
  for (const CMatrix& m : inst.sigma.action.images) os << format_rounded(m);
  os << " rep_generator_images=";
  for (const CMatrix& g : inst.algebra.generators())
    os << format_rounded(z2cross::apply(inst.rep, g));
  return os.str();
}

struct TrialChecker {
  const RandomInstance& inst;
  std::vector<CampaignFailure>& failures;
  bool failed = false;

  void expect(bool ok, const std::string& expected,
              const std::string& observed) {
    if (ok) return;
    failures.push_back(CampaignFailure{replay_detail(inst), expected, observed});
    failed = true;
  }
};

std::string bool_str(bool v) { return v ? "true" : "false"; }

}  // namespace

CampaignReport rep0_campaign(std::uint64_t seed, int trials, int max_block) {
  if (trials < 1)
    throw std::invalid_argument("rep0 campaign: trials must be >= 1");
  auto start = std::chrono::steady_clock::now();
  CampaignReport report;
  report.seed = seed;
  report.trials = trials;

  for (int t = 0; t < trials; ++t) {
    std::uint64_t sub = split_seed(seed, std::uint64_t(t));
    RandomInstance inst = random_instance(sub, max_block);
    TrialChecker check{inst, report.failures};
    try {
      CrossedProduct cp = crossed_product(inst.sigma);

      InductionCriteria crit = induction_criteria(cp, inst.rep);
      if (is_irreducible(inst.rep)) {
        check.expect(crit.induced_irreducible == crit.twist_inequivalent,
                     "induced irreducibility and twist inequivalence agree",
                     "bullet1=" + bool_str(crit.induced_irreducible) +
                         " bullet2=" + bool_str(crit.twist_inequivalent));
        check.expect(crit.no_order_two_intertwiner.has_value() &&
                         *crit.no_order_two_intertwiner ==
                             crit.induced_irreducible,
                     "order-two intertwiner absence matches bullet1",
                     "bullet1=" + bool_str(crit.induced_irreducible) +
                         " bullet3=" +
                         (crit.no_order_two_intertwiner
                              ? bool_str(*crit.no_order_two_intertwiner)
                              : std::string("unset")));
      }

      FaithfulnessReport faith = faithfulness_check(cp, inst.rep);
      check.expect(faith.implication_holds,
                   "faithful input induces a faithful representation",
                   "base_faithful=" + bool_str(faith.base_faithful) +
                       " induced_faithful=" + bool_str(faith.induced_faithful));

      // Unitarily equivalent inputs must induce unitarily equivalent
      // representations.
      Eigen::Index k = carrier_dim(inst.rep);
      CMatrix u = Rng(split_seed(sub, 101)).unitary(k);
      std::vector<CMatrix> conj_images;
      conj_images.reserve(inst.rep.images.size());
      for (const CMatrix& im : inst.rep.images)
        conj_images.push_back(u * im * u.adjoint());
      Representation rho{inst.rep.source, inst.rep.target,
                         std::move(conj_images)};
      EquivalenceResult eq =
          unitarily_equivalent(induce(cp, inst.rep), induce(cp, rho));
      check.expect(eq.equivalent,
                   "conjugated input induces an equivalent representation",
                   "induced representations inequivalent");

      // The grading halves reassemble every basis element exactly.
      Grading g = grading(inst.sigma);
      const StarAlgebra& alg = inst.algebra;
      check.expect(Eigen::Index(g.fixed_basis.size() + g.odd_basis.size()) ==
                       alg.dim(),
                   "grading dimensions add to the algebra dimension",
                   "fixed=" + std::to_string(g.fixed_basis.size()) + " odd=" +
                       std::to_string(g.odd_basis.size()) + " dim=" +
                       std::to_string(alg.dim()));
      double worst = 0.0;
      for (const CMatrix& b : alg.basis()) {
        CMatrix rec = CMatrix::Zero(alg.ambient_dim(), alg.ambient_dim());
        for (const CMatrix& f : g.fixed_basis) rec += hs_inner(f, b) * f;
        for (const CMatrix& o : g.odd_basis) rec += hs_inner(o, b) * o;
        worst = std::max(worst, (rec - b).norm());
      }
      check.expect(alg.tol().is_zero(worst, 1.0),
                   "grading reconstructs the algebra basis",
                   "worst reconstruction residual " + std::to_string(worst));
    } catch (const std::exception& e) {
      check.expect(false, "trial completes without exception", e.what());
    }
  }

  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

}  // namespace z2cross
