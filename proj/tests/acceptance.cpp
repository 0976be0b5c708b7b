// Acceptance harness: one line per criterion, exit 0 only if all pass.
// Tolerances are pinned literals here, independent of the environment
// overrides honored by the library defaults.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "z2cross/instances.hpp"
#include "z2cross/ktheory.hpp"
#include "z2cross/models.hpp"
#include "z2cross/oracles.hpp"
#include "z2cross/random.hpp"

using namespace z2cross;

namespace {

constexpr double kMatrixTol = 1e-8;

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool condition, const std::string& what) {
    if (condition) return;
    ok = false;
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

FgAbelianGroup free_group(int rank) { return FgAbelianGroup{rank, {}}; }

// All crossed products exercised by criteria 3, 4 and 5.
std::vector<CrossedProduct> gallery_products() {
  std::vector<CrossedProduct> out;
  auto demo = build_m2_demo();
  out.push_back(crossed_product(demo.second));
  for (int n : {4, 6, 8, 10})
    out.push_back(crossed_product(build_circle(n, CirclePointMap::Flip).sigma));
  for (int n : {4, 6, 8, 3, 5, 7})
    out.push_back(crossed_product(build_circle(n, CirclePointMap::Conj).sigma));
  return out;
}

// Exact rank over the rationals by fraction-free elimination; written
// against the raw entries so it shares no code with smith_normal_form.
Eigen::Index exact_rank(const IntMatrix& m) {
  std::vector<std::vector<BigInt>> a(std::size_t(m.rows),
                                     std::vector<BigInt>(std::size_t(m.cols)));
  for (Eigen::Index i = 0; i < m.rows; ++i)
    for (Eigen::Index j = 0; j < m.cols; ++j)
      a[std::size_t(i)][std::size_t(j)] = m.at(i, j);
  Eigen::Index rank = 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < std::size_t(m.cols) && row < a.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < a.size() && a[pivot][col] == 0) ++pivot;
    if (pivot == a.size()) continue;
    std::swap(a[row], a[pivot]);
    for (std::size_t i = row + 1; i < a.size(); ++i) {
      if (a[i][col] == 0) continue;
      BigInt p = a[row][col], q = a[i][col];
      for (std::size_t j = col; j < std::size_t(m.cols); ++j)
        a[i][j] = a[i][j] * p - a[row][j] * q;
    }
    ++row;
    ++rank;
  }
  return rank;
}

bool criterion1(Check& c) {
  PaperCaseReport report = paper_case("beta", Z2CROSS_FIXTURES_PATH);
  c.expect(report.k0_computed == free_group(1), "beta K0 is not Z");
  c.expect(report.k1_computed == free_group(2), "beta K1 is not Z^2");
  c.expect(report.all_match(), "beta mismatch against recorded values");
  return c.ok;
}

bool criterion2(Check& c) {
  PaperCaseReport report = paper_case("alpha", Z2CROSS_FIXTURES_PATH);
  c.expect(report.k0_computed == free_group(4), "alpha K0 is not Z^4");
  c.expect(report.k1_computed == free_group(0), "alpha K1 is not 0");
  c.expect(report.side_check_computed.has_value(), "side check missing");
  if (report.side_check_computed) {
    c.expect(report.side_check_computed->rank == 3, "side-check rank != 3");
    c.expect(report.side_check_computed->divisors ==
                 std::vector<BigInt>{1, 1, 1},
             "side-check divisors != (1,1,1)");
  }
  c.expect(report.all_match(), "alpha mismatch against recorded values");
  return c.ok;
}

bool criterion3(Check& c) {
  auto demo = build_m2_demo();
  CrossedProduct cp = crossed_product(demo.second);
  c.expect(cp.algebra.dim() == 8, "crossed dimension != 8");
  Census cs = census(cp, 2026);
  c.expect(cs.class_dims.size() == 2, "class count != 2");
  c.expect(cs.type2split_count == 2, "classes are not both Type2Split");
  IrrepDecomposition dec = decompose_rep(identity_rep(cp.algebra), 2026);
  Representation base_id = identity_rep(demo.first);
  for (const IrrepClass& cls : dec.classes) {
    Representation restricted = compose(cls.irrep, cp.embed);
    EquivalenceResult eq = unitarily_equivalent(restricted, base_id);
    c.expect(eq.equivalent, "restriction to the base is not the identity rep");
    if (eq.equivalent && eq.witness) {
      double worst = 0.0;
      for (Eigen::Index k = 0; k < demo.first.dim(); ++k) {
        const CMatrix& b = demo.first.basis()[std::size_t(k)];
        CMatrix lhs = *eq.witness * z2cross::apply(restricted, b) *
                      eq.witness->adjoint();
        worst = std::max(worst, (lhs - z2cross::apply(base_id, b)).norm());
      }
      c.expect(worst <= kMatrixTol, "equivalence residual above 1e-8");
    }
  }
  return c.ok;
}

bool criterion4(Check& c) {
  for (int n : {4, 6, 8, 10}) {
    auto t0 = std::chrono::steady_clock::now();
    CircleModel m = build_circle(n, CirclePointMap::Flip);
    CrossedProduct cp = crossed_product(m.sigma);
    Census cs = census(cp, 2026);
    std::string tag = "flip n=" + std::to_string(n) + ": ";
    c.expect(cs.type1_count == 0 && cs.type2split_count == 0 &&
                 cs.type2induced_count == n / 2,
             tag + "census != (0, 0, n/2)");
    c.expect(int(cs.class_dims.size()) == n / 2, tag + "class count != n/2");
    for (Eigen::Index d : cs.class_dims)
      c.expect(d == 2, tag + "class dimension != 2");
    for (const Classification& cls : cs.classifications) {
      c.expect(cls.kind == RepKind::Type2Induced, tag + "non-induced class");
      if (!cls.inducing_rep) {
        c.expect(false, tag + "missing inducing representation");
        continue;
      }
      const Representation& phi = *cls.inducing_rep;
      c.expect(carrier_dim(phi) == 1, tag + "phi is not a point evaluation");
      Complex value = z2cross::apply(phi, m.z_element)(0, 0);
      c.expect(std::abs(std::pow(value, n) - 1.0) <= kMatrixTol,
               tag + "phi(z) is not an n-th root of unity");
      Representation twisted = compose(phi, m.sigma.action);
      c.expect(!unitarily_equivalent(phi, twisted).equivalent,
               tag + "phi is equivalent to its twist");
    }
    double elapsed = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    c.expect(elapsed < 2.0, tag + "over the 2 s budget");
  }
  return c.ok;
}

bool criterion5(Check& c) {
  auto run_case = [&](int n, int want_type1, int want_induced) {
    auto t0 = std::chrono::steady_clock::now();
    CircleModel m = build_circle(n, CirclePointMap::Conj);
    CrossedProduct cp = crossed_product(m.sigma);
    Census cs = census(cp, 2026);
    std::string tag = "conj n=" + std::to_string(n) + ": ";
    c.expect(cs.type1_count == want_type1, tag + "type1 count");
    c.expect(cs.type2split_count == 0, tag + "unexpected split class");
    c.expect(cs.type2induced_count == want_induced, tag + "induced count");
    Eigen::Index squares = 0;
    for (Eigen::Index d : cs.class_dims) squares += d * d;
    c.expect(squares == 2 * n, tag + "sum of squared dims != 2n");
    double elapsed = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    c.expect(elapsed < 2.0, tag + "over the 2 s budget");
  };
  for (int n : {4, 6, 8}) run_case(n, 4, (n - 2) / 2);
  for (int n : {3, 5, 7}) run_case(n, 2, (n - 1) / 2);
  return c.ok;
}

bool criterion6(Check& c) {
  TolerancePolicy tol;  // pinned defaults: abs 1e-10, rel 1e-8
  int neither = 0;
  for (int d = 2; d <= 6; ++d) {
    for (int t = 0; t < 200; ++t) {
      Rng rng(split_seed(6006, std::uint64_t(d) * 100000 + std::uint64_t(t)));
      CMatrix a = rng.gaussian_matrix(d, d);
      CMatrix b;
      switch (t % 4) {
        case 0: b = rng.gaussian_matrix(d, d); break;
        case 1: b = rng.cgauss() * a; break;
        case 2:
          b = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform()) * a;
          break;
        default: b = CMatrix::Zero(d, d); break;
      }
      for (int form = 0; form < 2; ++form) {
        OracleVerdict v = form == 0 ? lemma_central_check(a, b, tol)
                                    : lemma_central2_check(a, b, tol);
        if (v.dependence_coefficient) {
          double residual = (b - *v.dependence_coefficient * a).norm();
          c.expect(residual <= 1e-8 * (1.0 + a.norm()),
                   "conclusion residual above 1e-8*(1+|A|) at d=" +
                       std::to_string(d) + " t=" + std::to_string(t));
        } else if (!v.witness) {
          ++neither;
        }
      }
    }
  }
  c.expect(neither == 0,
           std::to_string(neither) + " verdicts with neither evidence");
  return c.ok;
}

bool criterion7(Check& c) {
  CampaignReport report = rep0_campaign(42, 200, 3);
  for (std::size_t k = 0; k < report.failures.size() && k < 3; ++k)
    c.expect(false, report.failures[k].instance + " expected " +
                        report.failures[k].expected + " observed " +
                        report.failures[k].observed);
  c.expect(report.passed(),
           std::to_string(report.failures.size()) + " campaign failures");
  c.expect(report.elapsed_seconds < 30.0, "campaign over the 30 s budget");
  return c.ok;
}

bool criterion8(Check& c) {
  std::vector<CrossedProduct> products = gallery_products();
  std::vector<std::string> tags;
  for (std::size_t k = 0; k < products.size(); ++k)
    tags.push_back("gallery[" + std::to_string(k) + "]");
  for (int t = 0; t < 50; ++t) {
    RandomInstance inst = random_instance(split_seed(8008, std::uint64_t(t)), 3);
    products.push_back(crossed_product(inst.sigma));
    tags.push_back(inst.descriptor);
  }
  for (std::size_t k = 0; k < products.size(); ++k) {
    const CrossedProduct& cp = products[k];
    const std::string& tag = tags[k];
    c.expect(cp.algebra.dim() == 2 * cp.base.dim(), tag + ": dim != 2 dim(A)");
    const CMatrix& w = cp.symmetry;
    c.expect((w * w - CMatrix::Identity(w.rows(), w.cols())).norm() <=
                 kMatrixTol,
             tag + ": symmetry does not square to 1");
    double cov = 0.0;
    for (const CMatrix& g : cp.base.generators()) {
      CMatrix lhs = w * z2cross::apply(cp.embed, g) * w.adjoint();
      CMatrix rhs = z2cross::apply(cp.embed, twist(cp.sigma, g));
      cov = std::max(cov, (lhs - rhs).norm());
    }
    c.expect(cov <= kMatrixTol, tag + ": covariance residual above 1e-8");
    // (a, b) -> psi(a) + psi(b) W stacked as columns must have full rank
    Eigen::Index d2 = cp.algebra.ambient_dim();
    Eigen::Index dim = cp.base.dim();
    CMatrix stacked(d2 * d2, 2 * dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
      CMatrix img = z2cross::apply(cp.embed, cp.base.basis()[std::size_t(j)]);
      stacked.col(j) = vec(img);
      stacked.col(dim + j) = vec(CMatrix(img * w));
    }
    Eigen::ColPivHouseholderQR<CMatrix> qr(stacked);
    qr.setThreshold(1e-10);
    c.expect(qr.rank() == 2 * dim, tag + ": model map is rank-deficient");
  }
  return c.ok;
}

bool criterion9(Check& c) {
  for (int t = 0; t < 500; ++t) {
    Rng rng(split_seed(9009, std::uint64_t(t)));
    Eigen::Index rows = 1 + Eigen::Index(rng.integer(6));
    Eigen::Index cols = 1 + Eigen::Index(rng.integer(6));
    IntMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j)
        m.at(i, j) = BigInt(long(rng.integer(41)) - 20);
    SmithDecomposition s = smith_normal_form(m);
    std::string tag = "matrix " + std::to_string(t);
    c.expect(multiply(multiply(s.u, m), s.v) == s.d, tag + ": UMV != D");
    BigInt du = determinant(s.u), dv = determinant(s.v);
    c.expect(du == 1 || du == -1, tag + ": U not unimodular");
    c.expect(dv == 1 || dv == -1, tag + ": V not unimodular");
    Eigen::Index steps = std::min(rows, cols);
    Eigen::Index snf_rank = 0;
    for (Eigen::Index k = 0; k < steps; ++k) {
      if (s.d.at(k, k) != 0) ++snf_rank;
      if (k + 1 < steps) {
        const BigInt& x = s.d.at(k, k);
        const BigInt& y = s.d.at(k + 1, k + 1);
        c.expect(x == 0 ? y == 0 : y % x == 0, tag + ": chain broken");
      }
    }
    FgAbelianGroup coker = cokernel(m, rows);
    c.expect(snf_rank == exact_rank(m), tag + ": rank disagrees");
    c.expect(coker.free_rank == int(rows - exact_rank(m)),
             tag + ": cokernel rank disagrees with rational rank");
    if (!c.ok) return false;
  }
  return c.ok;
}

bool criterion10(Check& c) {
  for (const CrossedProduct& cp : gallery_products()) {
    Census cs = census(cp, 2026);
    K0Result k = k0(cp.algebra, 2026);
    c.expect(k.group.free_rank == int(cs.class_dims.size()),
             cp.base.name() + ": k0 rank != census class count");
    c.expect(k.group.invariant_factors.empty(),
             cp.base.name() + ": unexpected torsion in k0");
  }
  for (int t = 0; t < 50; ++t) {
    std::uint64_t seed = split_seed(1010, std::uint64_t(t));
    ComposablePair pair = random_composable_pair(seed);
    IntMatrix mf = k0_map(pair.f, split_seed(seed, 1));
    IntMatrix mg = k0_map(pair.g, split_seed(seed, 2));
    IntMatrix mgf = k0_map(compose(pair.g, pair.f), split_seed(seed, 3));
    c.expect(mgf == multiply(mg, mf),
             "functoriality fails at pair " + std::to_string(t));
    if (!c.ok) return false;
  }
  return c.ok;
}

struct Criterion {
  int number;
  const char* label;
  double budget_seconds;
  std::function<bool(Check&)> run;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "beta case K-groups (Z and Z^2)", 1.0, criterion1},
      {2, "alpha case K-groups (Z^4, 0) and rank-3 side check", 1.0, criterion2},
      {3, "M2 demo: dimension 8, two Type2Split classes, identity restrictions",
       1.0, criterion3},
      {4, "flip census (0, 0, n/2) with point-evaluation inducing reps", 8.0,
       criterion4},
      {5, "conjugation census with dimension conservation", 12.0, criterion5},
      {6, "lemma oracle suite: 1000 pairs, evidence for every verdict", 5.0,
       criterion6},
      {7, "rep0 campaign: 200 trials at seed 42, zero failures", 30.0,
       criterion7},
      {8, "structural suite: doubling, symmetry, covariance, full rank", 10.0,
       criterion8},
      {9, "SNF suite: 500 matrices, exact factorization and ranks", 5.0,
       criterion9},
      {10, "k0 rank vs census and 50 functoriality pairs", 10.0, criterion10},
  };

  bool all_ok = true;
  for (const Criterion& cr : criteria) {
    Check check;
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = cr.run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (elapsed >= cr.budget_seconds) {
      ok = false;
      check.expect(false, "over the " + std::to_string(cr.budget_seconds) +
                              " s budget");
    }
    ok = ok && check.ok;
    std::printf("%s criterion %d: %s (%.3f s)\n", ok ? "PASS" : "FAIL",
                cr.number, cr.label, elapsed);
    if (!ok && !check.detail.empty())
      std::printf("     %s\n", check.detail.c_str());
    all_ok = all_ok && ok;
  }
  return all_ok ? 0 : 1;
}
