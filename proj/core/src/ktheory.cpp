#include "z2cross/ktheory.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"
#include "z2cross/random.hpp"

namespace z2cross {

IntMatrix IntMatrix::identity(Eigen::Index n) {
  IntMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols != b.rows)
    throw std::invalid_argument("multiply: inner dimensions differ");
  IntMatrix out(a.rows, b.cols);
  for (Eigen::Index i = 0; i < a.rows; ++i)
    for (Eigen::Index k = 0; k < a.cols; ++k) {
      const BigInt& aik = a.at(i, k);
      if (aik == 0) continue;
      for (Eigen::Index j = 0; j < b.cols; ++j)
        out.at(i, j) += aik * b.at(k, j);
    }
  return out;
}

BigInt determinant(const IntMatrix& m) {
  if (m.rows != m.cols)
    throw std::invalid_argument("determinant: matrix must be square");
  Eigen::Index n = m.rows;
  if (n == 0) return 1;
  // Fraction-free (Bareiss) elimination: every division below is exact.
  IntMatrix a = m;
  BigInt prev = 1;
  int sign = 1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (a.at(k, k) == 0) {
      Eigen::Index swap = -1;
      for (Eigen::Index i = k + 1; i < n; ++i)
        if (a.at(i, k) != 0) {
          swap = i;
          break;
        }
      if (swap < 0) return 0;
      for (Eigen::Index j = 0; j < n; ++j)
        std::swap(a.at(k, j), a.at(swap, j));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j)
        a.at(i, j) =
            (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
    prev = a.at(k, k);
  }
  return sign > 0 ? a.at(n - 1, n - 1) : -a.at(n - 1, n - 1);
}

std::string to_string(const IntMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (Eigen::Index i = 0; i < m.rows; ++i) {
    os << (i ? "," : "") << "[";
    for (Eigen::Index j = 0; j < m.cols; ++j)
      os << (j ? "," : "") << m.at(i, j).str();
    os << "]";
  }
  os << "]";
  return os.str();
}

SmithDecomposition smith_normal_form(const IntMatrix& m) {
  Eigen::Index rows = m.rows, cols = m.cols;
  SmithDecomposition s{IntMatrix::identity(rows), m,
                       IntMatrix::identity(cols)};
  IntMatrix& d = s.d;
  IntMatrix& u = s.u;
  IntMatrix& v = s.v;

  auto swap_rows = [&](Eigen::Index i, Eigen::Index j) {
    if (i == j) return;
    for (Eigen::Index k = 0; k < cols; ++k) std::swap(d.at(i, k), d.at(j, k));
    for (Eigen::Index k = 0; k < rows; ++k) std::swap(u.at(i, k), u.at(j, k));
  };
  auto swap_cols = [&](Eigen::Index i, Eigen::Index j) {
    if (i == j) return;
    for (Eigen::Index k = 0; k < rows; ++k) std::swap(d.at(k, i), d.at(k, j));
    for (Eigen::Index k = 0; k < cols; ++k) std::swap(v.at(k, i), v.at(k, j));
  };
  // row dst -= q * row src (and mirror into u)
  auto row_axpy = [&](Eigen::Index dst, Eigen::Index src, const BigInt& q) {
    for (Eigen::Index k = 0; k < cols; ++k) d.at(dst, k) -= q * d.at(src, k);
    for (Eigen::Index k = 0; k < rows; ++k) u.at(dst, k) -= q * u.at(src, k);
  };
  auto col_axpy = [&](Eigen::Index dst, Eigen::Index src, const BigInt& q) {
    for (Eigen::Index k = 0; k < rows; ++k) d.at(k, dst) -= q * d.at(k, src);
    for (Eigen::Index k = 0; k < cols; ++k) v.at(k, dst) -= q * v.at(k, src);
  };

  Eigen::Index steps = std::min(rows, cols);
  for (Eigen::Index t = 0; t < steps; ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing submatrix as pivot.
      Eigen::Index pi = -1, pj = -1;
      for (Eigen::Index i = t; i < rows; ++i)
        for (Eigen::Index j = t; j < cols; ++j) {
          if (d.at(i, j) == 0) continue;
          if (pi < 0 || abs(d.at(i, j)) < abs(d.at(pi, pj))) {
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) {
        t = steps;  // trailing submatrix vanished; done everywhere
        break;
      }
      swap_rows(t, pi);
      swap_cols(t, pj);

      bool again = false;
      for (Eigen::Index i = t + 1; i < rows; ++i) {
        if (d.at(i, t) == 0) continue;
        row_axpy(i, t, d.at(i, t) / d.at(t, t));
        again = again || d.at(i, t) != 0;
      }
      if (again) continue;
      for (Eigen::Index j = t + 1; j < cols; ++j) {
        if (d.at(t, j) == 0) continue;
        col_axpy(j, t, d.at(t, j) / d.at(t, t));
        again = again || d.at(t, j) != 0;
      }
      if (again) continue;

      // Fold any non-divisible remainder into row t and keep reducing;
      // the minimal absolute value strictly drops, so this terminates.
      bool divisible = true;
      for (Eigen::Index i = t + 1; i < rows && divisible; ++i)
        for (Eigen::Index j = t + 1; j < cols && divisible; ++j)
          if (d.at(i, j) % d.at(t, t) != 0) {
            row_axpy(t, i, BigInt(-1));
            divisible = false;
          }
      if (divisible) break;
    }
    if (t >= steps) break;
    if (d.at(t, t) < 0) {
      for (Eigen::Index k = 0; k < cols; ++k) d.at(t, k) = -d.at(t, k);
      for (Eigen::Index k = 0; k < rows; ++k) u.at(t, k) = -u.at(t, k);
    }
  }
  return s;
}

std::string to_string(const FgAbelianGroup& g) {
  if (g.free_rank == 0 && g.invariant_factors.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  if (g.free_rank == 1) {
    os << "Z";
    first = false;
  } else if (g.free_rank > 1) {
    os << "Z^" << g.free_rank;
    first = false;
  }
  for (const BigInt& f : g.invariant_factors) {
    os << (first ? "" : " + ") << "Z/" << f.str();
    first = false;
  }
  return os.str();
}

FgAbelianGroup cokernel(const IntMatrix& m, Eigen::Index target_rank) {
  if (m.rows != target_rank)
    throw std::invalid_argument(
        "cokernel: row count must match the target rank");
  SmithDecomposition s = smith_normal_form(m);
  FgAbelianGroup g;
  Eigen::Index rank = 0;
  for (Eigen::Index t = 0; t < std::min(m.rows, m.cols); ++t) {
    const BigInt& dt = s.d.at(t, t);
    if (dt == 0) continue;
    ++rank;
    if (dt > 1) g.invariant_factors.push_back(dt);
  }
  g.free_rank = int(target_rank - rank);
  return g;
}

SubgroupInvariants subgroup_invariants(
    const std::vector<std::vector<BigInt>>& generators) {
  if (generators.empty()) return SubgroupInvariants{};
  std::size_t n = generators.front().size();
  for (const auto& g : generators)
    if (g.size() != n)
      throw std::invalid_argument(
          "subgroup: generator vectors must share one length");
  IntMatrix m(Eigen::Index(n), Eigen::Index(generators.size()));
  for (Eigen::Index j = 0; j < m.cols; ++j)
    for (Eigen::Index i = 0; i < m.rows; ++i)
      m.at(i, j) = generators[std::size_t(j)][std::size_t(i)];
  SmithDecomposition s = smith_normal_form(m);
  SubgroupInvariants out;
  for (Eigen::Index t = 0; t < std::min(m.rows, m.cols); ++t)
    if (s.d.at(t, t) != 0) {
      ++out.rank;
      out.divisors.push_back(s.d.at(t, t));
    }
  return out;
}

K0Result k0(const StarAlgebra& alg, std::uint64_t seed) {
  IrrepDecomposition dec = decompose_rep(identity_rep(alg), seed);
  Eigen::Index n = alg.dim();
  Eigen::Index total = 0;
  for (const IrrepClass& cls : dec.classes) {
    Eigen::Index r = carrier_dim(cls.irrep);
    total += r * r;
  }
  if (total != n)
    throw ToleranceError("k0: block dimensions do not account for the algebra");

  // The joint map b -> (phi_1(b), ..., phi_m(b)) is a linear bijection
  // onto the block model; invert it to synthesize one minimal
  // projection of the algebra per block.
  CMatrix sys(total, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index off = 0;
    for (const IrrepClass& cls : dec.classes) {
      Eigen::Index r = carrier_dim(cls.irrep);
      sys.block(off, i, r * r, 1) = vec(cls.irrep.images[std::size_t(i)]);
      off += r * r;
    }
  }
  Eigen::ColPivHouseholderQR<CMatrix> solver(sys);

  K0Result out;
  out.group.free_rank = int(dec.classes.size());
  const TolerancePolicy& tol = alg.tol();
  Eigen::Index off = 0;
  for (const IrrepClass& cls : dec.classes) {
    Eigen::Index r = carrier_dim(cls.irrep);
    CVector target = CVector::Zero(total);
    target(off) = 1.0;  // vec of E_11 in this block, zero elsewhere
    CVector coeff = solver.solve(target);
    CMatrix p = CMatrix::Zero(alg.ambient_dim(), alg.ambient_dim());
    for (Eigen::Index i = 0; i < n; ++i)
      p += coeff(i) * alg.basis()[std::size_t(i)];
    double scale = p.norm();
    if (!tol.is_zero((p * p - p).norm(), scale * scale + scale) ||
        !tol.is_zero((p.adjoint() - p).norm(), scale) ||
        !tol.is_zero((sys * coeff - target).norm(), 1.0))
      throw ToleranceError("k0: minimal projection synthesis failed");
    out.blocks.push_back(K0Block{r, cls.multiplicity, std::move(p)});
    off += r * r;
  }
  return out;
}

IntMatrix k0_map(const StarHom& phi, std::uint64_t seed) {
  const TolerancePolicy& tol = phi.target.tol();
  CMatrix unit_image = z2cross::apply(phi, phi.source.identity());
  if (!tol.is_zero((unit_image - phi.target.identity()).norm(), 1.0))
    throw std::invalid_argument("k0 map: homomorphism is not unital");

  IrrepDecomposition src =
      decompose_rep(identity_rep(phi.source), split_seed(seed, 1));
  IrrepDecomposition tgt =
      decompose_rep(identity_rep(phi.target), split_seed(seed, 2));

  IntMatrix m(Eigen::Index(tgt.classes.size()),
              Eigen::Index(src.classes.size()));
  for (Eigen::Index j = 0; j < m.rows; ++j) {
    StarHom pulled = compose(tgt.classes[std::size_t(j)].irrep, phi);
    Eigen::Index accounted = 0;
    for (Eigen::Index i = 0; i < m.cols; ++i) {
      const StarHom& source_irrep = src.classes[std::size_t(i)].irrep;
      Eigen::Index mult =
          Eigen::Index(intertwiners(source_irrep, pulled).size());
      m.at(j, i) = mult;
      accounted += mult * carrier_dim(source_irrep);
    }
    if (accounted != carrier_dim(pulled))
      throw ToleranceError("k0 map: multiplicities do not fill the carrier");
  }
  return m;
}

FgAbelianGroup pushout_k(const FgAbelianGroup& g1, const FgAbelianGroup& g2,
                         const FgAbelianGroup& gG, const IntMatrix& i1,
                         const IntMatrix& i2) {
  Eigen::Index n1 = g1.generator_count();
  Eigen::Index n2 = g2.generator_count();
  Eigen::Index ng = gG.generator_count();
  if (i1.rows != n1 || i1.cols != ng || i2.rows != n2 || i2.cols != ng)
    throw std::invalid_argument(
        "pushout: map shapes inconsistent with the groups");

  // Presentation of (g1 + g2) / <(i1 x, -i2 x)>: relation columns for
  // the torsion of the two factors, then one column per amalgam
  // generator.
  Eigen::Index t1 = Eigen::Index(g1.invariant_factors.size());
  Eigen::Index t2 = Eigen::Index(g2.invariant_factors.size());
  IntMatrix b(n1 + n2, t1 + t2 + ng);
  for (Eigen::Index k = 0; k < t1; ++k)
    b.at(g1.free_rank + k, k) = g1.invariant_factors[std::size_t(k)];
  for (Eigen::Index k = 0; k < t2; ++k)
    b.at(n1 + g2.free_rank + k, t1 + k) = g2.invariant_factors[std::size_t(k)];
  for (Eigen::Index x = 0; x < ng; ++x) {
    for (Eigen::Index r = 0; r < n1; ++r)
      b.at(r, t1 + t2 + x) = i1.at(r, x);
    for (Eigen::Index r = 0; r < n2; ++r)
      b.at(n1 + r, t1 + t2 + x) = -i2.at(r, x);
  }
  return cokernel(b, n1 + n2);
}

namespace {

using nlohmann::json;

[[noreturn]] void fixture_error(const std::string& where,
                                const std::string& what) {
  throw std::invalid_argument("fixtures: " + where + ": " + what);
}

BigInt bigint_from(const json& j, const std::string& where) {
  if (j.is_number_integer()) return BigInt(j.get<long long>());
  if (j.is_string()) {
    try {
      return BigInt(j.get<std::string>());
    } catch (const std::exception&) {
      fixture_error(where, "not a decimal integer: '" + j.get<std::string>() +
                               "'");
    }
  }
  fixture_error(where, "expected an integer or decimal string");
}

FgAbelianGroup group_from(const json& j, const std::string& where) {
  if (!j.is_object()) fixture_error(where, "expected a group object");
  FgAbelianGroup g;
  g.free_rank = j.at("free_rank").get<int>();
  if (g.free_rank < 0) fixture_error(where, "free_rank must be >= 0");
  if (j.contains("invariant_factors")) {
    for (std::size_t k = 0; k < j.at("invariant_factors").size(); ++k)
      g.invariant_factors.push_back(
          bigint_from(j.at("invariant_factors").at(k),
                      where + ".invariant_factors[" + std::to_string(k) + "]"));
  }
  return g;
}

IntMatrix matrix_from(const json& j, const std::string& where) {
  if (!j.is_array()) fixture_error(where, "expected an array of rows");
  Eigen::Index rows = Eigen::Index(j.size());
  Eigen::Index cols = rows > 0 ? Eigen::Index(j.at(0).size()) : 0;
  IntMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j.at(std::size_t(r));
    if (!row.is_array() || Eigen::Index(row.size()) != cols)
      fixture_error(where + "[" + std::to_string(r) + "]",
                    "rows must be arrays of equal length");
    for (Eigen::Index c = 0; c < cols; ++c)
      m.at(r, c) = bigint_from(row.at(std::size_t(c)),
                               where + "[" + std::to_string(r) + "][" +
                                   std::to_string(c) + "]");
  }
  return m;
}

PushoutInput pushout_from(const json& j, const std::string& where) {
  return PushoutInput{
      group_from(j.at("g1"), where + ".g1"),
      group_from(j.at("g2"), where + ".g2"),
      group_from(j.at("gG"), where + ".gG"),
      matrix_from(j.at("i1"), where + ".i1"),
      matrix_from(j.at("i2"), where + ".i2"),
      group_from(j.at("expected"), where + ".expected"),
  };
}

std::vector<std::string> strings_from(const json& j) {
  std::vector<std::string> out;
  for (const json& s : j) out.push_back(s.get<std::string>());
  return out;
}

}  // namespace

std::vector<PaperFixture> load_fixtures(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("fixtures: cannot open '" + path + "'");
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("fixtures: parse error: ") +
                                e.what());
  }
  if (!root.is_object() || root.at("format").get<int>() != 1)
    throw std::invalid_argument("fixtures: unsupported format version");

  std::vector<PaperFixture> out;
  for (std::size_t k = 0; k < root.at("cases").size(); ++k) {
    const json& c = root.at("cases").at(k);
    std::string where = "cases[" + std::to_string(k) + "]";
    PaperFixture f;
    f.case_id = c.at("id").get<std::string>();
    f.k0 = pushout_from(c.at("k0"), where + ".k0");
    f.k1 = pushout_from(c.at("k1"), where + ".k1");
    if (c.contains("side_check")) {
      const json& sc = c.at("side_check");
      SubgroupSideCheck check;
      for (std::size_t g = 0; g < sc.at("generators").size(); ++g) {
        std::vector<BigInt> vec;
        for (std::size_t i = 0; i < sc.at("generators").at(g).size(); ++i)
          vec.push_back(bigint_from(
              sc.at("generators").at(g).at(i),
              where + ".side_check.generators[" + std::to_string(g) + "]"));
        check.generators.push_back(std::move(vec));
      }
      check.expected_rank = sc.at("expected_rank").get<int>();
      for (std::size_t i = 0; i < sc.at("expected_divisors").size(); ++i)
        check.expected_divisors.push_back(
            bigint_from(sc.at("expected_divisors").at(i),
                        where + ".side_check.expected_divisors"));
      f.side_check = std::move(check);
    }
    if (c.contains("generator_notes"))
      f.generator_notes = strings_from(c.at("generator_notes"));
    if (c.contains("notes")) f.notes = strings_from(c.at("notes"));
    out.push_back(std::move(f));
  }
  return out;
}

PaperCaseReport paper_case(const std::string& case_id,
                           const std::string& fixtures_path) {
  std::vector<PaperFixture> fixtures = load_fixtures(fixtures_path);
  for (PaperFixture& f : fixtures) {
    if (f.case_id != case_id) continue;
    PaperCaseReport report{std::move(f), {}, {}, false, false, {}, true};
    const PaperFixture& fx = report.fixture;
    report.k0_computed =
        pushout_k(fx.k0.g1, fx.k0.g2, fx.k0.gG, fx.k0.i1, fx.k0.i2);
    report.k1_computed =
        pushout_k(fx.k1.g1, fx.k1.g2, fx.k1.gG, fx.k1.i1, fx.k1.i2);
    report.k0_matches = report.k0_computed == fx.k0.expected;
    report.k1_matches = report.k1_computed == fx.k1.expected;
    if (fx.side_check) {
      report.side_check_computed =
          subgroup_invariants(fx.side_check->generators);
      report.side_check_matches =
          report.side_check_computed->rank == fx.side_check->expected_rank &&
          report.side_check_computed->divisors ==
              fx.side_check->expected_divisors;
    }
    return report;
  }
  throw std::invalid_argument("paper case: unknown case '" + case_id + "'");
}

}  // namespace z2cross
