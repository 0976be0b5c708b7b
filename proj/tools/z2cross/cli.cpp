#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "z2cross/instances.hpp"
#include "z2cross/io.hpp"
#include "z2cross/ktheory.hpp"
#include "z2cross/models.hpp"
#include "z2cross/oracles.hpp"
#include "z2cross/random.hpp"

#ifndef Z2CROSS_DEFAULT_FIXTURES
#define Z2CROSS_DEFAULT_FIXTURES "data/ktheory_fixtures.json"
#endif

namespace z2cross::cli {

using nlohmann::json;

nlohmann::json to_json(const Report& r) {
  return json{{"command", r.command},
              {"seed", r.seed},
              {"tolerance", json{{"abs", r.abs_tol}, {"rel", r.rel_tol}}},
              {"paper_anchor", r.paper_anchor},
              {"results", r.results},
              {"exit_code", r.exit_code}};
}

Report report_from_json(const nlohmann::json& j) {
  Report r;
  r.command = j.at("command").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.abs_tol = j.at("tolerance").at("abs").get<double>();
  r.rel_tol = j.at("tolerance").at("rel").get<double>();
  r.paper_anchor = j.at("paper_anchor").get<std::string>();
  r.results = j.at("results");
  r.exit_code = j.at("exit_code").get<int>();
  return r;
}

namespace {

json group_json(const FgAbelianGroup& g) {
  json factors = json::array();
  for (const BigInt& f : g.invariant_factors) factors.push_back(f.str());
  return json{{"free_rank", g.free_rank},
              {"invariant_factors", factors},
              {"rendered", to_string(g)}};
}

json intmatrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows; ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols; ++c) row.push_back(m.at(r, c).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

BigInt bigint_arg(const json& v, const std::string& where) {
  if (v.is_number_integer()) return BigInt(v.get<long long>());
  if (v.is_string()) {
    try {
      return BigInt(v.get<std::string>());
    } catch (const std::exception&) {
      throw std::invalid_argument(where + ": not a decimal integer");
    }
  }
  throw std::invalid_argument(where + ": expected an integer or decimal string");
}

IntMatrix intmatrix_arg(const json& j, const std::string& where) {
  if (!j.is_array())
    throw std::invalid_argument(where + ": expected an array of rows");
  Eigen::Index rows = Eigen::Index(j.size());
  Eigen::Index cols = rows > 0 ? Eigen::Index(j.at(0).size()) : 0;
  IntMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (!j.at(std::size_t(r)).is_array() ||
        Eigen::Index(j.at(std::size_t(r)).size()) != cols)
      throw std::invalid_argument(where + ": rows must share one length");
    for (Eigen::Index c = 0; c < cols; ++c)
      m.at(r, c) = bigint_arg(j.at(std::size_t(r)).at(std::size_t(c)),
                              where + "[" + std::to_string(r) + "][" +
                                  std::to_string(c) + "]");
  }
  return m;
}

FgAbelianGroup group_arg(const json& j, const std::string& where) {
  FgAbelianGroup g;
  g.free_rank = j.at("free_rank").get<int>();
  if (j.contains("invariant_factors"))
    for (std::size_t k = 0; k < j.at("invariant_factors").size(); ++k)
      g.invariant_factors.push_back(
          bigint_arg(j.at("invariant_factors").at(k),
                     where + ".invariant_factors"));
  return g;
}

json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(what + ": parse error: " + e.what());
  }
}

json read_json_file(const std::string& path, const std::string& what) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(what + ": cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), what);
}

struct SourceOptions {
  std::string input;
  std::string model;
  int n = 8;
};

void add_source_flags(CLI::App* cmd, SourceOptions& s) {
  cmd->add_option("--input", s.input, "AlgebraFile (JSON) to load");
  cmd->add_option("--model", s.model,
                  "built-in model: m2, circle-flip, circle-conj");
  cmd->add_option("--n", s.n, "number of roots of unity (circle models)")
      ->capture_default_str();
}

LoadedAlgebra resolve_source(const SourceOptions& s) {
  bool has_input = !s.input.empty();
  bool has_model = !s.model.empty();
  if (has_input == has_model)
    throw std::invalid_argument("provide exactly one of --input or --model");
  if (has_input) return load_algebra_file(s.input);
  if (s.model == "m2") {
    auto demo = build_m2_demo();
    return LoadedAlgebra{demo.first, std::move(demo.second)};
  }
  if (s.model == "circle-flip") {
    CircleModel m = build_circle(s.n, CirclePointMap::Flip);
    return LoadedAlgebra{m.algebra, std::move(m.sigma)};
  }
  if (s.model == "circle-conj") {
    CircleModel m = build_circle(s.n, CirclePointMap::Conj);
    return LoadedAlgebra{m.algebra, std::move(m.sigma)};
  }
  throw std::invalid_argument("unknown model '" + s.model +
                              "' (expected m2, circle-flip, circle-conj)");
}

const OrderTwoAutomorphism& require_sigma(const LoadedAlgebra& src) {
  if (!src.sigma)
    throw std::invalid_argument(
        "this command requires an automorphism; the input file does not "
        "declare one");
  return *src.sigma;
}

double covariance_residual(const CrossedProduct& cp) {
  double worst = 0.0;
  const CMatrix& w = cp.symmetry;
  for (const CMatrix& g : cp.base.generators()) {
    CMatrix lhs = w * z2cross::apply(cp.embed, g) * w.adjoint();
    CMatrix rhs = z2cross::apply(cp.embed, z2cross::apply(cp.sigma.action, g));
    worst = std::max(worst, (lhs - rhs).norm());
  }
  return worst;
}

json census_json(const Census& c) {
  json dims = json::array();
  for (Eigen::Index d : c.class_dims) dims.push_back(d);
  return json{{"type1", c.type1_count},
              {"type2_split", c.type2split_count},
              {"type2_induced", c.type2induced_count},
              {"class_dims", dims}};
}

// ---- verify --lemma {central, central2} ------------------------------

struct LemmaSuite {
  int pairs = 0;
  int witnesses = 0;
  int conclusions = 0;
  int undecided = 0;
  double max_residual = 0.0;
  std::vector<std::string> failures;
};

// Random pairs mixing the generic case (hypothesis fails), scalar
// multiples, pure-phase multiples and the zero matrix, so both verdict
// branches are exercised at every dimension.
LemmaSuite lemma_suite(bool second_form, std::uint64_t seed,
                       int trials_per_dim, const TolerancePolicy& tol) {
  LemmaSuite suite;
  for (int d = 2; d <= 6; ++d) {
    for (int t = 0; t < trials_per_dim; ++t) {
      Rng rng(split_seed(seed, std::uint64_t(d) * 1000003 + std::uint64_t(t)));
      CMatrix a = rng.gaussian_matrix(d, d);
      CMatrix b;
      switch (t % 4) {
        case 0:
          b = rng.gaussian_matrix(d, d);
          break;
        case 1:
          b = rng.cgauss() * a;
          break;
        case 2:
          b = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform()) * a;
          break;
        default:
          b = CMatrix::Zero(d, d);
          break;
      }
      ++suite.pairs;
      std::string label = "d=" + std::to_string(d) + " t=" + std::to_string(t);
      try {
        OracleVerdict v = second_form ? lemma_central2_check(a, b, tol)
                                      : lemma_central_check(a, b, tol);
        if (v.dependence_coefficient) {
          ++suite.conclusions;
          double residual = (b - *v.dependence_coefficient * a).norm();
          suite.max_residual = std::max(suite.max_residual, residual);
          if (residual > tol.rel_tol * (1.0 + a.norm()))
            suite.failures.push_back(label + ": residual " +
                                     std::to_string(residual));
        } else if (v.witness) {
          ++suite.witnesses;
        } else {
          ++suite.undecided;
          suite.failures.push_back(label + ": neither witness nor coefficient");
        }
      } catch (const ToleranceError& e) {
        ++suite.undecided;
        suite.failures.push_back(label + ": " + e.what());
      }
    }
  }
  return suite;
}

json lemma_suite_json(const LemmaSuite& s) {
  json failures = json::array();
  for (const std::string& f : s.failures) failures.push_back(f);
  return json{{"pairs", s.pairs},
              {"witnesses", s.witnesses},
              {"conclusions", s.conclusions},
              {"undecided", s.undecided},
              {"max_conclusion_residual", s.max_residual},
              {"failures", failures}};
}

// ---- subcommand handlers --------------------------------------------

void handle_grading(const LoadedAlgebra& src, Report& r,
                    std::string& summary) {
  const OrderTwoAutomorphism& sigma = require_sigma(src);
  Grading g = grading(sigma);
  const StarAlgebra& alg = sigma.algebra;
  double worst = 0.0;
  for (const CMatrix& b : alg.basis()) {
    CMatrix rec = CMatrix::Zero(alg.ambient_dim(), alg.ambient_dim());
    for (const CMatrix& f : g.fixed_basis) rec += hs_inner(f, b) * f;
    for (const CMatrix& o : g.odd_basis) rec += hs_inner(o, b) * o;
    worst = std::max(worst, (rec - b).norm());
  }
  r.paper_anchor =
      "decomposition of a *-algebra into the +1 and -1 eigenspaces of an "
      "order-two automorphism";
  r.results = json{{"algebra_dim", alg.dim()},
                   {"fixed_dim", g.fixed_basis.size()},
                   {"odd_dim", g.odd_basis.size()},
                   {"reconstruction_residual", worst}};
  summary = "grading: " + std::to_string(g.fixed_basis.size()) + " fixed + " +
            std::to_string(g.odd_basis.size()) + " odd = " +
            std::to_string(alg.dim());
}

void handle_crossed(const LoadedAlgebra& src, std::uint64_t seed, Report& r,
                    std::string& summary) {
  const OrderTwoAutomorphism& sigma = require_sigma(src);
  CrossedProduct cp = crossed_product(sigma);
  const CMatrix& w = cp.symmetry;
  double wsq = (w * w - CMatrix::Identity(w.rows(), w.cols())).norm();
  IrrepDecomposition dec = decompose_rep(identity_rep(cp.algebra), seed);
  json dims = json::array();
  for (const IrrepClass& cls : dec.classes)
    dims.push_back(carrier_dim(cls.irrep));
  r.paper_anchor =
      "doubled-matrix model of the crossed product by an order-two "
      "automorphism: elements a + bW with WaW = sigma(a)";
  r.results = json{{"base_dim", cp.base.dim()},
                   {"crossed_dim", cp.algebra.dim()},
                   {"dimension_doubles", cp.algebra.dim() == 2 * cp.base.dim()},
                   {"symmetry_square_residual", wsq},
                   {"covariance_residual", covariance_residual(cp)},
                   {"block_dims", dims}};
  summary = "crossed product: dim " + std::to_string(cp.algebra.dim()) +
            " over base dim " + std::to_string(cp.base.dim());
}

json complex_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

void handle_classify(const LoadedAlgebra& src, std::uint64_t seed, Report& r,
                     std::string& summary) {
  const OrderTwoAutomorphism& sigma = require_sigma(src);
  CrossedProduct cp = crossed_product(sigma);
  IrrepDecomposition dec = decompose_rep(identity_rep(cp.algebra), seed);
  json classes = json::array();
  int t1 = 0, t2s = 0, t2i = 0;
  for (const IrrepClass& cls : dec.classes) {
    Classification c = classify(cp, cls.irrep);
    json entry{{"dim", carrier_dim(cls.irrep)},
               {"multiplicity", cls.multiplicity},
               {"kind", to_string(c.kind)}};
    if (c.kind == RepKind::Type1) {
      entry["sign"] = c.sign;
      ++t1;
    }
    if (c.kind == RepKind::Type2Split) ++t2s;
    if (c.kind == RepKind::Type2Induced) {
      ++t2i;
      entry["linking_scalar"] = complex_json(*c.linking_scalar);
      entry["inducing_dim"] = carrier_dim(*c.inducing_rep);
    }
    classes.push_back(std::move(entry));
  }
  r.paper_anchor =
      "dichotomy for irreducible representations of a crossed product by an "
      "order-two automorphism: scalar symmetry image (Type 1) versus "
      "symmetry spectrum {-1, +1} (Type 2, split or induced)";
  r.results = json{{"classes", classes}};
  summary = "classified " + std::to_string(dec.classes.size()) + " classes: " +
            std::to_string(t1) + " Type1, " + std::to_string(t2s) +
            " Type2Split, " + std::to_string(t2i) + " Type2Induced";
}

void handle_induce(const LoadedAlgebra& src, std::uint64_t seed,
                   int class_index, Report& r, std::string& summary) {
  const OrderTwoAutomorphism& sigma = require_sigma(src);
  CrossedProduct cp = crossed_product(sigma);
  IrrepDecomposition dec = decompose_rep(identity_rep(src.algebra), seed);
  if (class_index < 0 || std::size_t(class_index) >= dec.classes.size())
    throw std::invalid_argument(
        "--class-index out of range: the base algebra has " +
        std::to_string(dec.classes.size()) + " irreducible classes");
  const Representation& pi = dec.classes[std::size_t(class_index)].irrep;
  Representation tilde = induce(cp, pi);
  InductionCriteria crit = induction_criteria(cp, pi);
  json bullet3;
  if (crit.no_order_two_intertwiner)
    bullet3 = *crit.no_order_two_intertwiner;
  r.paper_anchor =
      "induced representation pi + (pi after sigma) with the symmetry acting "
      "as the block flip; irreducible exactly when pi and pi after sigma are "
      "inequivalent";
  r.results = json{{"base_classes", dec.classes.size()},
                   {"class_index", class_index},
                   {"base_dim", carrier_dim(pi)},
                   {"induced_dim", carrier_dim(tilde)},
                   {"induced_irreducible", crit.induced_irreducible},
                   {"twist_inequivalent", crit.twist_inequivalent},
                   {"no_order_two_intertwiner", bullet3}};
  summary = "induced class " + std::to_string(class_index) + ": dim " +
            std::to_string(carrier_dim(tilde)) +
            (crit.induced_irreducible ? ", irreducible" : ", reducible");
}

void handle_census(const LoadedAlgebra& src, std::uint64_t seed, Report& r,
                   std::string& summary) {
  const OrderTwoAutomorphism& sigma = require_sigma(src);
  CrossedProduct cp = crossed_product(sigma);
  Census c = census(cp, seed);
  Eigen::Index squares = 0;
  for (Eigen::Index d : c.class_dims) squares += d * d;
  r.paper_anchor =
      "exhaustive classification of the irreducible classes of a crossed "
      "product by an order-two automorphism";
  json res = census_json(c);
  res["sum_of_squared_dims"] = squares;
  res["crossed_dim"] = cp.algebra.dim();
  r.results = std::move(res);
  summary = "census: (" + std::to_string(c.type1_count) + ", " +
            std::to_string(c.type2split_count) + ", " +
            std::to_string(c.type2induced_count) + ") over " +
            std::to_string(c.class_dims.size()) + " classes";
}

void handle_verify(const std::string& lemma, std::uint64_t seed, int trials,
                   int max_block, const TolerancePolicy& tol, Report& r,
                   std::string& summary) {
  if (lemma == "central" || lemma == "central2") {
    bool second = lemma == "central2";
    LemmaSuite suite = lemma_suite(second, seed, trials, tol);
    r.paper_anchor =
        second ? "operator identity A T A* = B T B* for every T forces "
                 "B = exp(2 i pi theta) A"
               : "operator identity B T A = A T B for every T forces linear "
                 "dependence B = lambda A";
    r.results = lemma_suite_json(suite);
    r.exit_code = suite.failures.empty() ? 0 : 4;
    summary = "lemma " + lemma + ": " + std::to_string(suite.pairs) +
              " pairs, " + std::to_string(suite.witnesses) + " witnesses, " +
              std::to_string(suite.conclusions) + " conclusions, " +
              std::to_string(suite.failures.size()) + " failures";
    return;
  }
  if (lemma == "rep0") {
    CampaignReport campaign = rep0_campaign(seed, trials, max_block);
    json failures = json::array();
    for (const CampaignFailure& f : campaign.failures)
      failures.push_back(json{{"instance", f.instance},
                              {"expected", f.expected},
                              {"observed", f.observed}});
    r.paper_anchor =
        "induced-representation criteria: irreducibility of the induced "
        "representation, inequivalence of pi and pi after sigma, absence of "
        "an order-two intertwiner; faithfulness passes to the induced "
        "representation";
    r.results = json{{"trials", campaign.trials},
                     {"failures", failures},
                     {"elapsed_seconds", campaign.elapsed_seconds}};
    r.exit_code = campaign.passed() ? 0 : 4;
    summary = "rep0 campaign: " + std::to_string(campaign.trials) +
              " trials, " + std::to_string(campaign.failures.size()) +
              " failures";
    return;
  }
  throw std::invalid_argument("unknown lemma '" + lemma +
                              "' (expected central, central2, rep0)");
}

void handle_k0(const LoadedAlgebra& src, std::uint64_t seed, bool base_only,
               Report& r, std::string& summary) {
  StarAlgebra alg = src.algebra;
  bool crossed = false;
  if (!base_only && src.sigma) {
    alg = crossed_product(*src.sigma).algebra;
    crossed = true;
  }
  K0Result res = k0(alg, seed);
  json blocks = json::array();
  for (const K0Block& b : res.blocks)
    blocks.push_back(json{{"dim", b.dim}, {"multiplicity", b.multiplicity}});
  r.paper_anchor =
      "K0 of a finite-dimensional algebra is free on its Wedderburn blocks; "
      "K1 vanishes";
  r.results = json{{"algebra", alg.name()},
                   {"of_crossed_product", crossed},
                   {"k0", group_json(res.group)},
                   {"k1", group_json(FgAbelianGroup{})},
                   {"blocks", blocks}};
  summary = "k0(" + alg.name() + ") = " + to_string(res.group);
}

void handle_k0_map(const LoadedAlgebra& src, std::uint64_t seed,
                   const std::string& map_kind, Report& r,
                   std::string& summary) {
  const OrderTwoAutomorphism& sigma = require_sigma(src);
  CrossedProduct cp = crossed_product(sigma);
  StarHom phi = cp.embed;
  if (map_kind == "symmetry-span") {
    Eigen::Index d2 = cp.algebra.ambient_dim();
    std::vector<CMatrix> spanning{CMatrix::Identity(d2, d2), cp.symmetry};
    StarAlgebra sub =
        StarAlgebra::closed_span(d2, spanning, spanning, "span{1, W}");
    phi = make_star_hom(sub, cp.algebra, sub.basis());
  } else if (map_kind != "embed") {
    throw std::invalid_argument("unknown --map '" + map_kind +
                                "' (expected embed, symmetry-span)");
  }
  IntMatrix m = k0_map(phi, seed);
  r.paper_anchor =
      "induced map on K0 as the multiplicity matrix of restricted "
      "irreducible representations";
  r.results = json{{"map", map_kind},
                   {"source", phi.source.name()},
                   {"target", phi.target.name()},
                   {"rows", m.rows},
                   {"cols", m.cols},
                   {"matrix", intmatrix_json(m)}};
  summary = "k0 map (" + map_kind + "): " + std::to_string(m.rows) + "x" +
            std::to_string(m.cols) + " multiplicity matrix";
}

void handle_snf(const std::string& matrix_text, const std::string& input,
                Report& r, std::string& summary) {
  json spec;
  if (!matrix_text.empty() && !input.empty())
    throw std::invalid_argument("provide exactly one of --matrix or --input");
  if (!matrix_text.empty())
    spec = parse_json_text(matrix_text, "snf --matrix");
  else if (!input.empty())
    spec = read_json_file(input, "snf --input").at("matrix");
  else
    throw std::invalid_argument("provide exactly one of --matrix or --input");
  IntMatrix m = intmatrix_arg(spec, "matrix");

  SmithDecomposition s = smith_normal_form(m);
  bool product_ok = multiply(multiply(s.u, m), s.v) == s.d;
  BigInt du = determinant(s.u);
  BigInt dv = determinant(s.v);
  bool unimodular = (du == 1 || du == -1) && (dv == 1 || dv == -1);
  bool chain = true;
  Eigen::Index steps = std::min(m.rows, m.cols);
  for (Eigen::Index t = 0; t + 1 < steps; ++t) {
    const BigInt& x = s.d.at(t, t);
    const BigInt& y = s.d.at(t + 1, t + 1);
    if (x == 0 && y != 0) chain = false;
    if (x != 0 && y % x != 0) chain = false;
  }
  r.paper_anchor =
      "Smith normal form: U M V = D with U, V unimodular and the diagonal "
      "dividing along the chain";
  r.results = json{{"input", intmatrix_json(m)},
                   {"u", intmatrix_json(s.u)},
                   {"d", intmatrix_json(s.d)},
                   {"v", intmatrix_json(s.v)},
                   {"checks", json{{"product_matches", product_ok},
                                   {"u_det", du.str()},
                                   {"v_det", dv.str()},
                                   {"divisibility_chain", chain}}}};
  r.exit_code = (product_ok && unimodular && chain) ? 0 : 4;
  json diag = json::array();
  for (Eigen::Index t = 0; t < steps; ++t) diag.push_back(s.d.at(t, t).str());
  summary = "snf diagonal: " + diag.dump();
}

void handle_pushout(const std::string& input, Report& r,
                    std::string& summary) {
  if (input.empty())
    throw std::invalid_argument("pushout-k requires --input FILE");
  json spec = read_json_file(input, "pushout-k --input");
  FgAbelianGroup g1 = group_arg(spec.at("g1"), "g1");
  FgAbelianGroup g2 = group_arg(spec.at("g2"), "g2");
  FgAbelianGroup gg = group_arg(spec.at("gG"), "gG");
  IntMatrix i1 = intmatrix_arg(spec.at("i1"), "i1");
  IntMatrix i2 = intmatrix_arg(spec.at("i2"), "i2");
  FgAbelianGroup out = pushout_k(g1, g2, gg, i1, i2);
  r.paper_anchor =
      "K-group of an amalgamated free product as the cokernel of "
      "x -> (i1 x, -i2 x) into K(A1) + K(A2)";
  r.results = json{{"g1", group_json(g1)},
                   {"g2", group_json(g2)},
                   {"gG", group_json(gg)},
                   {"group", group_json(out)}};
  summary = "pushout K-group: " + to_string(out);
}

void handle_paper(const std::string& case_id, const std::string& fixtures,
                  Report& r, std::string& summary) {
  PaperCaseReport report = paper_case(case_id, fixtures);
  json notes = json::array();
  for (const std::string& n : report.fixture.notes) notes.push_back(n);
  json gen_notes = json::array();
  for (const std::string& n : report.fixture.generator_notes)
    gen_notes.push_back(n);
  json side;
  if (report.fixture.side_check) {
    json divisors = json::array();
    for (const BigInt& d : report.side_check_computed->divisors)
      divisors.push_back(d.str());
    side = json{{"rank", report.side_check_computed->rank},
                {"divisors", divisors},
                {"expected_rank", report.fixture.side_check->expected_rank},
                {"matches", report.side_check_matches}};
  }
  r.paper_anchor =
      case_id == "beta"
          ? "K-groups of the crossed product of two circle algebras "
            "amalgamated over the scalars by the point flip, via the "
            "pushout over the order-two group algebra"
          : "K-groups of the crossed product of two circle algebras "
            "amalgamated over the scalars by complex conjugation, via the "
            "pushout over the order-two group algebra";
  r.results = json{
      {"case", case_id},
      {"k0", json{{"computed", group_json(report.k0_computed)},
                  {"expected", group_json(report.fixture.k0.expected)},
                  {"matches", report.k0_matches}}},
      {"k1", json{{"computed", group_json(report.k1_computed)},
                  {"expected", group_json(report.fixture.k1.expected)},
                  {"matches", report.k1_matches}}},
      {"side_check", side},
      {"generator_notes", gen_notes},
      {"notes", notes}};
  r.exit_code = report.all_match() ? 0 : 4;
  summary = "case " + case_id + ": K0 = " + to_string(report.k0_computed) +
            ", K1 = " + to_string(report.k1_computed) +
            (report.all_match() ? " (matches)" : " (MISMATCH)");
}

void handle_demo(const std::string& model, int n, std::uint64_t seed,
                 Report& r, std::string& summary) {
  SourceOptions opts;
  opts.model = model;
  opts.n = n;
  LoadedAlgebra src = resolve_source(opts);
  const OrderTwoAutomorphism& sigma = *src.sigma;
  Grading g = grading(sigma);
  CrossedProduct cp = crossed_product(sigma);
  Census c = census(cp, seed);
  K0Result k = k0(cp.algebra, seed);
  r.paper_anchor =
      "worked example: base algebra, grading, crossed product, census of "
      "irreducible classes and K0 of the crossed product";
  json res = census_json(c);
  r.results = json{{"model", model},
                   {"n", n},
                   {"base_dim", src.algebra.dim()},
                   {"grading",
                    json{{"fixed_dim", g.fixed_basis.size()},
                         {"odd_dim", g.odd_basis.size()}}},
                   {"crossed_dim", cp.algebra.dim()},
                   {"census", res},
                   {"k0", group_json(k.group)}};
  summary = "demo " + model + ": census (" + std::to_string(c.type1_count) +
            ", " + std::to_string(c.type2split_count) + ", " +
            std::to_string(c.type2induced_count) + "), k0 = " +
            to_string(k.group);
}

std::string resolve_fixtures(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("Z2CROSS_FIXTURES")) return env;
  return Z2CROSS_DEFAULT_FIXTURES;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"workbench for crossed products by order-two automorphisms"};
  app.fallthrough();
  app.require_subcommand(1);
  std::uint64_t seed = kDefaultSeed;
  app.add_option("--seed", seed, "master seed for randomized internals");

  SourceOptions grading_src;
  CLI::App* grading_cmd = app.add_subcommand(
      "grading", "eigenspace split under the automorphism");
  add_source_flags(grading_cmd, grading_src);

  SourceOptions crossed_src;
  CLI::App* crossed_cmd = app.add_subcommand(
      "crossed-product", "build and check the doubled-matrix model");
  add_source_flags(crossed_cmd, crossed_src);

  SourceOptions classify_src;
  CLI::App* classify_cmd = app.add_subcommand(
      "classify", "classify every irreducible class of the crossed product");
  add_source_flags(classify_cmd, classify_src);

  SourceOptions induce_src;
  int induce_index = 0;
  CLI::App* induce_cmd = app.add_subcommand(
      "induce", "induce a base irreducible and test the criteria");
  add_source_flags(induce_cmd, induce_src);
  induce_cmd->add_option("--class-index", induce_index,
                         "which base irreducible class to induce")
      ->capture_default_str();

  SourceOptions census_src;
  CLI::App* census_cmd =
      app.add_subcommand("census", "tally the classification kinds");
  add_source_flags(census_cmd, census_src);

  std::string verify_lemma;
  int verify_trials = 200;
  int verify_max_block = 3;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "brute-force a lemma or run the campaign");
  verify_cmd
      ->add_option("--lemma", verify_lemma, "central, central2 or rep0")
      ->required();
  verify_cmd
      ->add_option("--trials", verify_trials,
                   "pairs per dimension (lemmas) or campaign trials (rep0)")
      ->capture_default_str();
  verify_cmd
      ->add_option("--max-block", verify_max_block,
                   "largest matrix block in random instances (rep0)")
      ->capture_default_str();

  SourceOptions k0_src;
  bool k0_base_only = false;
  CLI::App* k0_cmd = app.add_subcommand("k0", "K0 with one projection per block");
  add_source_flags(k0_cmd, k0_src);
  k0_cmd->add_flag("--base", k0_base_only,
                   "use the base algebra even when an automorphism is given");

  SourceOptions k0map_src;
  std::string k0map_kind = "embed";
  CLI::App* k0map_cmd =
      app.add_subcommand("k0-map", "induced K0 map of a built-in inclusion");
  add_source_flags(k0map_cmd, k0map_src);
  k0map_cmd
      ->add_option("--map", k0map_kind,
                   "embed (base into crossed) or symmetry-span (span{1, W})")
      ->capture_default_str();

  std::string snf_matrix, snf_input;
  CLI::App* snf_cmd =
      app.add_subcommand("snf", "Smith normal form of an integer matrix");
  snf_cmd->add_option("--matrix", snf_matrix,
                      "inline JSON rows, e.g. [[2,4],[6,8]]");
  snf_cmd->add_option("--input", snf_input, "JSON file with a \"matrix\" key");

  std::string pushout_input;
  CLI::App* pushout_cmd = app.add_subcommand(
      "pushout-k", "cokernel presentation of an amalgamated K-group");
  pushout_cmd->add_option("--input", pushout_input,
                          "JSON file with g1, g2, gG, i1, i2");

  std::string paper_case_id, paper_fixtures;
  CLI::App* paper_cmd = app.add_subcommand(
      "paper", "reproduce a fixture case study (alpha or beta)");
  paper_cmd->add_option("--case", paper_case_id, "alpha or beta")
      ->required()
      ->check(CLI::IsMember({"alpha", "beta"}));
  paper_cmd->add_option("--fixtures", paper_fixtures,
                        "fixture file (default: built-in data file)");

  std::string demo_model;
  int demo_n = 8;
  CLI::App* demo_cmd =
      app.add_subcommand("demo", "end-to-end summary of a built-in model");
  demo_cmd->add_option("--model", demo_model, "m2, circle-flip or circle-conj")
      ->required();
  demo_cmd->add_option("--n", demo_n, "number of roots of unity")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  std::ostringstream cmdline;
  for (int i = 1; i < argc; ++i) cmdline << (i > 1 ? " " : "") << argv[i];

  TolerancePolicy tol = TolerancePolicy::defaults();
  Report r;
  r.command = cmdline.str();
  r.seed = seed;
  r.abs_tol = tol.abs_tol;
  r.rel_tol = tol.rel_tol;
  std::string summary;

  try {
    if (grading_cmd->parsed())
      handle_grading(resolve_source(grading_src), r, summary);
    else if (crossed_cmd->parsed())
      handle_crossed(resolve_source(crossed_src), seed, r, summary);
    else if (classify_cmd->parsed())
      handle_classify(resolve_source(classify_src), seed, r, summary);
    else if (induce_cmd->parsed())
      handle_induce(resolve_source(induce_src), seed, induce_index, r,
                    summary);
    else if (census_cmd->parsed())
      handle_census(resolve_source(census_src), seed, r, summary);
    else if (verify_cmd->parsed())
      handle_verify(verify_lemma, seed, verify_trials, verify_max_block, tol,
                    r, summary);
    else if (k0_cmd->parsed())
      handle_k0(resolve_source(k0_src), seed, k0_base_only, r, summary);
    else if (k0map_cmd->parsed())
      handle_k0_map(resolve_source(k0map_src), seed, k0map_kind, r, summary);
    else if (snf_cmd->parsed())
      handle_snf(snf_matrix, snf_input, r, summary);
    else if (pushout_cmd->parsed())
      handle_pushout(pushout_input, r, summary);
    else if (paper_cmd->parsed())
      handle_paper(paper_case_id, resolve_fixtures(paper_fixtures), r,
                   summary);
    else if (demo_cmd->parsed())
      handle_demo(demo_model, demo_n, seed, r, summary);
  } catch (const ToleranceError& e) {
    r.results = json{{"error", e.what()}};
    r.exit_code = 3;
    summary = std::string("tolerance failure: ") + e.what();
  } catch (const std::invalid_argument& e) {
    r.results = json{{"error", e.what()}};
    r.exit_code = 2;
    summary = std::string("invalid input: ") + e.what();
  }

  out << to_json(r).dump(2) << "\n";
  err << summary << "\n";
  err << "exit " << r.exit_code << "\n";
  return r.exit_code;
}

}  // namespace z2cross::cli
