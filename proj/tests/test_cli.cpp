#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "z2cross/cli.hpp"

using nlohmann::json;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
  json report;
};

CliResult run_cli(std::vector<std::string> args) {
  std::vector<const char*> argv{"z2cross"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliResult res;
  res.code = z2cross::cli::run(int(argv.size()), argv.data(), out, err);
  res.out = out.str();
  res.err = err.str();
  if (!res.out.empty() && res.out.front() == '{') res.report = json::parse(res.out);
  return res;
}

}  // namespace

TEST_CASE("demo m2 reports the census and k0 of the crossed product") {
  CliResult r = run_cli({"demo", "--model", "m2"});
  CHECK(r.code == 0);
  REQUIRE(r.report.is_object());
  CHECK(r.report.at("exit_code").get<int>() == 0);
  const json& res = r.report.at("results");
  CHECK(res.at("crossed_dim").get<int>() == 8);
  CHECK(res.at("census").at("type2_split").get<int>() == 2);
  CHECK(res.at("census").at("type1").get<int>() == 0);
  CHECK(res.at("k0").at("free_rank").get<int>() == 2);
  CHECK(!r.err.empty());
}

TEST_CASE("report JSON round trips through the reader") {
  CliResult r = run_cli({"census", "--model", "circle-conj", "--n", "5"});
  REQUIRE(r.code == 0);
  z2cross::cli::Report rep = z2cross::cli::report_from_json(r.report);
  CHECK(z2cross::cli::to_json(rep) == r.report);
  CHECK(r.report.at("results").at("type1").get<int>() == 2);
  CHECK(r.report.at("results").at("type2_induced").get<int>() == 2);
}

TEST_CASE("odd flip model exits with the invalid-input code and message") {
  CliResult r = run_cli({"demo", "--model", "circle-flip", "--n", "5"});
  CHECK(r.code == 2);
  CHECK(r.report.at("exit_code").get<int>() == 2);
  CHECK(r.report.at("results").at("error").get<std::string>().find(
            "-1 is not an n-th root of unity") != std::string::npos);
  CHECK(r.err.find("-1 is not an n-th root of unity") != std::string::npos);
}

TEST_CASE("snf emits the decomposition with decimal-string entries") {
  CliResult r = run_cli({"snf", "--matrix", "[[2,4],[6,8]]"});
  CHECK(r.code == 0);
  const json& res = r.report.at("results");
  CHECK(res.at("d").at(0).at(0).get<std::string>() == "2");
  CHECK(res.at("d").at(1).at(1).get<std::string>() == "4");
  CHECK(res.at("checks").at("product_matches").get<bool>());
  CHECK(res.at("checks").at("divisibility_chain").get<bool>());
}

TEST_CASE("snf rejects malformed input") {
  CHECK(run_cli({"snf", "--matrix", "[[2,4],[6]]"}).code == 2);
  CHECK(run_cli({"snf"}).code == 2);
  CHECK(run_cli({"snf", "--matrix", "nonsense"}).code == 2);
}

TEST_CASE("lemma verification passes on a small suite") {
  CliResult r = run_cli({"verify", "--lemma", "central", "--trials", "4"});
  CHECK(r.code == 0);
  CHECK(r.report.at("results").at("undecided").get<int>() == 0);
  CHECK(r.report.at("results").at("pairs").get<int>() == 20);

  CliResult r2 = run_cli({"verify", "--lemma", "central2", "--trials", "4"});
  CHECK(r2.code == 0);
}

TEST_CASE("rep0 campaign runs through the cli") {
  CliResult r = run_cli({"verify", "--lemma", "rep0", "--trials", "3",
                         "--max-block", "2", "--seed", "11"});
  CHECK(r.code == 0);
  CHECK(r.report.at("seed").get<std::uint64_t>() == 11);
  CHECK(r.report.at("results").at("trials").get<int>() == 3);
}

TEST_CASE("unknown lemma and unknown subcommand exit with code 2") {
  CHECK(run_cli({"verify", "--lemma", "bogus"}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({}).code == 2);
}

TEST_CASE("help exits cleanly") {
  CliResult r = run_cli({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("verify") != std::string::npos);
}

TEST_CASE("fixture cases reproduce through the cli") {
  for (const char* id : {"alpha", "beta"}) {
    CAPTURE(id);
    CliResult r = run_cli({"paper", "--case", id});
    CHECK(r.code == 0);
    CHECK(r.report.at("results").at("k0").at("matches").get<bool>());
    CHECK(r.report.at("results").at("k1").at("matches").get<bool>());
  }
  CliResult r = run_cli({"paper", "--case", "alpha", "--fixtures",
                         Z2CROSS_FIXTURES_PATH});
  CHECK(r.code == 0);
  CHECK(run_cli({"paper", "--case", "delta"}).code == 2);
  CHECK(run_cli({"paper", "--case", "alpha", "--fixtures", "/missing.json"})
            .code == 2);
}

TEST_CASE("k0 reports the crossed product by default and the base on demand") {
  CliResult crossed = run_cli({"k0", "--model", "m2"});
  CHECK(crossed.code == 0);
  CHECK(crossed.report.at("results").at("k0").at("free_rank").get<int>() == 2);
  CHECK(crossed.report.at("results").at("of_crossed_product").get<bool>());

  CliResult base = run_cli({"k0", "--model", "m2", "--base"});
  CHECK(base.code == 0);
  CHECK(base.report.at("results").at("k0").at("free_rank").get<int>() == 1);
}

TEST_CASE("k0-map of the symmetry span is the all-ones matrix") {
  CliResult r = run_cli({"k0-map", "--model", "m2", "--map", "symmetry-span"});
  CHECK(r.code == 0);
  const json& m = r.report.at("results").at("matrix");
  REQUIRE(m.size() == 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(m.at(i).at(j).get<std::string>() == "1");
}

TEST_CASE("k0-map of the embedding has one row per crossed-product class") {
  CliResult r = run_cli({"k0-map", "--model", "circle-flip", "--n", "4"});
  CHECK(r.code == 0);
  CHECK(r.report.at("results").at("rows").get<int>() == 2);
  CHECK(r.report.at("results").at("cols").get<int>() == 4);
}

TEST_CASE("grading and crossed-product commands report structure") {
  CliResult g = run_cli({"grading", "--model", "m2"});
  CHECK(g.code == 0);
  CHECK(g.report.at("results").at("fixed_dim").get<int>() == 2);
  CHECK(g.report.at("results").at("odd_dim").get<int>() == 2);

  CliResult c = run_cli({"crossed-product", "--model", "circle-conj", "--n", "4"});
  CHECK(c.code == 0);
  CHECK(c.report.at("results").at("dimension_doubles").get<bool>());
  CHECK(c.report.at("results").at("symmetry_square_residual").get<double>() <
        1e-10);
}

TEST_CASE("classify and induce expose the per-class detail") {
  CliResult cls = run_cli({"classify", "--model", "circle-conj", "--n", "4"});
  CHECK(cls.code == 0);
  CHECK(cls.report.at("results").at("classes").size() == 5);

  CliResult ind = run_cli({"induce", "--model", "circle-conj", "--n", "4",
                           "--class-index", "1"});
  CHECK(ind.code == 0);
  CHECK(ind.report.at("results").at("induced_dim").get<int>() == 2);

  CliResult bad = run_cli({"induce", "--model", "circle-conj", "--n", "4",
                           "--class-index", "9"});
  CHECK(bad.code == 2);
}

TEST_CASE("a source is required and must be unique") {
  CHECK(run_cli({"classify"}).code == 2);
  CHECK(run_cli({"classify", "--model", "m2", "--input", "x.json"}).code == 2);
  CHECK(run_cli({"classify", "--model", "nosuch"}).code == 2);
  CHECK(run_cli({"classify", "--input", "/nonexistent.json"}).code == 2);
}

TEST_CASE("pushout-k consumes a file of groups and maps") {
  std::string path = "cli_pushout_input.json";
  {
    std::ofstream f(path);
    f << R"({"g1": {"free_rank": 1}, "g2": {"free_rank": 1},
             "gG": {"free_rank": 2}, "i1": [[1, 1]], "i2": [[1, 1]]})";
  }
  CliResult r = run_cli({"pushout-k", "--input", path});
  CHECK(r.code == 0);
  CHECK(r.report.at("results").at("group").at("free_rank").get<int>() == 1);
  std::remove(path.c_str());

  CHECK(run_cli({"pushout-k"}).code == 2);
  CHECK(run_cli({"pushout-k", "--input", "/missing.json"}).code == 2);
}

TEST_CASE("every report carries the tolerance block and the command echo") {
  CliResult r = run_cli({"census", "--model", "m2"});
  CHECK(r.report.at("tolerance").at("abs").get<double>() == 1e-10);
  CHECK(r.report.at("tolerance").at("rel").get<double>() == 1e-8);
  CHECK(r.report.at("command").get<std::string>() == "census --model m2");
  CHECK(!r.report.at("paper_anchor").get<std::string>().empty());
}
