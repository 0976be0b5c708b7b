// Command-line driver: dispatches subcommands, emits one JSON report on
// standard output and a short human summary on standard error.
// Exit codes: 0 success, 2 invalid input, 3 tolerance failure,
// 4 property violation.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "json.hpp"

namespace z2cross::cli {

struct Report {
  std::string command;
  std::uint64_t seed = 0;
  double abs_tol = 0.0;
  double rel_tol = 0.0;
  std::string paper_anchor;
  nlohmann::json results;
  int exit_code = 0;
};

nlohmann::json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace z2cross::cli
