#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nilwb/deformation.hpp"

namespace nilwb {

enum ExitCode { ExitOk = 0, ExitUsage = 1, ExitFalsified = 2 };

struct RunConfig {
  std::string command;       // analyze | identities | sweep | cones | report
  std::string path;          // model, family, or directory of models
  std::vector<Rational> h_values;  // empty means {1}, or {2} for identities
  std::vector<int> k_values;       // empty means every degree
  std::string metric;        // "" (model block, else identity), "identity", or a model file with a metric block
  GridSpec grid;
  std::uint64_t seed = 0;
  std::string format = "json";  // json | text
  std::string out;              // empty means stdout
  int restarts = 64;
  long rationalize_bound = 1000000;
  std::vector<std::string> identities;        // empty means all
  std::vector<std::string> expect_violation;  // identities asserted to have a nonzero residual
  Rational lambda{2};
  bool skip_pin_check = false;  // test hook for families whose structure drifts
  bool section = false;         // sweep: also build the section for the chosen metric
};

struct CommandResult {
  int exit_code = ExitOk;
  Json report;
  std::vector<std::string> falsified;  // violated invariants with witnesses
};

CommandResult cmd_analyze(const RunConfig& cfg);
CommandResult cmd_identities(const RunConfig& cfg);
CommandResult cmd_sweep(const RunConfig& cfg);
CommandResult cmd_cones(const RunConfig& cfg);
CommandResult cmd_report(const RunConfig& cfg);

// Dispatches, renders in the requested format and writes to cfg.out or `stdout_text`.
// Errors from parsing or I/O yield exit code 1 with the message in `error_text`.
int run_command(const RunConfig& cfg, std::string& stdout_text, std::string& error_text);

std::string render_text(const Json& j);

}  // namespace nilwb
