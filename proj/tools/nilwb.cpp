#include <iostream>

#include "CLI11.hpp"
#include "nilwb/workbench.hpp"

int main(int argc, char** argv) {
  using namespace nilwb;
  CLI::App app{"Nilmanifold cohomology and metric workbench"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  RunConfig cfg;
  std::vector<std::string> h_text;
  std::string grid_text, lambda_text = "2";

  auto common = [&](CLI::App* sub, const std::string& what) {
    sub->add_option("path", cfg.path, what)->required();
    sub->add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--out", cfg.out, "write the report to this file");
    sub->add_option("--seed", cfg.seed, "solver seed");
    sub->add_option("--restarts", cfg.restarts, "solver restarts")->check(CLI::PositiveNumber);
    sub->add_option("--rationalize-bound", cfg.rationalize_bound, "denominator bound for witnesses")
        ->check(CLI::PositiveNumber);
    sub->add_option("--h", h_text, "nonzero rational h (repeatable)");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "cohomology, properties and feasibility of a model");
  common(analyze, "model file");
  analyze->add_option("--k", cfg.k_values, "degree (repeatable)");

  CLI::App* identities = app.add_subcommand("identities", "verify operator identities for a metric");
  common(identities, "model file");
  identities->add_option("--metric", cfg.metric, "identity, or a model file with a metric block");
  identities->add_option("--identity", cfg.identities, "identity name (repeatable)");
  identities->add_option("--expect-violation", cfg.expect_violation, "identity asserted to fail (repeatable)");
  identities->add_option("--lambda", lambda_text, "rescaling factor");

  CLI::App* sweep = app.add_subcommand("sweep", "scan a deformation family");
  common(sweep, "family file");
  sweep->add_option("--grid", grid_text, "step:count");
  sweep->add_option("--metric", cfg.metric, "metric for --section");
  sweep->add_flag("--section", cfg.section, "also build the class section for the metric");
  sweep->add_flag("--skip-pin-check", cfg.skip_pin_check, "allow a drifting structure");

  CLI::App* cones = app.add_subcommand("cones", "E2sG cones and j_omega for a model");
  common(cones, "model file");
  cones->add_option("--metric", cfg.metric, "identity, or a model file with a metric block");

  CLI::App* report = app.add_subcommand("report", "summary over a directory of models");
  common(report, "model file or directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : ExitUsage;
  }
  try {
    for (const auto& s : h_text) cfg.h_values.push_back(rational_from_string(s));
    cfg.lambda = rational_from_string(lambda_text);
    if (!grid_text.empty()) cfg.grid = parse_grid(grid_text);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitUsage;
  }
  for (CLI::App* sub : app.get_subcommands()) cfg.command = sub->get_name();

  std::string out, err;
  int rc = run_command(cfg, out, err);
  std::cout << out;
  std::cerr << err;
  return rc;
}
