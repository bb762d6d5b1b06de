#include <CLI11.hpp>
#include <iostream>

#include "levilift/commands.hpp"

int main(int argc, char** argv) {
  using namespace levilift;
  CLI::App app{"Lift fixed-point character data to Gamma-stable character data and verify the result."};
  std::string command;
  std::string target_depth;
  CommandOptions opts;
  long samples = 0;
  std::uint64_t seed = 0;
  std::string strategy;
  app.add_option("command", command, "validate | lift | lift-single | restrict | roundtrip | check-refactor | eval-theta")
      ->required()
      ->check(CLI::IsMember(command_names()));
  app.add_option("--scenario", opts.scenario_path, "Scenario JSON file")->required();
  auto* td = app.add_option("--target-depth", target_depth, "Target depth s for single-character lifting, as a/b");
  auto* st = app.add_option("--strategy", strategy, "JSON file of per-step overrides");
  auto* sm = app.add_option("--samples", samples, "Number of theta test arguments")->check(CLI::PositiveNumber);
  auto* sd = app.add_option("--seed", seed, "Seed for test-argument sampling");
  app.add_option("--output", opts.output, "Report format")->check(CLI::IsMember({"json", "text"}));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  opts.command = command;
  try {
    if (*td) opts.target_depth = parse_rational(target_depth);
    opts.precision = precision_from_env();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (*st) opts.strategy_path = strategy;
  if (*sm) opts.samples = samples;
  if (*sd) opts.seed = seed;

  CommandResult res = run_command(opts);
  if (opts.output == "text") {
    std::cout << render_text(res.report);
  } else {
    std::cout << res.report.dump(2) << "\n";
  }
  return res.exit_code;
}
