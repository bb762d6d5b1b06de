#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "levilift/scenario.hpp"

namespace levilift {

struct CommandOptions {
  std::string command;
  std::string scenario_path;
  std::optional<Rational> target_depth;
  std::optional<std::string> strategy_path;
  std::optional<long> samples;
  std::optional<std::uint64_t> seed;
  std::string output = "json";
  std::optional<int> precision;  // LEVILIFT_PRECISION
};

struct CommandResult {
  int exit_code = 0;
  Json report;
};

const std::vector<std::string>& command_names();

// Runs one command; never throws for input, precision or mathematical errors.
CommandResult run_command(const CommandOptions& opts);
// Same, on an already loaded scenario.
CommandResult run_command(const CommandOptions& opts, const Scenario& sc);

std::string render_text(const Json& report);

}  // namespace levilift
