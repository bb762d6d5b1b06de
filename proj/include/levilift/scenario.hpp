#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "levilift/serialization.hpp"

namespace levilift {

struct ScenarioOptions {
  std::optional<Rational> target_depth;
  long samples = 200;
  std::uint64_t seed = 1;
};

struct Scenario {
  std::string name;
  std::string description;
  FieldPtr field;
  FramePtr frame;
  LeviCatalog h_levis;  // named H-side Levis, including "H" and "S"
  std::optional<CharacterDatum> datum;
  std::optional<CharacterDatum> datum2;
  ScenarioOptions options;
  Json expect = Json::object();
  // Realizer coordinates replaced by their Galois or Gamma average during loading.
  std::vector<std::string> snapped;

  std::optional<CharacterDatum> first_on(Side side) const;
};

// precision_override (from LEVILIFT_PRECISION) wins over the scenario's own setting.
Scenario load_scenario(const std::string& path, std::optional<int> precision_override = std::nullopt);
Scenario parse_scenario(const Json& j, std::optional<int> precision_override = std::nullopt);
// Reads a JSON document and reports syntax errors with line and column.
Json read_json_file(const std::string& path);

std::vector<ScriptedOverride> load_strategy(const std::string& path, const Scenario& sc);
std::vector<ScriptedOverride> parse_strategy(const Json& j, const Scenario& sc);

std::optional<int> precision_from_env();

}  // namespace levilift
