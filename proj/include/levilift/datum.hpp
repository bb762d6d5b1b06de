#pragma once

#include <optional>
#include <string>
#include <vector>

#include "levilift/characters.hpp"

namespace levilift {

// (levis, point, depths, chars): levis has one more entry than depths, the last being the ambient group.
struct CharacterDatum {
  Side side = Side::G;
  std::vector<TwistedLevi> levis;
  std::string point = "standard";
  std::vector<Rational> depths;
  std::vector<QuasiCharacter> chars;

  size_t length() const { return depths.size(); }
  const TwistedLevi& ambient() const { return levis.back(); }
};

struct ConditionResult {
  std::string name;
  bool pass = true;
  std::vector<std::string> messages;
};

struct ValidationReport {
  std::vector<ConditionResult> conditions;
  bool ok() const;
};

// Ambient defaults to G, or to the fixed points of G for an H-side datum.
ValidationReport validate_datum(const CharacterDatum& sigma, const TwistedLevi* ambient = nullptr);

struct StabilityWitness {
  int index = -1;
  int generator = -1;
  std::string kind;  // "levi" or "realizer"
  std::string levi;
  std::string detail;
};

struct StabilityReport {
  bool stable = true;
  bool point_asserted = true;
  std::optional<StabilityWitness> witness;
};

StabilityReport check_gamma_stable(const CharacterDatum& sigma);

// Named H-side Levis used to label restricted data.
using LeviCatalog = std::vector<TwistedLevi>;
std::string catalog_name(const LeviCatalog& catalog, const TwistedLevi& L);

CharacterDatum restrict_datum(const CharacterDatum& sigma, const LeviCatalog& catalog);

struct RefactorizationReport {
  bool ok = true;
  int failing_index = -1;
  std::string message;
};

RefactorizationReport check_refactorization(const CharacterDatum& sigma, const CharacterDatum& other);

// Symbolic K^+ = G^0_{y,0+} G^1_{y,s_0+} ... and the summands of theta.
struct GroupFactor {
  TwistedLevi levi;
  Rational depth_bound;
};
struct ThetaSummand {
  QuasiCharacter chi;
  Rational level;
};
std::vector<GroupFactor> group_descriptor(const CharacterDatum& sigma);
std::vector<ThetaSummand> theta_descriptor(const CharacterDatum& sigma);

// theta_Sigma at a torus argument u in Lie(G^k) of depth d; needs d > s_{k-1} and d > s_i for i >= k.
CharValue theta_evaluate(const CharacterDatum& sigma, const DualElement& u, int k);

}  // namespace levilift
