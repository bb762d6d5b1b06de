#pragma once

#include <optional>
#include <string>
#include <vector>

#include "levilift/datum.hpp"

namespace levilift {

// Audit record of one sharp/flat step.
struct StepRecord {
  int index = 0;
  std::string case_label;  // "a" on the first step of a run, "b" afterwards
  std::string source;      // "canonical", "replay" or "scripted"
  TwistedLevi M;           // Levi the step decomposes in
  TwistedLevi M_prime;     // Cent_M(X_sharp)
  DualElement x_sharp;
  QuasiCharacter phi;      // phi' on M_prime
  Rational t;              // residual depth before the step
  QuasiCharacter tau_next;
  Rational t_next;
};

struct ScriptedOverride {
  int step = 0;
  std::optional<DualElement> x_sharp;
  std::optional<std::vector<Level>> phi_levels;
};

struct ChoiceStrategy {
  enum class Mode { Canonical, Replay, Scripted };
  Mode mode = Mode::Canonical;
  std::optional<CharacterDatum> replay_target;
  std::vector<ScriptedOverride> overrides;

  static ChoiceStrategy canonical() { return {}; }
  static ChoiceStrategy replay(CharacterDatum target);
  static ChoiceStrategy scripted(std::vector<ScriptedOverride> overrides);
  std::string mode_name() const;
};

struct LiftResult {
  CharacterDatum sigma;
  QuasiCharacter correction;
  std::vector<StepRecord> steps;
  bool product_identity = false;
  long step_bound = 0;
};

struct SingleStepResult {
  TwistedLevi M_prime;
  DualElement x_sharp;
  DualElement x_flat;
  QuasiCharacter phi;
  QuasiCharacter tau_next;
  Rational t_next;
  std::string source;
};

// Mutable lifting context: strategy plus the global step counter used by scripted overrides.
class LiftContext {
 public:
  explicit LiftContext(ChoiceStrategy strategy, LeviCatalog catalog = {});
  const ChoiceStrategy& strategy() const { return strategy_; }
  const LeviCatalog& catalog() const { return catalog_; }
  int next_step() { return step_counter_++; }

 private:
  ChoiceStrategy strategy_;
  LeviCatalog catalog_;
  int step_counter_ = 0;
};

// A fixed choice of X_sharp and/or phi' for one step; empty fields fall back to the canonical choice.
struct StepChoice {
  std::optional<DualElement> x_sharp;
  std::optional<QuasiCharacter> phi;
  std::optional<std::vector<Level>> phi_levels;
  std::string source = "canonical";
};

// One application of the sharp/flat construction to the residual tau (H side, depth t) inside M.
SingleStepResult single_step(const TwistedLevi& M, const QuasiCharacter& tau, const StepChoice& choice = {});

// Lifts xi (H side, domain H', depth t, generic for h_ambient) above depth s inside g_ambient.
LiftResult lift_single(const QuasiCharacter& xi, const TwistedLevi& h_ambient, const TwistedLevi& g_ambient,
                       const Rational& s, LiftContext& ctx);

struct DatumLiftResult {
  LiftResult lift;
  std::vector<LiftResult> runs;  // per index j, in processing order n..0
  ValidationReport validation;
  StabilityReport stability;
  CharacterDatum restricted;
  RefactorizationReport refactorization;
  bool ok() const { return validation.ok() && stability.stable && refactorization.ok && lift.product_identity; }
};

DatumLiftResult lift_datum(const CharacterDatum& delta, const FramePtr& frame, LiftContext& ctx);

// Negative control: lifts every entry inside the full group without correction folding.
struct NaiveLiftResult {
  std::vector<LiftResult> runs;
  std::vector<TwistedLevi> levis;
  bool chain = true;
  std::optional<std::pair<TwistedLevi, TwistedLevi>> incomparable;
};
NaiveLiftResult naive_lift(const CharacterDatum& delta, const FramePtr& frame, const LeviCatalog& catalog);

struct RoundtripResult {
  bool ok = false;
  CharacterDatum restricted;
  DatumLiftResult lifted;
  std::string message;
};
RoundtripResult replay_roundtrip(const CharacterDatum& sigma, const LeviCatalog& catalog);

bool data_equal(const CharacterDatum& a, const CharacterDatum& b);

}  // namespace levilift
