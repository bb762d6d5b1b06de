#pragma once

#include <json.hpp>
#include <string>

#include "levilift/lifting.hpp"

namespace levilift {

using Json = nlohmann::json;

Json rational_to_json(const Rational& r);
// Accepts "a/b" strings and JSON integers.
Rational rational_from_json(const Json& j, const std::string& path);

// {"val": "a/b", "digits": [[c_0..c_{f-1}], ...]}; zero is {"val": "inf", "digits": []}.
Json element_to_json(const FieldElement& x);
// Also accepts a rational ("1/25" or an integer) for base-field constants.
FieldElement element_from_json(const FieldPtr& field, const Json& j, const std::string& path);

Json dual_to_json(const DualElement& X);
DualElement dual_from_json(const FramePtr& frame, Side side, const Json& j, const std::string& path);

Json partition_to_json(const Partition& p);
Partition partition_from_json(const Json& j, const std::string& path);
Json levi_to_json(const TwistedLevi& L);
Json character_to_json(const QuasiCharacter& chi);
Json datum_to_json(const CharacterDatum& sigma);

Json validation_to_json(const ValidationReport& rep);
Json stability_to_json(const StabilityReport& rep);
Json refactorization_to_json(const RefactorizationReport& rep);
Json step_to_json(const StepRecord& step);
Json lift_to_json(const LiftResult& res);

}  // namespace levilift
