#include "levilift/serialization.hpp"

namespace levilift {

namespace {

[[noreturn]] void shape_error(const std::string& path, const std::string& msg) { throw InputError(path + ": " + msg); }

}  // namespace

Json rational_to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const InputError& e) {
      shape_error(path, e.what());
    }
  }
  shape_error(path, "expected a rational as \"a/b\" or an integer");
}

Json element_to_json(const FieldElement& x) {
  Json j;
  j["val"] = x.val().str();
  Json digits = Json::array();
  if (!x.is_zero()) {
    for (const auto& d : x.digits()) digits.push_back(d);
  }
  j["digits"] = digits;
  return j;
}

FieldElement element_from_json(const FieldPtr& field, const Json& j, const std::string& path) {
  if (j.is_string() || j.is_number_integer()) return FieldElement::from_rational(field, rational_from_json(j, path));
  if (!j.is_object()) shape_error(path, "expected a field element object");
  if (!j.contains("val")) shape_error(path, "missing \"val\"");
  if (j["val"].is_string() && j["val"].get<std::string>() == "inf") return FieldElement::zero(field);
  Rational v = rational_from_json(j["val"], path + ".val");
  if (!j.contains("digits") || !j["digits"].is_array()) shape_error(path, "missing \"digits\" array");
  std::vector<ResidueElem> digits;
  size_t i = 0;
  for (const auto& d : j["digits"]) {
    const std::string dp = path + ".digits[" + std::to_string(i++) + "]";
    if (!d.is_array() || d.size() != static_cast<size_t>(field->f())) {
      shape_error(dp, "expected " + std::to_string(field->f()) + " residue coefficients");
    }
    ResidueElem r;
    for (const auto& c : d) {
      if (!c.is_number_integer()) shape_error(dp, "residue coefficients must be integers");
      r.push_back(c.get<long>());
    }
    digits.push_back(std::move(r));
  }
  try {
    return FieldElement::from_digits(field, v, digits);
  } catch (const InputError& e) {
    shape_error(path, e.what());
  }
}

Json dual_to_json(const DualElement& X) {
  Json a = Json::array();
  for (const auto& c : X.coords()) a.push_back(element_to_json(c));
  return a;
}

DualElement dual_from_json(const FramePtr& frame, Side side, const Json& j, const std::string& path) {
  const size_t want = side == Side::G ? static_cast<size_t>(frame->n()) : static_cast<size_t>(frame->fixed_dim());
  if (!j.is_array() || j.size() != want) {
    shape_error(path, "expected " + std::to_string(want) + " coordinates on the " + side_name(side) + " side");
  }
  std::vector<FieldElement> c;
  for (size_t k = 0; k < j.size(); ++k) {
    c.push_back(element_from_json(frame->field(), j[k], path + "[" + std::to_string(k) + "]"));
  }
  return DualElement(frame, side, std::move(c));
}

Json partition_to_json(const Partition& p) {
  Json a = Json::array();
  for (const auto& b : p) a.push_back(b);
  return a;
}

Partition partition_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) shape_error(path, "expected a list of index lists");
  Partition p;
  for (size_t i = 0; i < j.size(); ++i) {
    const auto& b = j[i];
    if (!b.is_array()) shape_error(path + "[" + std::to_string(i) + "]", "expected an index list");
    std::vector<int> block;
    for (const auto& x : b) {
      if (!x.is_number_integer()) shape_error(path + "[" + std::to_string(i) + "]", "indices must be integers");
      block.push_back(x.get<int>());
    }
    p.push_back(std::move(block));
  }
  return p;
}

Json levi_to_json(const TwistedLevi& L) {
  Json j;
  j["name"] = L.name();
  j["side"] = side_name(L.side());
  if (L.side() == Side::G) {
    j["partition"] = partition_to_json(L.partition());
  } else {
    Json roots = Json::array();
    for (const auto& r : L.roots()) roots.push_back(r);
    j["roots"] = roots;
  }
  return j;
}

Json character_to_json(const QuasiCharacter& chi) {
  Json j;
  j["domain"] = chi.domain().name();
  Json levels = Json::array();
  for (const auto& lv : chi.levels()) {
    levels.push_back(Json{{"depth", rational_to_json(lv.depth)}, {"realizer", dual_to_json(lv.realizer)}});
  }
  j["levels"] = levels;
  Json tail = Json::object();
  for (const auto& [k, v] : chi.tail()) tail[k] = v;
  j["tail"] = tail;
  return j;
}

Json datum_to_json(const CharacterDatum& sigma) {
  Json j;
  j["side"] = side_name(sigma.side);
  Json levis = Json::array();
  for (const auto& L : sigma.levis) levis.push_back(levi_to_json(L));
  j["levis"] = levis;
  j["point"] = sigma.point;
  Json depths = Json::array();
  for (const auto& r : sigma.depths) depths.push_back(rational_to_json(r));
  j["depths"] = depths;
  Json chars = Json::array();
  for (const auto& c : sigma.chars) chars.push_back(character_to_json(c));
  j["chars"] = chars;
  return j;
}

Json validation_to_json(const ValidationReport& rep) {
  Json a = Json::array();
  for (const auto& c : rep.conditions) a.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"messages", c.messages}});
  return Json{{"pass", rep.ok()}, {"conditions", a}};
}

Json stability_to_json(const StabilityReport& rep) {
  Json j{{"pass", rep.stable}, {"point", rep.point_asserted ? "asserted" : "unchecked"}};
  if (rep.witness) {
    j["witness"] = Json{{"index", rep.witness->index},
                        {"generator", rep.witness->generator},
                        {"kind", rep.witness->kind},
                        {"levi", rep.witness->levi},
                        {"detail", rep.witness->detail}};
  }
  return j;
}

Json refactorization_to_json(const RefactorizationReport& rep) {
  Json j{{"pass", rep.ok}, {"message", rep.message}};
  if (rep.failing_index >= 0) j["failing_index"] = rep.failing_index;
  return j;
}

Json step_to_json(const StepRecord& s) {
  return Json{{"index", s.index},
              {"case", s.case_label},
              {"source", s.source},
              {"M", s.M.name()},
              {"M_prime", s.M_prime.name()},
              {"x_sharp", dual_to_json(s.x_sharp)},
              {"phi", character_to_json(s.phi)},
              {"t", rational_to_json(s.t)},
              {"t_next", rational_to_json(s.t_next)}};
}

Json lift_to_json(const LiftResult& res) {
  Json steps = Json::array();
  for (const auto& s : res.steps) steps.push_back(step_to_json(s));
  return Json{{"sigma", datum_to_json(res.sigma)},
              {"correction", character_to_json(res.correction)},
              {"steps", steps},
              {"step_bound", res.step_bound},
              {"product_identity", res.product_identity}};
}

}  // namespace levilift
