#include "levilift/scenario.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "levilift/sampling.hpp"

namespace levilift {

namespace {

[[noreturn]] void shape_error(const std::string& path, const std::string& msg) { throw InputError(path + ": " + msg); }

const Json& require(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) shape_error(path, "missing \"" + key + "\"");
  return j[key];
}

std::vector<int> int_list(const Json& j, const std::string& path) {
  if (!j.is_array()) shape_error(path, "expected a list of integers");
  std::vector<int> out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) shape_error(path, "expected integers");
    out.push_back(x.get<int>());
  }
  return out;
}

long int_field(const Json& j, const std::string& key, long dflt, const std::string& path) {
  if (!j.contains(key)) return dflt;
  if (!j[key].is_number_integer()) shape_error(path + "." + key, "expected an integer");
  return j[key].get<long>();
}

FieldDesc parse_field(const Json& j, const std::string& path) {
  if (!j.is_object()) shape_error(path, "expected an object");
  FieldDesc d;
  d.p = int_field(j, "p", 0, path);
  if (!j.contains("p")) shape_error(path, "missing \"p\"");
  d.f = static_cast<int>(int_field(j, "f", 1, path));
  d.e = static_cast<int>(int_field(j, "e", 1, path));
  d.precision = static_cast<int>(int_field(j, "precision", d.precision, path));
  if (j.contains("residue_modulus")) {
    d.residue_modulus.clear();
    for (int c : int_list(j["residue_modulus"], path + ".residue_modulus")) d.residue_modulus.push_back(c);
  } else if (d.f != 1) {
    shape_error(path, "\"residue_modulus\" is required when f > 1");
  }
  return d;
}

FramePtr parse_frame(const FieldPtr& field, const Json& j, const std::string& path) {
  if (!j.is_object()) shape_error(path, "expected an object");
  const int n = static_cast<int>(int_field(j, "n", 0, path));
  std::vector<int> frob, ram;
  if (j.contains("galois")) {
    const auto& g = j["galois"];
    if (g.contains("frobenius")) frob = int_list(g["frobenius"], path + ".galois.frobenius");
    if (g.contains("ramification")) ram = int_list(g["ramification"], path + ".galois.ramification");
  }
  std::vector<GammaElement> gens;
  if (j.contains("gamma")) {
    const auto& ga = j["gamma"];
    if (!ga.is_array()) shape_error(path + ".gamma", "expected a list of generators");
    for (size_t i = 0; i < ga.size(); ++i) {
      const std::string gp = path + ".gamma[" + std::to_string(i) + "]";
      GammaElement g;
      g.perm = int_list(require(ga[i], "perm", gp), gp + ".perm");
      g.sign = static_cast<int>(int_field(ga[i], "sign", 1, gp));
      if (ga[i].contains("galois")) {
        auto gv = int_list(ga[i]["galois"], gp + ".galois");
        if (gv.size() != 2) shape_error(gp + ".galois", "expected [frobenius power, ramification twist]");
        g.galois = GaloisElement{gv[0], gv[1]};
      }
      if (ga[i].contains("inner")) g.inner = int_list(ga[i]["inner"], gp + ".inner");
      gens.push_back(std::move(g));
    }
  }
  try {
    return TorusFrame::create(field, n, frob, ram, gens);
  } catch (const InputError& e) {
    shape_error(path, e.what());
  }
}

RootSet parse_roots(const FramePtr& frame, const Json& j, const std::string& path) {
  if (!j.is_array()) shape_error(path, "expected a list of restricted roots");
  RootSet out;
  for (size_t i = 0; i < j.size(); ++i) {
    const std::string rp = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != static_cast<size_t>(frame->fixed_dim())) {
      shape_error(rp, "a restricted root has " + std::to_string(frame->fixed_dim()) + " coordinates");
    }
    RootVec r;
    for (const auto& x : j[i]) {
      if (!x.is_number_integer()) shape_error(rp, "root coordinates must be integers");
      r.push_back(x.get<long>());
    }
    out.insert(r);
  }
  return out;
}

TwistedLevi parse_h_descriptor(const FramePtr& frame, const Json& j, const std::string& path) {
  std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "";
  std::optional<RootSet> roots;
  std::optional<RootSet> fixed;
  if (j.contains("roots")) roots = parse_roots(frame, j["roots"], path + ".roots");
  if (j.contains("fixed_of")) {
    TwistedLevi L;
    try {
      L = TwistedLevi::from_partition(frame, partition_from_json(j["fixed_of"], path + ".fixed_of"));
    } catch (const InputError& e) {
      shape_error(path + ".fixed_of", e.what());
    }
    if (!L.is_gamma_stable()) shape_error(path + ".fixed_of", "partition is not Gamma-stable");
    fixed = fixed_point_restricted_roots(L);
  }
  if (!roots && !fixed) shape_error(path, "an H-side Levi needs \"roots\" or \"fixed_of\"");
  if (roots && fixed && *roots != *fixed) {
    shape_error(path, "\"roots\" disagree with the fixed points of \"fixed_of\"");
  }
  return TwistedLevi::from_roots(frame, Side::H, roots ? *roots : *fixed, name);
}

struct Loader {
  Scenario& sc;
  TwistedLevi G;

  TwistedLevi levi_ref(Side side, const Json& j, const std::string& path) const {
    if (side == Side::H) {
      if (j.is_string()) {
        for (const auto& L : sc.h_levis) {
          if (L.name() == j.get<std::string>()) return L;
        }
        shape_error(path, "unknown H-side Levi \"" + j.get<std::string>() + "\"");
      }
      if (j.is_object()) return parse_h_descriptor(sc.frame, j, path);
      shape_error(path, "expected an H-side Levi name or descriptor");
    }
    if (j.is_string()) {
      const std::string s = j.get<std::string>();
      if (s == "G") return TwistedLevi::full(sc.frame);
      if (s == "T") return TwistedLevi::torus(sc.frame, Side::G);
      shape_error(path, "G-side Levis are \"G\", \"T\" or a partition");
    }
    const Json& pj = j.is_object() ? require(j, "partition", path) : j;
    try {
      std::string name = j.is_object() && j.contains("name") ? j["name"].get<std::string>() : "";
      return TwistedLevi::from_partition(sc.frame, partition_from_json(pj, path), name);
    } catch (const InputError& e) {
      shape_error(path, e.what());
    }
  }

  // Replaces X by its Galois (and on the G side Gamma) average when they agree inside the precision window.
  DualElement snap(const DualElement& X, const std::string& path) const {
    if (X.is_zero()) return X;
    const Rational window = X.min_val().value() + Rational(sc.field->precision(), sc.field->e());
    auto close = [&](const DualElement& a, const DualElement& b) {
      bool lost = false;
      DualElement d = loose_sum(a, -b, lost);
      return lost || (!d.is_zero() && !(d.min_val().value() < window));
    };
    DualElement G_side = X.side() == Side::G ? X : lift_from_fixed(X);
    DualElement out = G_side;
    std::vector<DualElement> conj;
    const auto& F = sc.field;
    for (const auto& g : F->galois_group()) {
      auto perm = sc.frame->galois_perm(g);
      std::vector<FieldElement> c(out.size(), FieldElement::zero(F));
      for (size_t k = 0; k < out.size(); ++k) c[static_cast<size_t>(perm[k])] = out[k].galois(g);
      conj.emplace_back(sc.frame, Side::G, std::move(c));
    }
    DualElement avg = loose_average(conj);
    if (close(out, avg)) {
      out = avg;
      sc.snapped.push_back(path + " (Galois)");
    }
    if (X.side() == Side::G) {
      std::vector<DualElement> images;
      for (const auto& g : sc.frame->gamma_elements()) images.push_back(act_gamma(g, out));
      DualElement ga = loose_average(images);
      if (close(out, ga)) {
        out = ga;
        sc.snapped.push_back(path + " (Gamma)");
      }
      return out;
    }
    return is_gamma_fixed(out) ? project_to_fixed(out) : X;
  }

  // Coordinatewise sum; a coordinate that cancels beyond the stored window becomes zero.
  static DualElement loose_sum(const DualElement& a, const DualElement& b, bool& lost) {
    std::vector<FieldElement> c;
    for (size_t k = 0; k < a.size(); ++k) {
      try {
        c.push_back(a[k] + b[k]);
      } catch (const PrecisionError&) {
        c.push_back(FieldElement::zero(a.frame()->field()));
        lost = true;
      }
    }
    return DualElement(a.frame(), a.side(), std::move(c));
  }

  static DualElement loose_average(const std::vector<DualElement>& xs) {
    bool lost = false;
    DualElement sum = xs.front();
    for (size_t i = 1; i < xs.size(); ++i) sum = loose_sum(sum, xs[i], lost);
    return sum.scaled(Rational(1, static_cast<long>(xs.size())));
  }

  QuasiCharacter character(const TwistedLevi& domain, const Json& j, const std::string& path) const {
    if (!j.is_object()) shape_error(path, "expected a character object");
    std::vector<Level> levels;
    if (j.contains("levels")) {
      const auto& lv = j["levels"];
      if (!lv.is_array()) shape_error(path + ".levels", "expected a list");
      for (size_t i = 0; i < lv.size(); ++i) {
        const std::string lp = path + ".levels[" + std::to_string(i) + "]";
        Rational d = rational_from_json(require(lv[i], "depth", lp), lp + ".depth");
        DualElement X = dual_from_json(sc.frame, domain.side(), require(lv[i], "realizer", lp), lp + ".realizer");
        levels.push_back(Level{d, snap(X, lp + ".realizer")});
      }
    }
    Tail tail;
    if (j.contains("tail")) {
      if (!j["tail"].is_object()) shape_error(path + ".tail", "expected an object of symbol coefficients");
      for (const auto& [k, v] : j["tail"].items()) {
        if (!v.is_number_integer()) shape_error(path + ".tail." + k, "expected an integer");
        if (v.get<long long>() != 0) tail[k] = v.get<long long>();
      }
    }
    try {
      return QuasiCharacter::make(domain, levels, tail);
    } catch (const InputError& e) {
      shape_error(path, e.what());
    }
  }

  CharacterDatum datum(const Json& j, const std::string& path) const {
    if (!j.is_object()) shape_error(path, "expected a datum object");
    CharacterDatum d;
    const std::string side = require(j, "side", path).is_string() ? j["side"].get<std::string>() : "";
    if (side == "G") {
      d.side = Side::G;
    } else if (side == "H") {
      d.side = Side::H;
    } else {
      shape_error(path + ".side", "expected \"G\" or \"H\"");
    }
    const auto& lv = require(j, "levis", path);
    if (!lv.is_array()) shape_error(path + ".levis", "expected a list");
    for (size_t i = 0; i < lv.size(); ++i) d.levis.push_back(levi_ref(d.side, lv[i], path + ".levis[" + std::to_string(i) + "]"));
    if (j.contains("point")) {
      if (!j["point"].is_string()) shape_error(path + ".point", "expected a string");
      d.point = j["point"].get<std::string>();
    }
    const auto& dp = require(j, "depths", path);
    if (!dp.is_array()) shape_error(path + ".depths", "expected a list");
    for (size_t i = 0; i < dp.size(); ++i) d.depths.push_back(rational_from_json(dp[i], path + ".depths[" + std::to_string(i) + "]"));
    const auto& ch = require(j, "chars", path);
    if (!ch.is_array()) shape_error(path + ".chars", "expected a list");
    if (ch.size() + 1 != d.levis.size()) shape_error(path, "need exactly one character per Levi except the last");
    for (size_t i = 0; i < ch.size(); ++i) d.chars.push_back(character(d.levis[i], ch[i], path + ".chars[" + std::to_string(i) + "]"));
    return d;
  }
};

}  // namespace

std::optional<CharacterDatum> Scenario::first_on(Side side) const {
  if (datum && datum->side == side) return datum;
  if (datum2 && datum2->side == side) return datum2;
  return std::nullopt;
}

std::optional<int> precision_from_env() {
  const char* v = std::getenv("LEVILIFT_PRECISION");
  if (v == nullptr || *v == '\0') return std::nullopt;
  char* end = nullptr;
  long p = std::strtol(v, &end, 10);
  if (*end != '\0' || p < 2 || p > 4096) throw InputError("LEVILIFT_PRECISION must be an integer in [2, 4096]");
  return static_cast<int>(p);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    size_t line = 1, col = 1;
    for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": JSON syntax error");
  }
}

Scenario parse_scenario(const Json& j, std::optional<int> precision_override) {
  if (!j.is_object()) throw InputError("scenario: expected a JSON object");
  Scenario sc;
  sc.name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "unnamed";
  if (j.contains("description") && j["description"].is_string()) sc.description = j["description"].get<std::string>();
  FieldDesc fd = parse_field(require(j, "field", "scenario"), "field");
  const Json opts = j.contains("options") ? j["options"] : Json::object();
  if (!opts.is_object()) shape_error("options", "expected an object");
  if (opts.contains("precision")) fd.precision = static_cast<int>(int_field(opts, "precision", fd.precision, "options"));
  if (precision_override) fd.precision = *precision_override;
  try {
    sc.field = Field::create(fd);
  } catch (const InputError& e) {
    shape_error("field", e.what());
  }
  sc.frame = parse_frame(sc.field, require(j, "frame", "scenario"), "frame");

  const TwistedLevi G = TwistedLevi::full(sc.frame);
  if (j.contains("h_side")) {
    const auto& hs = j["h_side"];
    if (!hs.is_array()) shape_error("h_side", "expected a list of descriptors");
    for (size_t i = 0; i < hs.size(); ++i) {
      const std::string hp = "h_side[" + std::to_string(i) + "]";
      TwistedLevi L = parse_h_descriptor(sc.frame, hs[i], hp);
      if (L.name().empty()) shape_error(hp, "H-side Levis need a name");
      for (const auto& other : sc.h_levis) {
        if (other.name() == L.name()) shape_error(hp, "duplicate H-side Levi name \"" + L.name() + "\"");
      }
      sc.h_levis.push_back(L);
    }
  }
  auto has = [&](const std::string& n) {
    for (const auto& L : sc.h_levis) {
      if (L.name() == n) return true;
    }
    return false;
  };
  TwistedLevi H = fixed_levi(G);
  H.set_name("H");
  if (!has("H")) {
    sc.h_levis.push_back(H);
  } else {
    for (const auto& L : sc.h_levis) {
      if (L.name() == "H" && L != H) shape_error("h_side", "\"H\" must be the fixed points of G");
    }
  }
  if (!has("S")) sc.h_levis.push_back(TwistedLevi::from_roots(sc.frame, Side::H, {}, "S"));

  if (opts.contains("target_depth")) sc.options.target_depth = rational_from_json(opts["target_depth"], "options.target_depth");
  sc.options.samples = int_field(opts, "samples", sc.options.samples, "options");
  if (sc.options.samples < 1) shape_error("options.samples", "must be positive");
  long seed = int_field(opts, "seed", 1, "options");
  if (seed < 0) shape_error("options.seed", "must be nonnegative");
  sc.options.seed = static_cast<std::uint64_t>(seed);
  if (j.contains("expect")) sc.expect = j["expect"];

  Loader ld{sc, G};
  if (j.contains("datum")) sc.datum = ld.datum(j["datum"], "datum");
  if (j.contains("datum2")) sc.datum2 = ld.datum(j["datum2"], "datum2");
  if (!sc.datum) shape_error("scenario", "missing \"datum\"");
  return sc;
}

Scenario load_scenario(const std::string& path, std::optional<int> precision_override) {
  return parse_scenario(read_json_file(path), precision_override);
}

std::vector<ScriptedOverride> parse_strategy(const Json& j, const Scenario& sc) {
  const Json& list = j.is_object() ? require(j, "overrides", "strategy") : j;
  if (!list.is_array()) shape_error("strategy", "expected a list of overrides");
  std::vector<ScriptedOverride> out;
  for (size_t i = 0; i < list.size(); ++i) {
    const std::string op = "strategy[" + std::to_string(i) + "]";
    ScriptedOverride ov;
    ov.step = static_cast<int>(int_field(list[i], "step", -1, op));
    if (ov.step < 0) shape_error(op + ".step", "missing or negative step index");
    if (list[i].contains("x_sharp")) ov.x_sharp = dual_from_json(sc.frame, Side::G, list[i]["x_sharp"], op + ".x_sharp");
    if (list[i].contains("phi_levels")) {
      const auto& lv = list[i]["phi_levels"];
      if (!lv.is_array()) shape_error(op + ".phi_levels", "expected a list");
      std::vector<Level> levels;
      for (size_t k = 0; k < lv.size(); ++k) {
        const std::string lp = op + ".phi_levels[" + std::to_string(k) + "]";
        levels.push_back(Level{rational_from_json(require(lv[k], "depth", lp), lp + ".depth"),
                               dual_from_json(sc.frame, Side::G, require(lv[k], "realizer", lp), lp + ".realizer")});
      }
      ov.phi_levels = levels;
    }
    out.push_back(std::move(ov));
  }
  return out;
}

std::vector<ScriptedOverride> load_strategy(const std::string& path, const Scenario& sc) {
  return parse_strategy(read_json_file(path), sc);
}

}  // namespace levilift
