#include "levilift/commands.hpp"

#include <sstream>

#include "levilift/sampling.hpp"

namespace levilift {

namespace {

struct Report {
  Json j = Json::object();
  Json checks = Json::array();
  bool pass = true;

  void check(const std::string& name, bool ok, const std::string& detail = "") {
    checks.push_back(Json{{"name", name}, {"pass", ok}, {"detail", detail}});
    pass = pass && ok;
  }
};

std::string chain_string(const CharacterDatum& d) {
  std::string s;
  for (size_t i = 0; i < d.levis.size(); ++i) {
    if (i > 0) s += (i + 1 == d.levis.size() && d.levis[i] == d.levis[i - 1]) ? " = " : (i + 1 == d.levis.size() ? " <= " : " < ");
    s += d.levis[i].name();
  }
  return s;
}

std::string depths_string(const CharacterDatum& d) {
  std::string s = "(";
  for (size_t i = 0; i < d.depths.size(); ++i) s += (i ? ", " : "") + to_string(d.depths[i]);
  return s + ")";
}

CharacterDatum require_datum(const Scenario& sc, Side side, const std::string& cmd) {
  auto d = sc.first_on(side);
  if (!d) throw InputError(cmd + " needs a " + side_name(side) + "-side datum in the scenario");
  return *d;
}

ChoiceStrategy strategy_for(const CommandOptions& opts, const Scenario& sc) {
  if (!opts.strategy_path) return ChoiceStrategy::canonical();
  return ChoiceStrategy::scripted(load_strategy(*opts.strategy_path, sc));
}

void add_validation(Report& r, const std::string& prefix, const ValidationReport& v) {
  for (const auto& c : v.conditions) {
    std::string detail;
    for (const auto& m : c.messages) detail += (detail.empty() ? "" : "; ") + m;
    r.check(prefix + c.name, c.pass, detail);
  }
}

void add_stability(Report& r, const std::string& name, const StabilityReport& s) {
  r.check(name, s.stable, s.witness ? s.witness->detail + " (index " + std::to_string(s.witness->index) + ")" : "");
}

Json runs_json(const std::vector<LiftResult>& runs) {
  Json a = Json::array();
  for (const auto& r : runs) {
    a.push_back(Json{{"steps", r.steps.size()},
                     {"step_bound", r.step_bound},
                     {"product_identity", r.product_identity},
                     {"levis", chain_string(r.sigma)},
                     {"correction_depth", rational_to_json(char_depth(r.correction))}});
  }
  return a;
}

void check_runs(Report& r, const std::vector<LiftResult>& runs) {
  bool bound = true, prod = true, interleave = true;
  for (const auto& run : runs) {
    bound = bound && static_cast<long>(run.steps.size()) <= run.step_bound;
    prod = prod && run.product_identity;
    for (size_t k = 1; k < run.steps.size(); ++k) interleave = interleave && run.steps[k].t < run.steps[k - 1].t;
  }
  r.check("termination_bound", bound, "every run halts within e(t - s) steps");
  r.check("product_identity", prod, "correction * xi equals the product of restricted run characters");
  r.check("strict_descent", interleave, "residual depths strictly decrease");
}

void cmd_validate(const Scenario& sc, Report& r) {
  const CharacterDatum& d = *sc.datum;
  auto v = validate_datum(d);
  add_validation(r, "", v);
  r.j["validation"] = validation_to_json(v);
  r.j["datum"] = datum_to_json(d);
  if (d.side == Side::G && v.ok()) {
    auto s = check_gamma_stable(d);
    add_stability(r, "gamma_stable", s);
    r.j["stability"] = stability_to_json(s);
  }
}

void lift_full(const Scenario& sc, const CharacterDatum& delta, const CommandOptions& opts, Report& r) {
  LiftContext ctx(strategy_for(opts, sc), sc.h_levis);
  r.j["strategy"] = ctx.strategy().mode_name();
  DatumLiftResult res = lift_datum(delta, sc.frame, ctx);
  r.j["sigma"] = datum_to_json(res.lift.sigma);
  r.j["levi_chain"] = chain_string(res.lift.sigma);
  r.j["depths"] = depths_string(res.lift.sigma);
  Json steps = Json::array();
  for (const auto& s : res.lift.steps) steps.push_back(step_to_json(s));
  r.j["steps"] = steps;
  std::vector<LiftResult> ordered(res.runs.rbegin(), res.runs.rend());
  r.j["runs"] = runs_json(ordered);
  add_validation(r, "sigma_", res.validation);
  add_stability(r, "gamma_stable", res.stability);
  if (res.stability.stable) r.j["restricted"] = datum_to_json(res.restricted);
  r.check("refactorization", res.refactorization.ok, res.refactorization.message);
  check_runs(r, ordered);
  if (delta.length() >= 2) {
    try {
      auto naive = naive_lift(delta, sc.frame, sc.h_levis);
      Json nj{{"chain", naive.chain}};
      Json levis = Json::array();
      for (const auto& L : naive.levis) levis.push_back(L.name());
      nj["levis"] = levis;
      if (naive.incomparable) nj["incomparable"] = Json::array({naive.incomparable->first.name(), naive.incomparable->second.name()});
      r.j["naive_control"] = nj;
    } catch (const std::runtime_error& e) {
      r.j["naive_control"] = Json{{"error", e.what()}};
    }
  }
}

void lift_one(const Scenario& sc, const CharacterDatum& delta, const Rational& s, const CommandOptions& opts, Report& r) {
  if (delta.length() != 1) throw InputError("single-character lifting needs a datum with one character");
  auto v = validate_datum(delta);
  if (!v.ok()) throw InputError("input datum is invalid");
  LiftContext ctx(strategy_for(opts, sc), sc.h_levis);
  r.j["strategy"] = ctx.strategy().mode_name();
  r.j["target_depth"] = rational_to_json(s);
  LiftResult res = lift_single(delta.chars[0], delta.levis[1], TwistedLevi::full(sc.frame), s, ctx);
  r.j["lift"] = lift_to_json(res);
  r.j["levi_chain"] = chain_string(res.sigma);
  r.j["depths"] = depths_string(res.sigma);
  auto val = validate_datum(res.sigma);
  add_validation(r, "sigma_", val);
  add_stability(r, "gamma_stable", check_gamma_stable(res.sigma));
  bool fixed = true;
  for (const auto& st : res.steps) fixed = fixed && fixed_levi_equals(st.M_prime, delta.chars[0].domain());
  r.check("fixed_point_constancy", fixed, "every produced Levi has fixed points " + delta.chars[0].domain().name());
  r.check("correction_depth", !(char_depth(res.correction) > s),
          "correction depth " + to_string(char_depth(res.correction)) + " <= " + to_string(s));
  check_runs(r, {res});
}

void cmd_lift(const Scenario& sc, const CommandOptions& opts, Report& r, bool single) {
  CharacterDatum delta = require_datum(sc, Side::H, single ? "lift-single" : "lift");
  r.j["input"] = datum_to_json(delta);
  std::optional<Rational> s = opts.target_depth ? opts.target_depth : sc.options.target_depth;
  if (single || s) {
    lift_one(sc, delta, s ? *s : Rational(0), opts, r);
  } else {
    lift_full(sc, delta, opts, r);
  }
}

void cmd_restrict(const Scenario& sc, Report& r) {
  CharacterDatum sigma = require_datum(sc, Side::G, "restrict");
  auto v = validate_datum(sigma);
  add_validation(r, "input_", v);
  if (!v.ok()) return;
  auto st = check_gamma_stable(sigma);
  add_stability(r, "gamma_stable", st);
  r.j["stability"] = stability_to_json(st);
  if (!st.stable) return;
  CharacterDatum res = restrict_datum(sigma, sc.h_levis);
  r.j["restricted"] = datum_to_json(res);
  r.j["levi_chain"] = chain_string(res);
  r.j["depths"] = depths_string(res);
  add_validation(r, "restricted_", validate_datum(res));
}

void cmd_roundtrip(const Scenario& sc, const CommandOptions& opts, Report& r) {
  CharacterDatum sigma;
  if (auto g = sc.first_on(Side::G)) {
    sigma = *g;
  } else {
    CharacterDatum delta = require_datum(sc, Side::H, "roundtrip");
    LiftContext ctx(strategy_for(opts, sc), sc.h_levis);
    auto lifted = lift_datum(delta, sc.frame, ctx);
    r.check("canonical_lift", lifted.ok(), "lift of the H-side datum passes its checks");
    sigma = lifted.lift.sigma;
  }
  r.j["sigma"] = datum_to_json(sigma);
  auto rt = replay_roundtrip(sigma, sc.h_levis);
  r.j["restricted"] = datum_to_json(rt.restricted);
  r.check("replay_roundtrip", rt.ok, rt.message);
  r.check("trivial_correction", rt.lifted.lift.correction.is_trivial(), "correction after replay");
}

void cmd_check_refactor(const Scenario& sc, Report& r) {
  const CharacterDatum& a = *sc.datum;
  const CharacterDatum& b = sc.datum2 ? *sc.datum2 : *sc.datum;
  r.j["compared"] = sc.datum2 ? "datum, datum2" : "datum, datum";
  auto rep = check_refactorization(a, b);
  r.j["refactorization"] = refactorization_to_json(rep);
  r.check("refactorization", rep.ok, rep.message);
}

void cmd_eval_theta(const Scenario& sc, const CommandOptions& opts, Report& r) {
  CharacterDatum delta, sigma;
  if (auto h = sc.first_on(Side::H)) {
    delta = *h;
    LiftContext ctx(strategy_for(opts, sc), sc.h_levis);
    auto lifted = lift_datum(delta, sc.frame, ctx);
    r.check("lift", lifted.ok(), "lift of the H-side datum passes its checks");
    sigma = lifted.lift.sigma;
  } else {
    sigma = require_datum(sc, Side::G, "eval-theta");
    auto st = check_gamma_stable(sigma);
    if (!st.stable) throw MathError("eval-theta needs a Gamma-stable datum: " + st.witness->detail);
    delta = restrict_datum(sigma, sc.h_levis);
  }
  const long samples = opts.samples ? *opts.samples : sc.options.samples;
  const std::uint64_t seed = opts.seed ? *opts.seed : sc.options.seed;
  if (samples < 1) throw InputError("--samples must be positive");
  const long e = sc.field->e();
  // Smallest valuation in (1/e)Z above half the top depth.
  Rational half = delta.depths.back() / 2;
  Rational scaled = half * e;
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  Rational d(mpz_class(fl + 1), mpz_class(e));
  d.canonicalize();

  Sampler smp(seed);
  long mismatches = 0;
  Rational worst(0);
  Json first = Json::array();
  for (long i = 0; i < samples; ++i) {
    DualElement u = smp.h_argument(sc.frame, d);
    CharValue a = theta_evaluate(delta, u, 0);
    CharValue b = theta_evaluate(sigma, lift_from_fixed(u), 0);
    Rational diff = frac(a.torsion - b.torsion);
    Rational dist = diff > Rational(1, 2) ? Rational(1) - diff : diff;
    if (diff != 0) ++mismatches;
    if (dist > worst) worst = dist;
    if (i < 3) first.push_back(Json{{"delta", rational_to_json(a.torsion)}, {"sigma", rational_to_json(b.torsion)}});
  }
  r.j["samples"] = samples;
  r.j["seed"] = seed;
  r.j["argument_valuation"] = rational_to_json(d);
  r.j["discrepancies"] = mismatches;
  r.j["max_discrepancy"] = rational_to_json(worst);
  r.j["first_values"] = first;
  r.check("theta_agreement", mismatches == 0,
          std::to_string(mismatches) + " of " + std::to_string(samples) + " arguments disagree");
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"validate", "lift", "lift-single", "restrict",
                                              "roundtrip", "check-refactor", "eval-theta"};
  return names;
}

CommandResult run_command(const CommandOptions& opts, const Scenario& sc) {
  Report r;
  r.j["command"] = opts.command;
  r.j["scenario"] = sc.name;
  if (!sc.snapped.empty()) r.j["snapped"] = sc.snapped;
  CommandResult out;
  try {
    if (opts.command == "validate") {
      cmd_validate(sc, r);
    } else if (opts.command == "lift") {
      cmd_lift(sc, opts, r, false);
    } else if (opts.command == "lift-single") {
      cmd_lift(sc, opts, r, true);
    } else if (opts.command == "restrict") {
      cmd_restrict(sc, r);
    } else if (opts.command == "roundtrip") {
      cmd_roundtrip(sc, opts, r);
    } else if (opts.command == "check-refactor") {
      cmd_check_refactor(sc, r);
    } else if (opts.command == "eval-theta") {
      cmd_eval_theta(sc, opts, r);
    } else {
      throw InputError("unknown command '" + opts.command + "'");
    }
    out.exit_code = r.pass ? 0 : 1;
    r.j["status"] = r.pass ? "pass" : "fail";
  } catch (const MathError& e) {
    out.exit_code = 1;
    r.j["status"] = "fail";
    r.j["error"] = Json{{"kind", "math"}, {"message", e.what()}};
  } catch (const PrecisionError& e) {
    out.exit_code = 2;
    r.j["status"] = "error";
    r.j["error"] = Json{{"kind", "precision"}, {"message", e.what()}};
  } catch (const InputError& e) {
    out.exit_code = 2;
    r.j["status"] = "error";
    r.j["error"] = Json{{"kind", "input"}, {"message", e.what()}};
  }
  r.j["checks"] = r.checks;
  r.j["exit_code"] = out.exit_code;
  out.report = r.j;
  return out;
}

CommandResult run_command(const CommandOptions& opts) {
  try {
    Scenario sc = load_scenario(opts.scenario_path, opts.precision ? opts.precision : precision_from_env());
    return run_command(opts, sc);
  } catch (const PrecisionError& e) {
    return CommandResult{2, Json{{"command", opts.command},
                                 {"status", "error"},
                                 {"exit_code", 2},
                                 {"checks", Json::array()},
                                 {"error", Json{{"kind", "precision"}, {"message", e.what()}}}}};
  } catch (const InputError& e) {
    return CommandResult{2, Json{{"command", opts.command},
                                 {"status", "error"},
                                 {"exit_code", 2},
                                 {"checks", Json::array()},
                                 {"error", Json{{"kind", "input"}, {"message", e.what()}}}}};
  } catch (const MathError& e) {
    return CommandResult{2, Json{{"command", opts.command},
                                 {"status", "error"},
                                 {"exit_code", 2},
                                 {"checks", Json::array()},
                                 {"error", Json{{"kind", "input"}, {"message", e.what()}}}}};
  }
}

std::string render_text(const Json& report) {
  std::ostringstream os;
  os << "command: " << report.value("command", "") << "\n";
  if (report.contains("scenario")) os << "scenario: " << report["scenario"].get<std::string>() << "\n";
  os << "status: " << report.value("status", "") << "\n";
  for (const char* key : {"levi_chain", "depths", "strategy", "discrepancies", "max_discrepancy"}) {
    if (report.contains(key)) {
      const auto& v = report[key];
      os << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
  if (report.contains("stability") && report["stability"].contains("witness")) {
    const auto& w = report["stability"]["witness"];
    os << "witness: index " << w["index"].get<int>() << ", Levi " << w["levi"].get<std::string>() << ": "
       << w["detail"].get<std::string>() << "\n";
  }
  if (report.contains("steps")) {
    for (const auto& s : report["steps"]) {
      os << "step " << s["index"].get<int>() << " (case " << s["case"].get<std::string>() << ", "
         << s["source"].get<std::string>() << "): t = " << s["t"].get<std::string>() << ", M' = "
         << s["M_prime"].get<std::string>() << ", next depth " << s["t_next"].get<std::string>() << "\n";
    }
  }
  if (report.contains("naive_control")) os << "naive_control: " << report["naive_control"].dump() << "\n";
  for (const auto& c : report.value("checks", Json::array())) {
    os << (c["pass"].get<bool>() ? "[PASS] " : "[FAIL] ") << c["name"].get<std::string>();
    const auto d = c["detail"].get<std::string>();
    if (!d.empty()) os << ": " << d;
    os << "\n";
  }
  if (report.contains("error")) {
    os << "error (" << report["error"]["kind"].get<std::string>() << "): " << report["error"]["message"].get<std::string>()
       << "\n";
  }
  return os.str();
}

}  // namespace levilift
