#include "levilift/lifting.hpp"

#include <algorithm>

namespace levilift {

namespace {

long ceil_rational(const Rational& x) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q.get_si();
}

QuasiCharacter averaged(const QuasiCharacter& chi) {
  std::vector<DualElement> xs;
  for (const auto& lv : chi.levels()) xs.push_back(gamma_average(lv.realizer));
  return QuasiCharacter::from_realizers(chi.domain(), xs, chi.tail());
}

CharacterDatum averaged(const CharacterDatum& sigma) {
  CharacterDatum out = sigma;
  for (auto& c : out.chars) c = averaged(c);
  return out;
}

// Entries of the replay target that belong to the run inside g_ambient over Hprime, largest first.
std::vector<size_t> replay_candidates(const CharacterDatum& target, const TwistedLevi& g_ambient, const TwistedLevi& Hprime,
                                      const Rational& s) {
  std::vector<size_t> out;
  for (size_t i = target.length(); i-- > 0;) {
    const auto& L = target.levis[i];
    if (!g_ambient.contains(L) || !L.is_gamma_stable()) continue;
    if (!fixed_levi_equals(L, Hprime)) continue;
    if (!(target.depths[i] > s)) continue;
    out.push_back(i);
  }
  return out;
}

}  // namespace

ChoiceStrategy ChoiceStrategy::replay(CharacterDatum target) {
  ChoiceStrategy s;
  s.mode = Mode::Replay;
  s.replay_target = std::move(target);
  return s;
}

ChoiceStrategy ChoiceStrategy::scripted(std::vector<ScriptedOverride> overrides) {
  ChoiceStrategy s;
  s.mode = Mode::Scripted;
  s.overrides = std::move(overrides);
  return s;
}

std::string ChoiceStrategy::mode_name() const {
  switch (mode) {
    case Mode::Canonical: return "canonical";
    case Mode::Replay: return "replay";
    case Mode::Scripted: return "scripted";
  }
  return "canonical";
}

LiftContext::LiftContext(ChoiceStrategy strategy, LeviCatalog catalog)
    : strategy_(std::move(strategy)), catalog_(std::move(catalog)) {}

SingleStepResult single_step(const TwistedLevi& M, const QuasiCharacter& tau, const StepChoice& choice) {
  if (M.side() != Side::G) throw InputError("single_step needs a G-side Levi");
  if (tau.domain().side() != Side::H) throw InputError("single_step needs an H-side residual");
  const TwistedLevi& Hprime = tau.domain();
  auto [t, Y] = realize_at_top(tau);
  DualElement X = lift_from_fixed(Y);

  SingleStepResult res;
  res.source = choice.source;
  DualElement xs = choice.x_sharp ? *choice.x_sharp : sharp_flat(M, X, t).first;
  if (xs.side() != Side::G) throw InputError("X_sharp must be a G-side element");
  if (!is_gamma_fixed(xs)) throw MathError("X_sharp is not Gamma-fixed");
  if (!is_rational(xs)) throw MathError("X_sharp is not Galois-rational");
  DualElement flat = X - xs;
  if (!flat.is_zero() && !(flat.depth() < t)) {
    throw MathError("X_sharp does not realize the residual at depth " + to_string(t));
  }
  TwistedLevi Mp = centralizer_levi(M, xs);
  if (!is_generic(xs, t, Mp, M)) throw MathError("X_sharp is not " + M.name() + "-generic of depth " + to_string(t));
  if (!fixed_levi_equals(Mp, Hprime)) {
    throw MathError("fixed points of " + Mp.name() + " differ from " + Hprime.name());
  }

  QuasiCharacter phi;
  if (choice.phi) {
    phi = *choice.phi;
  } else if (choice.phi_levels) {
    phi = QuasiCharacter::make(Mp, *choice.phi_levels, {});
  } else {
    phi = canonical_char_from_realizer(Mp, t, xs);
  }
  if (phi.domain() != Mp) throw MathError("phi' lives on " + phi.domain().name() + ", expected " + Mp.name());
  if (char_depth(phi) != t) throw MathError("phi' has depth " + to_string(char_depth(phi)) + ", expected " + to_string(t));
  DualElement top = realize_at_top(phi).second;
  DualElement gap = top - xs;
  if (!gap.is_zero() && !(gap.depth() < t)) throw MathError("phi' is not realized by X_sharp at its depth");

  QuasiCharacter next = char_mul(tau, char_inv(restrict_to_group(phi, Hprime)));
  Rational tn = char_depth(next);
  if (!(tn < t)) throw MathError("residual depth did not drop below " + to_string(t));

  res.M_prime = Mp;
  res.x_sharp = xs;
  res.x_flat = flat;
  res.phi = phi;
  res.tau_next = next;
  res.t_next = tn;
  return res;
}

LiftResult lift_single(const QuasiCharacter& xi, const TwistedLevi& h_ambient, const TwistedLevi& g_ambient,
                       const Rational& s, LiftContext& ctx) {
  const TwistedLevi& Hprime = xi.domain();
  if (Hprime.side() != Side::H || h_ambient.side() != Side::H) throw InputError("lift_single needs H-side input");
  if (g_ambient.side() != Side::G) throw InputError("lift_single needs a G-side ambient");
  if (!h_ambient.contains(Hprime)) throw InputError(Hprime.name() + " is not contained in " + h_ambient.name());
  if (!fixed_levi_equals(g_ambient, h_ambient)) {
    throw InputError("fixed points of " + g_ambient.name() + " differ from " + h_ambient.name());
  }
  if (xi.is_trivial()) throw InputError("cannot lift the trivial character");
  auto [t, Y] = realize_at_top(xi);
  if (!(t > s)) throw InputError("depth " + to_string(t) + " is not above s = " + to_string(s));
  if (!is_generic(Y, t, Hprime, h_ambient)) {
    throw InputError("character is not " + h_ambient.name() + "-generic of depth " + to_string(t));
  }

  LiftResult out;
  const long e = g_ambient.frame()->field()->e();
  out.step_bound = ceil_rational(Rational(e) * (t - s));

  const auto& strat = ctx.strategy();
  std::vector<size_t> candidates;
  if (strat.mode == ChoiceStrategy::Mode::Replay) {
    candidates = replay_candidates(*strat.replay_target, g_ambient, Hprime, s);
  }

  TwistedLevi M = g_ambient;
  QuasiCharacter tau = xi;
  size_t cursor = 0;
  while (!tau.is_trivial() && char_depth(tau) > s) {
    if (static_cast<long>(out.steps.size()) >= out.step_bound) {
      throw MathError("lift did not terminate within " + std::to_string(out.step_bound) + " steps");
    }
    const int idx = ctx.next_step();
    const Rational t_cur = char_depth(tau);
    StepChoice choice;
    if (strat.mode == ChoiceStrategy::Mode::Replay) {
      if (cursor >= candidates.size()) throw MathError("replay target has no entry for residual depth " + to_string(t_cur));
      const size_t i = candidates[cursor++];
      const auto& target = *strat.replay_target;
      if (target.depths[i] != t_cur) {
        throw MathError("replay entry " + std::to_string(i) + " has depth " + to_string(target.depths[i]) +
                        " but the residual has depth " + to_string(t_cur));
      }
      QuasiCharacter phi = averaged(target.chars[i]);
      choice.x_sharp = realize_at_top(phi).second;
      choice.phi = phi;
      choice.source = "replay";
    } else if (strat.mode == ChoiceStrategy::Mode::Scripted) {
      for (const auto& ov : strat.overrides) {
        if (ov.step != idx) continue;
        choice.x_sharp = ov.x_sharp;
        choice.phi_levels = ov.phi_levels;
        choice.source = "scripted";
      }
    }
    SingleStepResult st;
    try {
      st = single_step(M, tau, choice);
    } catch (const MathError& e) {
      throw MathError("step " + std::to_string(idx) + ": " + e.what());
    } catch (const PrecisionError& e) {
      throw PrecisionError("step " + std::to_string(idx) + ": " + e.what());
    } catch (const InputError& e) {
      throw InputError("step " + std::to_string(idx) + ": " + e.what());
    }
    StepRecord rec;
    rec.index = idx;
    rec.case_label = out.steps.empty() ? "a" : "b";
    rec.source = st.source;
    rec.M = M;
    rec.M_prime = st.M_prime;
    rec.x_sharp = st.x_sharp;
    rec.phi = st.phi;
    rec.t = t_cur;
    rec.tau_next = st.tau_next;
    rec.t_next = st.t_next;
    out.steps.push_back(rec);
    M = st.M_prime;
    tau = st.tau_next;
  }
  if (strat.mode == ChoiceStrategy::Mode::Replay && cursor != candidates.size()) {
    throw MathError("replay target has unused entries over " + Hprime.name());
  }

  // Regroup consecutive steps with the same M'.
  struct Run {
    TwistedLevi levi;
    Rational depth;
    QuasiCharacter chi;
  };
  std::vector<Run> runs;
  for (const auto& rec : out.steps) {
    if (!runs.empty() && runs.back().levi == rec.M_prime) {
      runs.back().chi = char_mul(runs.back().chi, rec.phi);
    } else {
      runs.push_back(Run{rec.M_prime, rec.t, rec.phi});
    }
  }
  out.sigma.side = Side::G;
  for (auto it = runs.rbegin(); it != runs.rend(); ++it) {
    out.sigma.levis.push_back(it->levi);
    out.sigma.depths.push_back(it->depth);
    out.sigma.chars.push_back(it->chi);
  }
  out.sigma.levis.push_back(g_ambient);

  out.correction = char_inv(tau);
  QuasiCharacter lhs = char_mul(out.correction, xi);
  QuasiCharacter rhs = QuasiCharacter::trivial(Hprime);
  for (const auto& r : runs) rhs = char_mul(rhs, restrict_to_group(r.chi, Hprime));
  out.product_identity = chars_equal_mod(lhs, rhs, Rational(0), true);
  return out;
}

DatumLiftResult lift_datum(const CharacterDatum& delta, const FramePtr& frame, LiftContext& ctx) {
  if (delta.side != Side::H) throw InputError("lift_datum needs an H-side datum");
  auto val = validate_datum(delta);
  if (!val.ok()) {
    std::string msg = "input datum is invalid:";
    for (const auto& c : val.conditions) {
      for (const auto& m : c.messages) msg += " [" + c.name + "] " + m;
    }
    throw InputError(msg);
  }
  const TwistedLevi G = TwistedLevi::full(frame);
  const size_t d1 = delta.length();

  DatumLiftResult out;
  TwistedLevi g_amb = G;
  QuasiCharacter corr = QuasiCharacter::trivial(delta.levis[d1]);
  for (size_t j = d1; j-- > 0;) {
    QuasiCharacter xt = char_mul(restrict_to_group(char_inv(corr), delta.levis[j]), delta.chars[j]);
    Rational s = j == 0 ? Rational(0) : delta.depths[j - 1];
    LiftResult r = lift_single(xt, delta.levis[j + 1], g_amb, s, ctx);
    g_amb = r.sigma.levis.front();
    corr = r.correction;
    out.runs.push_back(std::move(r));
  }

  LiftResult& L = out.lift;
  L.sigma.side = Side::G;
  L.sigma.point = delta.point;
  L.product_identity = true;
  for (auto it = out.runs.rbegin(); it != out.runs.rend(); ++it) {
    const auto& sg = it->sigma;
    for (size_t k = 0; k < sg.length(); ++k) {
      L.sigma.levis.push_back(sg.levis[k]);
      L.sigma.depths.push_back(sg.depths[k]);
      L.sigma.chars.push_back(sg.chars[k]);
    }
    L.product_identity = L.product_identity && it->product_identity;
    L.step_bound += it->step_bound;
  }
  for (const auto& r : out.runs) {
    L.steps.insert(L.steps.end(), r.steps.begin(), r.steps.end());
  }
  L.sigma.levis.push_back(G);
  L.correction = corr;

  out.validation = validate_datum(L.sigma);
  out.stability = check_gamma_stable(L.sigma);
  if (out.stability.stable) {
    out.restricted = restrict_datum(L.sigma, ctx.catalog());
    out.refactorization = check_refactorization(out.restricted, delta);
  } else {
    out.refactorization.ok = false;
    out.refactorization.message = "lifted datum is not Gamma-stable";
  }
  return out;
}

NaiveLiftResult naive_lift(const CharacterDatum& delta, const FramePtr& frame, const LeviCatalog& catalog) {
  if (delta.side != Side::H) throw InputError("naive_lift needs an H-side datum");
  const TwistedLevi G = TwistedLevi::full(frame);
  const TwistedLevi H = fixed_levi(G);
  LiftContext ctx(ChoiceStrategy::canonical(), catalog);
  NaiveLiftResult out;
  for (size_t j = delta.length(); j-- > 0;) {
    Rational s = j == 0 ? Rational(0) : delta.depths[j - 1];
    LiftResult r = lift_single(delta.chars[j], H, G, s, ctx);
    for (size_t k = 0; k < r.sigma.length(); ++k) {
      const auto& L = r.sigma.levis[k];
      if (std::find(out.levis.begin(), out.levis.end(), L) == out.levis.end()) out.levis.push_back(L);
    }
    out.runs.push_back(std::move(r));
  }
  for (size_t a = 0; a < out.levis.size() && out.chain; ++a) {
    for (size_t b = a + 1; b < out.levis.size(); ++b) {
      if (!out.levis[a].contains(out.levis[b]) && !out.levis[b].contains(out.levis[a])) {
        out.chain = false;
        out.incomparable = std::make_pair(out.levis[a], out.levis[b]);
        break;
      }
    }
  }
  return out;
}

bool data_equal(const CharacterDatum& a, const CharacterDatum& b) {
  if (a.side != b.side || a.levis != b.levis || a.depths != b.depths || a.point != b.point) return false;
  if (a.chars.size() != b.chars.size()) return false;
  for (size_t i = 0; i < a.chars.size(); ++i) {
    if (a.chars[i].domain() != b.chars[i].domain() || !chars_equal_mod(a.chars[i], b.chars[i], Rational(0), true)) return false;
  }
  return true;
}

RoundtripResult replay_roundtrip(const CharacterDatum& sigma, const LeviCatalog& catalog) {
  RoundtripResult out;
  if (sigma.side != Side::G) throw InputError("roundtrip needs a G-side datum");
  auto val = validate_datum(sigma);
  if (!val.ok()) throw InputError("roundtrip input datum is invalid");
  out.restricted = restrict_datum(sigma, catalog);
  LiftContext ctx(ChoiceStrategy::replay(sigma), catalog);
  out.lifted = lift_datum(out.restricted, sigma.levis.back().frame(), ctx);
  CharacterDatum target = averaged(sigma);
  if (!out.lifted.ok()) {
    out.message = "replayed lift failed its checks";
  } else if (!data_equal(out.lifted.lift.sigma, target)) {
    out.message = "replayed lift differs from the input datum";
  } else {
    out.ok = true;
    out.message = "replayed lift reproduces the input datum";
  }
  return out;
}

}  // namespace levilift
