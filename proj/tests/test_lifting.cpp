#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "levilift/lifting.hpp"

using namespace levilift;

namespace {

Rational R(long a, long b = 1) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

FieldPtr qp5() {
  FieldDesc d;
  d.p = 5;
  return Field::create(d);
}

FieldPtr unram25() {
  FieldDesc d;
  d.p = 5;
  d.f = 2;
  d.residue_modulus = {3, 0, 1};
  return Field::create(d);
}

FieldElement q(const FieldPtr& F, long a, long b = 1) { return FieldElement::from_rational(F, R(a, b)); }

CharacterDatum h_datum(std::vector<TwistedLevi> levis, std::vector<Rational> depths, std::vector<QuasiCharacter> chars) {
  CharacterDatum d;
  d.side = Side::H;
  d.levis = std::move(levis);
  d.depths = std::move(depths);
  d.chars = std::move(chars);
  return d;
}

// Q_5, GL(4) with the inner involution diag(1,1,-1,-1).
struct Weird {
  FieldPtr F = qp5();
  FramePtr fr = TorusFrame::create(F, 4, {}, {}, {GammaElement{{0, 1, 2, 3}, 1, {}, {1, 1, -1, -1}}});
  TwistedLevi G = TwistedLevi::full(fr);
  TwistedLevi H = fixed_levi(G);
  TwistedLevi LH = TwistedLevi::from_partition(fr, {{0, 1}, {2, 3}});
  CharacterDatum delta(long a, long b) {
    auto Y = DualElement(fr, Side::H, {q(F, a, 25), q(F, a, 25), q(F, b, 25), q(F, b, 25)});
    return h_datum({H, H}, {R(2)}, {canonical_char_from_realizer(H, R(2), Y)});
  }
};

// Unramified quadratic E/Q_5, torus Res(E)^2 inside GL(4), Gamma = diag(1,1,-1,-1).
struct Pair {
  FieldPtr U = unram25();
  FramePtr fr = TorusFrame::create(U, 4, {1, 0, 3, 2}, {}, {GammaElement{{0, 1, 2, 3}, 1, {}, {1, 1, -1, -1}}});
  TwistedLevi G = TwistedLevi::full(fr);
  TwistedLevi H = fixed_levi(G);
  TwistedLevi S = TwistedLevi::from_roots(fr, Side::H, {}, "S");
  TwistedLevi T = TwistedLevi::torus(fr, Side::G);
  FieldElement th = FieldElement::residue_lift(U, {0, 1});
  DualElement hy(std::vector<FieldElement> c) const { return DualElement(fr, Side::H, std::move(c)); }
};

}  // namespace

TEST_CASE("split and equal regimes lift in one step") {
  Weird w;
  LiftContext ctx(ChoiceStrategy::canonical());
  auto split = lift_datum(w.delta(1, 2), w.fr, ctx);
  CHECK(split.ok());
  REQUIRE(split.lift.sigma.length() == 1);
  CHECK(split.lift.sigma.levis[0] == w.LH);
  CHECK(split.lift.sigma.levis[1] == w.G);
  CHECK(split.lift.steps.size() == 1);
  CHECK(split.lift.steps[0].case_label == "a");

  LiftContext ctx2(ChoiceStrategy::canonical());
  auto equal = lift_datum(w.delta(1, 1), w.fr, ctx2);
  CHECK(equal.ok());
  REQUIRE(equal.lift.sigma.length() == 1);
  CHECK(equal.lift.sigma.levis[0] == w.G);
  CHECK(equal.lift.sigma.depths[0] == 2);
}

TEST_CASE("induction step in three regimes") {
  Pair P;
  auto x = P.th.scaled(R(1, 25));
  auto d = q(P.U, 1, 5);
  auto run = [&](std::vector<FieldElement> c) {
    auto xi = canonical_char_from_realizer(P.S, R(2), P.hy(std::move(c)));
    LiftContext ctx(ChoiceStrategy::canonical());
    return lift_datum(h_datum({P.S, P.H}, {R(2)}, {xi}), P.fr, ctx);
  };
  auto sharp = run({x, -x, x + d, -x + d});
  CHECK(sharp.ok());
  REQUIRE(sharp.lift.steps.size() == 2);
  CHECK(sharp.lift.steps[0].M_prime == TwistedLevi::from_partition(P.fr, {{0, 2}, {1, 3}}));
  CHECK(sharp.lift.steps[1].M_prime == P.T);
  CHECK(sharp.lift.steps[1].case_label == "b");
  CHECK(sharp.lift.sigma.depths == std::vector<Rational>{R(1), R(2)});

  auto twisted = run({x, -x, -x + d, x + d});
  CHECK(twisted.ok());
  CHECK(twisted.lift.steps[0].M_prime == TwistedLevi::from_partition(P.fr, {{0, 3}, {1, 2}}));

  auto y = P.th.scaled(R(2, 25));
  auto generic = run({x, -x, y, -y});
  CHECK(generic.ok());
  REQUIRE(generic.lift.steps.size() == 1);
  CHECK(generic.lift.sigma.levis[0] == P.T);
}

TEST_CASE("a run can repeat its Levi") {
  Pair P;
  auto x = P.th.scaled(R(1, 125));
  auto c = q(P.U, 1, 25);
  auto z = P.th.scaled(R(1, 5));
  auto X3 = P.hy({x, -x, x + c, -x + c});
  auto Z = P.hy({q(P.U, 0), q(P.U, 0), -c + z, -c - z});
  auto xi = QuasiCharacter::from_realizers(P.S, {X3, Z});
  REQUIRE(char_depth(xi) == 3);
  LiftContext ctx(ChoiceStrategy::canonical());
  auto res = lift_datum(h_datum({P.S, P.H}, {R(3)}, {xi}), P.fr, ctx);
  CHECK(res.ok());
  auto M1 = TwistedLevi::from_partition(P.fr, {{0, 2}, {1, 3}});
  REQUIRE(res.lift.steps.size() == 3);
  CHECK(res.lift.steps[0].M_prime == M1);
  CHECK(res.lift.steps[1].M_prime == M1);
  CHECK(res.lift.steps[2].M_prime == P.T);
  REQUIRE(res.lift.sigma.length() == 2);
  CHECK(res.lift.sigma.levis[0] == P.T);
  CHECK(res.lift.sigma.levis[1] == M1);
  CHECK(res.lift.sigma.depths == std::vector<Rational>{R(1), R(3)});
  CHECK(res.lift.sigma.chars[1].levels().size() == 2);
  CHECK(res.lift.step_bound == 3);
}

TEST_CASE("correction folding versus the naive lift") {
  Pair P;
  auto x = P.th.scaled(R(1, 5));
  auto xi0 = canonical_char_from_realizer(P.S, R(1), P.hy({x, -x, x, -x}));
  auto a = q(P.U, 1, 125), b = q(P.U, 1, 125) + q(P.U, 1, 25);
  auto xi1 = canonical_char_from_realizer(P.H, R(3), P.hy({a, a, b, b}));
  auto delta = h_datum({P.S, P.H, P.H}, {R(1), R(3)}, {xi0, xi1});
  REQUIRE(validate_datum(delta).ok());
  LiftContext ctx(ChoiceStrategy::canonical());
  auto res = lift_datum(delta, P.fr, ctx);
  CHECK(res.ok());
  auto LH = TwistedLevi::from_partition(P.fr, {{0, 1}, {2, 3}});
  REQUIRE(res.lift.sigma.levis.size() == 4);
  CHECK(res.lift.sigma.levis[0] == P.T);
  CHECK(res.lift.sigma.levis[1] == LH);
  CHECK(res.lift.sigma.levis[2] == P.G);
  CHECK(res.lift.sigma.depths == std::vector<Rational>{R(1), R(2), R(3)});

  auto naive = naive_lift(delta, P.fr, {});
  CHECK_FALSE(naive.chain);
  REQUIRE(naive.incomparable.has_value());
}

TEST_CASE("lift of a non-stable datum's restriction is stable") {
  FieldPtr U = unram25();
  auto fr = TorusFrame::create(U, 4, {1, 0, 3, 2}, {}, {GammaElement{{2, 3, 0, 1}, -1, {}, {1, 1, -1, -1}}});
  auto th = FieldElement::residue_lift(U, {0, 1});
  auto S = TwistedLevi::from_roots(fr, Side::H, {}, "S");
  auto H = fixed_levi(TwistedLevi::full(fr));
  auto y = FieldElement::from_digits(U, R(-2), {{-2, 1}});
  auto yb = FieldElement::from_digits(U, R(-2), {{-2, -1}});
  auto xi = canonical_char_from_realizer(S, R(2), DualElement(fr, Side::H, {y, yb}));
  LiftContext ctx(ChoiceStrategy::canonical());
  auto res = lift_datum(h_datum({S, H}, {R(2)}, {xi}), fr, ctx);
  CHECK(res.ok());
  REQUIRE(res.lift.sigma.length() == 1);
  CHECK(res.lift.sigma.levis[0] == TwistedLevi::torus(fr, Side::G));
  (void)th;
}

TEST_CASE("replay roundtrip reproduces a stable datum") {
  Pair P;
  auto x = P.th.scaled(R(1, 125));
  auto c = q(P.U, 1, 25);
  auto z = P.th.scaled(R(1, 5));
  auto xi = QuasiCharacter::from_realizers(P.S, {P.hy({x, -x, x + c, -x + c}), P.hy({q(P.U, 0), q(P.U, 0), -c + z, -c - z})});
  LiftContext ctx(ChoiceStrategy::canonical());
  auto lifted = lift_datum(h_datum({P.S, P.H}, {R(3)}, {xi}), P.fr, ctx);
  REQUIRE(lifted.ok());
  auto rt = replay_roundtrip(lifted.lift.sigma, {P.S});
  CHECK(rt.ok);
  CHECK(rt.message == "replayed lift reproduces the input datum");
  for (const auto& st : rt.lifted.lift.steps) CHECK(st.source == "replay");
}

TEST_CASE("scripted overrides are validated") {
  Weird w;
  // Rescaling X_sharp by 2 no longer realizes the residual.
  auto Y = DualElement(w.fr, Side::G, {q(w.F, 2, 25), q(w.F, 2, 25), q(w.F, 4, 25), q(w.F, 4, 25)});
  ScriptedOverride ov;
  ov.step = 0;
  ov.x_sharp = Y;
  LiftContext ctx(ChoiceStrategy::scripted({ov}));
  CHECK_THROWS_AS(lift_datum(w.delta(1, 2), w.fr, ctx), MathError);

  // A phi' with an extra lower level is accepted when it keeps the top realizer.
  auto X = DualElement(w.fr, Side::G, {q(w.F, 1, 25), q(w.F, 1, 25), q(w.F, 2, 25), q(w.F, 2, 25)});
  auto low = DualElement(w.fr, Side::G, {q(w.F, 1, 5), q(w.F, 1, 5), q(w.F, 0), q(w.F, 0)});
  ScriptedOverride ok;
  ok.step = 0;
  ok.phi_levels = std::vector<Level>{Level{R(1), low}, Level{R(2), X}};
  LiftContext ctx2(ChoiceStrategy::scripted({ok}));
  auto res = lift_datum(w.delta(1, 2), w.fr, ctx2);
  CHECK(res.lift.steps[0].source == "scripted");
  CHECK(res.validation.ok());
  CHECK(res.lift.product_identity);
}

TEST_CASE("input errors") {
  Pair P;
  auto x = P.th.scaled(R(1, 25));
  // Not H-generic: equal coordinates inside an H block.
  auto xi = canonical_char_from_realizer(P.S, R(2), P.hy({x, x, x, x}));
  LiftContext ctx(ChoiceStrategy::canonical());
  CHECK_THROWS_AS(lift_single(xi, P.H, P.G, R(0), ctx), InputError);
  auto good = canonical_char_from_realizer(P.S, R(2), P.hy({x, -x, x, -x}));
  CHECK_THROWS_AS(lift_single(good, P.H, P.G, R(2), ctx), InputError);
  CHECK_THROWS_AS(lift_single(good, P.S, P.G, R(0), ctx), InputError);
}
