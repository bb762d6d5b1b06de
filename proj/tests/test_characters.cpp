#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "levilift/characters.hpp"

using namespace levilift;

namespace {

Rational R(long a, long b = 1) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

struct Ctx {
  FieldPtr F;
  FramePtr fr;
  TwistedLevi G;
  Ctx(int n = 2) {
    FieldDesc d;
    d.p = 5;
    F = Field::create(d);
    fr = TorusFrame::create(F, n, {}, {}, {});
    G = TwistedLevi::full(fr);
  }
  FieldElement q(long a, long b = 1) const { return FieldElement::from_rational(F, R(a, b)); }
  DualElement scalar(long a, long b) const {
    return DualElement(fr, Side::G, std::vector<FieldElement>(static_cast<size_t>(fr->n()), q(a, b)));
  }
};

}  // namespace

TEST_CASE("depth and normalization") {
  Ctx c;
  auto triv = QuasiCharacter::trivial(c.G);
  CHECK(char_depth(triv) == 0);
  auto X = c.scalar(1, 125);
  auto chi = canonical_char_from_realizer(c.G, R(3), X);
  CHECK(char_depth(chi) == 3);
  auto A = c.scalar(1, 5);
  auto two = char_mul(canonical_char_from_realizer(c.G, R(1), A), chi);
  REQUIRE(two.levels().size() == 2);
  CHECK(char_depth(two) == 3);
  CHECK(two.levels()[0].depth == 1);
}

TEST_CASE("multiplication, inversion and refiling") {
  Ctx c;
  auto X = c.scalar(1, 125);
  auto Y = c.scalar(3, 25);
  auto chi = canonical_char_from_realizer(c.G, R(3), X);
  CHECK(char_mul(chi, char_inv(chi)).is_trivial());
  auto other = canonical_char_from_realizer(c.G, R(3), -X + Y);
  auto prod = char_mul(chi, other);
  REQUIRE(prod.levels().size() == 1);
  CHECK(prod.levels()[0].depth == 2);
  CHECK(prod.levels()[0].realizer == Y);
  auto top = realize_at_top(prod);
  CHECK(top.first == 2);
  CHECK(top.second == Y);
  // Cascading merge: 1/125 + (-1/125 + 1/25) lands on an existing depth-2 level.
  auto base = canonical_char_from_realizer(c.G, R(2), c.scalar(1, 25));
  auto merged = char_mul(char_mul(chi, base), canonical_char_from_realizer(c.G, R(3), -X + c.scalar(-1, 25) + c.scalar(1, 5)));
  REQUIRE(merged.levels().size() == 1);
  CHECK(merged.levels()[0].depth == 1);
  CHECK_THROWS_AS(realize_at_top(QuasiCharacter::trivial(c.G)), InputError);
}

TEST_CASE("group laws on samples") {
  Ctx c;
  auto a = canonical_char_from_realizer(c.G, R(3), c.scalar(2, 125));
  auto b = char_mul(canonical_char_from_realizer(c.G, R(1), c.scalar(1, 5)),
                    canonical_char_from_realizer(c.G, R(3), c.scalar(4, 125)));
  auto d = canonical_char_from_realizer(c.G, R(2), c.scalar(7, 25));
  CHECK(char_mul(char_mul(a, b), d).equals(char_mul(a, char_mul(b, d))));
  CHECK(char_mul(a, b).equals(char_mul(b, a)));
  CHECK(char_mul(b, char_inv(b)).is_trivial());
  auto s = R(3, 2);
  CHECK(restrict_above_depth(char_mul(a, b), s).equals(char_mul(restrict_above_depth(a, s), restrict_above_depth(b, s))));
}

TEST_CASE("restrict_above_depth") {
  Ctx c;
  Tail t{{"chi0", 1}};
  auto chi = QuasiCharacter::from_realizers(c.G, {c.scalar(1, 5), c.scalar(1, 125)}, t);
  CHECK(restrict_above_depth(chi, R(0)).levels().size() == 2);
  CHECK(restrict_above_depth(chi, R(0)).tail().empty());
  CHECK(restrict_above_depth(chi, R(3)).is_trivial());
  auto top = restrict_above_depth(chi, R(2));
  REQUIRE(top.levels().size() == 1);
  CHECK(top.levels()[0].depth == 3);
}

TEST_CASE("restriction to subgroups") {
  Ctx c(4);
  auto H = TwistedLevi::from_partition(c.fr, {{0, 1}, {2, 3}});
  auto chi = canonical_char_from_realizer(c.G, R(2), c.scalar(1, 25));
  auto r = restrict_to_group(chi, H);
  CHECK(r.domain() == H);
  CHECK(r.levels().size() == 1);
  CHECK(restrict_to_group(chi, c.G).equals(chi));

  auto fr = TorusFrame::create(c.F, 4, {}, {}, {GammaElement{{2, 3, 0, 1}, 1, {}, {}}});
  auto G = TwistedLevi::full(fr);
  auto a = c.q(1, 25), b = c.q(2, 25);
  auto X = DualElement(fr, Side::G, {a, b, a, b});
  auto psi = canonical_char_from_realizer(TwistedLevi::from_partition(fr, {{0, 2}, {1, 3}}), R(2), X);
  auto Hfix = TwistedLevi::from_roots(fr, Side::H, {}, "S");
  auto res = restrict_to_group(psi, Hfix);
  REQUIRE(res.levels().size() == 1);
  CHECK(res.levels()[0].realizer == DualElement(fr, Side::H, {a, b}));
  auto bad = canonical_char_from_realizer(TwistedLevi::torus(fr, Side::G), R(2), DualElement(fr, Side::G, {a, b, b, a}));
  CHECK_THROWS_AS(restrict_to_group(bad, Hfix), MathError);
  (void)G;
}

TEST_CASE("chars_equal_mod") {
  Ctx c;
  auto X = c.scalar(1, 125);
  auto chi = canonical_char_from_realizer(c.G, R(3), X);
  CHECK(chars_equal_mod(chi, chi, R(0)));
  auto near = canonical_char_from_realizer(c.G, R(3), X + c.scalar(1, 5));
  CHECK(chars_equal_mod(chi, near, R(3, 2)));
  auto far = canonical_char_from_realizer(c.G, R(3), c.scalar(2, 125));
  CHECK_FALSE(chars_equal_mod(chi, far, R(3, 2)));
  auto tailed = QuasiCharacter::from_realizers(c.G, {X}, Tail{{"z", 2}});
  CHECK(chars_equal_mod(chi, tailed, R(0)));
  CHECK_FALSE(chars_equal_mod(chi, tailed, R(0), true));
}

TEST_CASE("evaluation by psi of the trace pairing") {
  Ctx c(1);
  auto chi = canonical_char_from_realizer(c.G, R(3), c.scalar(1, 125));
  CHECK(evaluate(chi, DualElement::zero(c.fr, Side::G)).torsion == 0);
  CHECK(evaluate(chi, c.scalar(625, 1)).torsion == 0);
  // X u = 1/5, psi(1/5) = 1/25.
  CHECK(evaluate(chi, c.scalar(25, 1)).torsion == R(1, 25));
  auto u = c.scalar(25, 1), v = c.scalar(3 * 25, 1);
  CHECK(evaluate(chi, u + v).torsion == frac(evaluate(chi, u).torsion + evaluate(chi, v).torsion));
  CHECK_THROWS_AS(evaluate(chi, c.scalar(5, 1)), InputError);
}

TEST_CASE("canonical character errors") {
  Ctx c(2);
  auto X = DualElement(c.fr, Side::G, {c.q(1, 25), c.q(2, 25)});
  CHECK_THROWS_AS(canonical_char_from_realizer(c.G, R(2), X), InputError);
  CHECK_THROWS_AS(canonical_char_from_realizer(TwistedLevi::torus(c.fr, Side::G), R(3), X), InputError);
  auto ok = canonical_char_from_realizer(TwistedLevi::torus(c.fr, Side::G), R(2), X);
  CHECK(restrict_above_depth(ok, R(1)).levels()[0].realizer == X);
}
