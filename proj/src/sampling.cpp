#include "levilift/sampling.hpp"

#include <algorithm>

namespace levilift {

long Sampler::uniform(long lo, long hi) {
  if (hi < lo) throw InputError("empty sampling range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(rng_() % span);
}

FieldElement Sampler::element(const FieldPtr& field, const Rational& val, int ndigits) {
  std::vector<ResidueElem> digits;
  for (int i = 0; i < ndigits; ++i) {
    ResidueElem d(static_cast<size_t>(field->f()), 0);
    for (auto& c : d) c = uniform(0, field->p() - 1);
    if (i == 0 && std::all_of(d.begin(), d.end(), [](long c) { return c == 0; })) d[0] = uniform(1, field->p() - 1);
    digits.push_back(std::move(d));
  }
  return FieldElement::from_digits(field, val, digits);
}

FieldElement Sampler::element_at_least(const FieldPtr& field, const Rational& val, int ndigits) {
  if (uniform(0, 4) == 0) return FieldElement::zero(field);
  Rational v = val + Rational(uniform(0, 2), field->e());
  return element(field, v, ndigits);
}

DualElement galois_average(const DualElement& X) {
  if (X.side() != Side::G) throw InputError("galois_average needs a G-side element");
  const auto& frame = X.frame();
  const auto& F = frame->field();
  auto group = F->galois_group();
  DualElement sum = DualElement::zero(frame, Side::G);
  for (const auto& g : group) {
    auto perm = frame->galois_perm(g);
    std::vector<FieldElement> c(X.size(), FieldElement::zero(F));
    for (size_t k = 0; k < X.size(); ++k) c[static_cast<size_t>(perm[k])] = X[k].galois(g);
    sum = sum + DualElement(frame, Side::G, std::move(c));
  }
  return sum.scaled(Rational(1, static_cast<long>(group.size())));
}

DualElement central_part(const DualElement& X, const TwistedLevi& L) {
  const auto& frame = X.frame();
  std::vector<FieldElement> c(X.size(), FieldElement::zero(frame->field()));
  for (const auto& b : L.partition()) {
    FieldElement sum = FieldElement::zero(frame->field());
    for (int k : b) sum = sum + X[static_cast<size_t>(k)];
    FieldElement avg = sum.scaled(Rational(1, static_cast<long>(b.size())));
    for (int k : b) c[static_cast<size_t>(k)] = avg;
  }
  return DualElement(frame, Side::G, std::move(c));
}

DualElement Sampler::rational_dual(const FramePtr& frame, const Rational& depth, bool gamma_fixed) {
  std::vector<FieldElement> c;
  for (int k = 0; k < frame->n(); ++k) c.push_back(element_at_least(frame->field(), -depth));
  DualElement X = galois_average(DualElement(frame, Side::G, std::move(c)));
  return gamma_fixed ? gamma_average(X) : X;
}

std::optional<DualElement> Sampler::rational_dual_exact(const FramePtr& frame, const Rational& depth, bool gamma_fixed,
                                                        int attempts) {
  for (int a = 0; a < attempts; ++a) {
    DualElement X = rational_dual(frame, depth, gamma_fixed);
    if (!X.is_zero() && X.depth() == depth) return X;
  }
  return std::nullopt;
}

std::optional<CharacterDatum> Sampler::stable_datum(const FramePtr& frame, int max_length, int attempts) {
  const long e = frame->field()->e();
  const TwistedLevi G = TwistedLevi::full(frame);
  for (int a = 0; a < attempts; ++a) {
    const int len = static_cast<int>(uniform(1, max_length));
    std::vector<long> pool;
    for (long k = 1; k <= 4 * e; ++k) pool.push_back(k);
    std::vector<Rational> depths;
    for (int i = 0; i < len; ++i) {
      size_t idx = static_cast<size_t>(uniform(0, static_cast<long>(pool.size()) - 1));
      depths.push_back(Rational(pool[idx], e));
      pool.erase(pool.begin() + static_cast<long>(idx));
    }
    for (auto& d : depths) d.canonicalize();
    std::sort(depths.begin(), depths.end());

    bool ok = true;
    TwistedLevi M = G;
    std::vector<TwistedLevi> levis(static_cast<size_t>(len));
    std::vector<QuasiCharacter> chars(static_cast<size_t>(len));
    for (int i = len - 1; i >= 0 && ok; --i) {
      const Rational r = depths[static_cast<size_t>(i)];
      auto Y = rational_dual_exact(frame, r, true);
      if (!Y) {
        ok = false;
        break;
      }
      DualElement xs = sharp_flat(M, *Y, r).first;
      if (xs.is_zero() || xs.depth() != r) {
        ok = false;
        break;
      }
      TwistedLevi L = centralizer_levi(M, xs);
      if (L == M && i != len - 1) {
        ok = false;
        break;
      }
      std::vector<DualElement> realizers{xs};
      if (coin()) {
        Rational er = r * e;
        Rational lower = Rational(uniform(1, std::max<long>(1, er.get_num().get_si() - 1)), e);
        lower.canonicalize();
        if (lower < r) {
          auto Z = rational_dual_exact(frame, lower, true, 8);
          if (Z) {
            DualElement zc = central_part(*Z, L);
            if (!zc.is_zero() && zc.depth() < r && zc.depth() > 0) realizers.push_back(zc);
          }
        }
      }
      levis[static_cast<size_t>(i)] = L;
      chars[static_cast<size_t>(i)] = QuasiCharacter::from_realizers(L, realizers);
      M = L;
    }
    if (!ok) continue;
    CharacterDatum sigma;
    sigma.side = Side::G;
    sigma.levis = levis;
    sigma.levis.push_back(G);
    sigma.depths = depths;
    sigma.chars = chars;
    if (!validate_datum(sigma).ok() || !check_gamma_stable(sigma).stable) continue;
    return sigma;
  }
  return std::nullopt;
}

DualElement Sampler::h_argument(const FramePtr& frame, const Rational& val) {
  for (;;) {
    DualElement X = rational_dual(frame, -val, true);
    if (!X.is_zero()) return project_to_fixed(X);
  }
}

std::vector<NamedFrame> sample_frames() {
  FieldDesc q5;
  q5.p = 5;
  auto Q5 = Field::create(q5);
  FieldDesc u;
  u.p = 5;
  u.f = 2;
  u.residue_modulus = {3, 0, 1};
  auto U = Field::create(u);
  FieldDesc r;
  r.p = 5;
  r.e = 2;
  auto Ram = Field::create(r);
  FieldDesc q7;
  q7.p = 7;
  auto Q7 = Field::create(q7);
  FieldDesc u7;
  u7.p = 7;
  u7.f = 2;
  u7.residue_modulus = {1, 0, 1};
  auto U7 = Field::create(u7);

  std::vector<NamedFrame> out;
  out.push_back({"gl4-inner", TorusFrame::create(Q5, 4, {}, {}, {GammaElement{{0, 1, 2, 3}, 1, {}, {1, 1, -1, -1}}})});
  out.push_back({"gl4-unram-inner",
                 TorusFrame::create(U, 4, {1, 0, 3, 2}, {}, {GammaElement{{0, 1, 2, 3}, 1, {}, {1, 1, -1, -1}}})});
  out.push_back({"gl4-unram-sp4",
                 TorusFrame::create(U, 4, {1, 0, 3, 2}, {}, {GammaElement{{2, 3, 0, 1}, -1, {}, {1, 1, -1, -1}}})});
  out.push_back({"gl4-ram-inner",
                 TorusFrame::create(Ram, 4, {}, {1, 0, 3, 2}, {GammaElement{{0, 1, 2, 3}, 1, {}, {1, 1, -1, -1}}})});
  out.push_back({"gl4-swap", TorusFrame::create(Q5, 4, {}, {}, {GammaElement{{2, 3, 0, 1}, 1, {}, {}}})});
  out.push_back({"gl6-inner",
                 TorusFrame::create(Q7, 6, {}, {}, {GammaElement{{0, 1, 2, 3, 4, 5}, 1, {}, {1, 1, 1, -1, -1, -1}}})});
  out.push_back({"gl6-unram-inner", TorusFrame::create(U7, 6, {1, 0, 3, 2, 5, 4}, {},
                                                       {GammaElement{{0, 1, 2, 3, 4, 5}, 1, {}, {1, 1, -1, -1, 1, 1}}})});
  return out;
}

}  // namespace levilift
