#include "levilift/datum.hpp"

namespace levilift {

namespace {

TwistedLevi default_ambient(const CharacterDatum& sigma) {
  const auto& frame = sigma.levis.back().frame();
  TwistedLevi G = TwistedLevi::full(frame);
  if (sigma.side == Side::G) return G;
  return fixed_levi(G);
}

}  // namespace

bool ValidationReport::ok() const {
  for (const auto& c : conditions) {
    if (!c.pass) return false;
  }
  return true;
}

ValidationReport validate_datum(const CharacterDatum& sigma, const TwistedLevi* ambient) {
  ValidationReport rep;
  ConditionResult cd1{"CD1", true, {}}, cd2{"CD2", true, {}}, cd3{"CD3", true, {}}, cd4{"CD4", true, {}};
  auto fail = [](ConditionResult& c, std::string msg) {
    c.pass = false;
    c.messages.push_back(std::move(msg));
  };

  const size_t d1 = sigma.depths.size();
  bool shape_ok = true;
  if (d1 == 0 || sigma.levis.size() != d1 + 1 || sigma.chars.size() != d1) {
    fail(cd1, "shape: need depths = chars = levis - 1 >= 1");
    shape_ok = false;
  }
  if (shape_ok) {
    for (const auto& L : sigma.levis) {
      if (L.side() != sigma.side) fail(cd1, "Levi " + L.name() + " is on the wrong side");
    }
  }
  if (shape_ok && cd1.pass) {
    for (size_t i = 0; i + 1 < sigma.levis.size(); ++i) {
      const auto& a = sigma.levis[i];
      const auto& b = sigma.levis[i + 1];
      if (!b.contains(a)) {
        fail(cd1, "levis[" + std::to_string(i) + "] = " + a.name() + " is not contained in " + b.name());
      } else if (a == b && i + 2 < sigma.levis.size()) {
        fail(cd1, "containment levis[" + std::to_string(i) + "] = levis[" + std::to_string(i + 1) + "] must be strict");
      }
    }
    TwistedLevi amb = ambient ? *ambient : default_ambient(sigma);
    if (sigma.levis.back() != amb) fail(cd1, "last Levi " + sigma.levis.back().name() + " is not the ambient group");
  }

  if (sigma.point != "standard") fail(cd2, "point '" + sigma.point + "' is not the standard Gamma-fixed point");

  for (size_t i = 0; i < d1; ++i) {
    if (sigma.depths[i] <= 0) fail(cd3, "depth r" + std::to_string(i) + " = " + to_string(sigma.depths[i]) + " is not positive");
    if (i > 0 && !(sigma.depths[i - 1] < sigma.depths[i])) {
      fail(cd3, "depths r" + std::to_string(i - 1) + " < r" + std::to_string(i) + " violated");
    }
  }

  if (shape_ok && cd1.pass) {
    for (size_t i = 0; i < d1; ++i) {
      const auto& chi = sigma.chars[i];
      const std::string tag = "chars[" + std::to_string(i) + "]";
      if (chi.domain() != sigma.levis[i]) {
        fail(cd4, tag + " lives on " + chi.domain().name() + ", expected " + sigma.levis[i].name());
        continue;
      }
      if (char_depth(chi) != sigma.depths[i]) {
        fail(cd4, tag + " has depth " + to_string(char_depth(chi)) + ", expected " + to_string(sigma.depths[i]));
        continue;
      }
      for (const auto& lv : chi.levels()) {
        if (!is_rational(lv.realizer)) fail(cd4, tag + " has a realizer that is not Galois-rational");
      }
      auto [r, X] = realize_at_top(chi);
      if (!is_generic(X, r, sigma.levis[i], sigma.levis[i + 1])) {
        fail(cd4, tag + " is not " + sigma.levis[i + 1].name() + "-generic of depth " + to_string(r));
      }
    }
  }
  rep.conditions = {cd1, cd2, cd3, cd4};
  return rep;
}

StabilityReport check_gamma_stable(const CharacterDatum& sigma) {
  StabilityReport rep;
  if (sigma.side != Side::G) return rep;
  const auto& gens = sigma.levis.back().frame()->gamma_generators();
  for (size_t i = 0; i < sigma.levis.size(); ++i) {
    const auto& L = sigma.levis[i];
    for (size_t g = 0; g < gens.size(); ++g) {
      bool stable = true;
      for (const auto& a : L.roots()) {
        int j = -1, k = -1;
        for (size_t c = 0; c < a.size(); ++c) {
          if (a[c] == 1) j = static_cast<int>(c);
          if (a[c] == -1) k = static_cast<int>(c);
        }
        RootVec img(a.size(), 0);
        img[static_cast<size_t>(gens[g].perm[static_cast<size_t>(j)])] = 1;
        img[static_cast<size_t>(gens[g].perm[static_cast<size_t>(k)])] = -1;
        if (!L.roots().count(img)) {
          stable = false;
          break;
        }
      }
      if (!stable) {
        rep.stable = false;
        rep.witness = StabilityWitness{static_cast<int>(i), static_cast<int>(g), "levi", L.name(),
                                       "Levi " + L.name() + " is not Gamma-stable"};
        return rep;
      }
    }
    if (i >= sigma.chars.size()) continue;
    const Rational s = sigma.depths[i] / 2;
    DualElement X = realizer_above(sigma.chars[i], s);
    for (size_t g = 0; g < gens.size(); ++g) {
      DualElement diff = act_gamma(gens[g], X) - X;
      if (!diff.is_zero() && diff.depth() > s) {
        rep.stable = false;
        rep.witness = StabilityWitness{static_cast<int>(i), static_cast<int>(g), "realizer", L.name(),
                                       "gamma X - X has depth " + to_string(diff.depth()) + " > s = " + to_string(s)};
        return rep;
      }
    }
  }
  return rep;
}

std::string catalog_name(const LeviCatalog& catalog, const TwistedLevi& L) {
  for (const auto& c : catalog) {
    if (c == L && !c.name().empty()) return c.name();
  }
  return L.name();
}

CharacterDatum restrict_datum(const CharacterDatum& sigma, const LeviCatalog& catalog) {
  if (sigma.side != Side::G) throw InputError("restrict_datum needs a G-side datum");
  auto stab = check_gamma_stable(sigma);
  if (!stab.stable) throw MathError("restriction of a datum that is not Gamma-stable: " + stab.witness->detail);
  const size_t d1 = sigma.length();
  std::vector<QuasiCharacter> fixed_chars;
  for (const auto& chi : sigma.chars) {
    std::vector<DualElement> xs;
    for (const auto& lv : chi.levels()) xs.push_back(gamma_average(lv.realizer));
    fixed_chars.push_back(QuasiCharacter::from_realizers(chi.domain(), xs, chi.tail()));
  }
  std::vector<TwistedLevi> F;
  for (const auto& L : sigma.levis) {
    TwistedLevi f = fixed_levi(L);
    f.set_name(catalog_name(catalog, f));
    if (f.name().empty()) f.set_name("fixed" + L.name());
    F.push_back(f);
  }
  CharacterDatum out;
  out.side = Side::H;
  out.point = sigma.point;
  size_t i = 0;
  while (i < d1) {
    size_t j = i;
    while (j + 1 < d1 && F[j + 1] == F[i]) ++j;
    QuasiCharacter prod = QuasiCharacter::trivial(F[i]);
    for (size_t k = i; k <= j; ++k) prod = char_mul(prod, restrict_to_group(fixed_chars[k], F[i]));
    out.levis.push_back(F[i]);
    out.depths.push_back(sigma.depths[j]);
    out.chars.push_back(prod);
    i = j + 1;
  }
  out.levis.push_back(F[d1]);
  return out;
}

RefactorizationReport check_refactorization(const CharacterDatum& sigma, const CharacterDatum& other) {
  RefactorizationReport rep;
  auto shape_fail = [&](const std::string& m) {
    rep.ok = false;
    rep.message = m;
    return rep;
  };
  if (sigma.side != other.side) return shape_fail("data live on different sides");
  if (sigma.levis.size() != other.levis.size()) return shape_fail("Levi sequences have different lengths");
  for (size_t i = 0; i < sigma.levis.size(); ++i) {
    if (sigma.levis[i] != other.levis[i]) {
      return shape_fail("levis[" + std::to_string(i) + "] differ: " + sigma.levis[i].name() + " vs " + other.levis[i].name());
    }
  }
  if (sigma.point != other.point) return shape_fail("points differ");
  if (sigma.depths != other.depths) return shape_fail("depth sequences differ");
  if (sigma.chars.size() != other.chars.size()) return shape_fail("character sequences have different lengths");
  const size_t d1 = sigma.length();
  for (size_t i = 0; i < d1; ++i) {
    QuasiCharacter q = QuasiCharacter::trivial(sigma.levis[i]);
    for (size_t j = i; j < d1; ++j) {
      q = char_mul(q, restrict_to_group(sigma.chars[j], sigma.levis[i]));
      q = char_mul(q, char_inv(restrict_to_group(other.chars[j], sigma.levis[i])));
    }
    Rational bound = i == 0 ? Rational(0) : sigma.depths[i - 1];
    if (char_depth(q) > bound) {
      rep.ok = false;
      rep.failing_index = static_cast<int>(i);
      rep.message = "Q_" + std::to_string(i) + " has depth " + to_string(char_depth(q)) + " > " + to_string(bound);
      return rep;
    }
  }
  return rep;
}

std::vector<GroupFactor> group_descriptor(const CharacterDatum& sigma) {
  std::vector<GroupFactor> out;
  for (size_t i = 0; i < sigma.length(); ++i) {
    out.push_back(GroupFactor{sigma.levis[i], i == 0 ? Rational(0) : sigma.depths[i - 1] / 2});
  }
  return out;
}

std::vector<ThetaSummand> theta_descriptor(const CharacterDatum& sigma) {
  std::vector<ThetaSummand> out;
  for (size_t i = 0; i < sigma.length(); ++i) out.push_back(ThetaSummand{sigma.chars[i], sigma.depths[i] / 2});
  return out;
}

CharValue theta_evaluate(const CharacterDatum& sigma, const DualElement& u, int k) {
  const int d1 = static_cast<int>(sigma.length());
  if (k < 0 || k >= d1) throw InputError("factor index out of range");
  CharValue out;
  out.torsion = 0;
  if (u.is_zero()) return out;
  Rational d = u.min_val().value();
  if (k > 0 && !(d > sigma.depths[static_cast<size_t>(k - 1)] / 2)) {
    throw InputError("argument depth " + to_string(d) + " is not above s_" + std::to_string(k - 1));
  }
  for (int i = k; i < d1; ++i) {
    if (!(d > sigma.depths[static_cast<size_t>(i)] / 2)) {
      throw InputError("argument depth " + to_string(d) + " is outside the linear regime of factor " + std::to_string(i));
    }
  }
  Rational total(0);
  for (int i = 0; i < d1; ++i) {
    CharValue v = evaluate(sigma.chars[static_cast<size_t>(i)], u);
    total += v.torsion;
    out.tail_skipped = out.tail_skipped || v.tail_skipped;
  }
  out.torsion = frac(total);
  return out;
}

}  // namespace levilift
