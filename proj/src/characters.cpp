#include "levilift/characters.hpp"

#include <algorithm>

namespace levilift {

namespace {

void add_tail(Tail& into, const Tail& from, long long sign) {
  for (const auto& [k, v] : from) {
    into[k] += sign * v;
    if (into[k] == 0) into.erase(k);
  }
}

// Files X into the depth-sorted map, merging and refiling on cancellation.
void file_realizer(std::map<Rational, DualElement>& by_depth, DualElement X) {
  while (true) {
    if (X.is_zero()) return;
    Rational d = X.depth();
    if (d <= 0) return;
    auto it = by_depth.find(d);
    if (it == by_depth.end()) {
      by_depth.emplace(d, std::move(X));
      return;
    }
    DualElement sum = it->second + X;
    by_depth.erase(it);
    X = std::move(sum);
  }
}

const TwistedLevi& common_domain(const QuasiCharacter& a, const QuasiCharacter& b) {
  const auto& da = a.domain();
  const auto& db = b.domain();
  if (da == db) return da;
  if (da.side() == db.side()) {
    if (da.contains(db)) return db;
    if (db.contains(da)) return da;
  }
  throw InputError("characters on incomparable domains " + da.name() + " and " + db.name());
}

}  // namespace

Rational frac(const Rational& x) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  Rational r = x - Rational(fl);
  r.canonicalize();
  return r;
}

QuasiCharacter QuasiCharacter::trivial(const TwistedLevi& domain) {
  QuasiCharacter c;
  c.domain_ = domain;
  return c;
}

QuasiCharacter QuasiCharacter::from_realizers(const TwistedLevi& domain, const std::vector<DualElement>& realizers,
                                              Tail tail) {
  std::map<Rational, DualElement> by_depth;
  for (const auto& X : realizers) {
    if (X.side() != domain.side() || X.frame() != domain.frame()) {
      throw InputError("realizer does not match the character domain");
    }
    file_realizer(by_depth, X);
  }
  QuasiCharacter c;
  c.domain_ = domain;
  for (auto& [d, X] : by_depth) {
    if (!is_central_for(X, domain)) throw MathError("realizer is not central for " + domain.name());
    c.levels_.push_back(Level{d, X});
  }
  Tail clean;
  add_tail(clean, tail, 1);
  c.tail_ = std::move(clean);
  return c;
}

QuasiCharacter QuasiCharacter::make(const TwistedLevi& domain, const std::vector<Level>& levels, Tail tail) {
  std::vector<DualElement> xs;
  for (size_t i = 0; i < levels.size(); ++i) {
    const auto& lv = levels[i];
    if (lv.depth <= 0) throw InputError("level depth must be positive");
    if (i > 0 && !(levels[i - 1].depth < lv.depth)) throw InputError("level depths must be strictly increasing");
    if (lv.realizer.is_zero()) throw InputError("level realizer must be nonzero");
    if (lv.realizer.depth() != lv.depth) {
      throw InputError("realizer depth " + to_string(lv.realizer.depth()) + " differs from declared depth " +
                       to_string(lv.depth));
    }
    if (!is_central_for(lv.realizer, domain)) throw InputError("realizer is not central for " + domain.name());
    if (!is_rational(lv.realizer)) throw InputError("realizer is not Galois-rational");
    xs.push_back(lv.realizer);
  }
  return from_realizers(domain, xs, std::move(tail));
}

bool QuasiCharacter::equals(const QuasiCharacter& o, bool compare_tails) const {
  if (domain_ != o.domain_ || levels_.size() != o.levels_.size()) return false;
  for (size_t i = 0; i < levels_.size(); ++i) {
    if (levels_[i].depth != o.levels_[i].depth || levels_[i].realizer != o.levels_[i].realizer) return false;
  }
  return !compare_tails || tail_ == o.tail_;
}

Rational char_depth(const QuasiCharacter& chi) {
  if (chi.levels().empty()) return Rational(0);
  return chi.levels().back().depth;
}

QuasiCharacter char_mul(const QuasiCharacter& a, const QuasiCharacter& b) {
  const TwistedLevi& dom = common_domain(a, b);
  std::vector<DualElement> xs;
  for (const auto& lv : a.levels()) xs.push_back(lv.realizer);
  for (const auto& lv : b.levels()) xs.push_back(lv.realizer);
  Tail t = a.tail();
  add_tail(t, b.tail(), 1);
  return QuasiCharacter::from_realizers(dom, xs, t);
}

QuasiCharacter char_inv(const QuasiCharacter& a) {
  std::vector<DualElement> xs;
  for (const auto& lv : a.levels()) xs.push_back(-lv.realizer);
  Tail t;
  add_tail(t, a.tail(), -1);
  return QuasiCharacter::from_realizers(a.domain(), xs, t);
}

std::pair<Rational, DualElement> realize_at_top(const QuasiCharacter& chi) {
  if (chi.levels().empty()) throw InputError("realize_at_top of a depth-zero character");
  return {chi.levels().back().depth, chi.levels().back().realizer};
}

QuasiCharacter restrict_above_depth(const QuasiCharacter& chi, const Rational& s) {
  std::vector<DualElement> xs;
  for (const auto& lv : chi.levels()) {
    if (lv.depth > s) xs.push_back(lv.realizer);
  }
  return QuasiCharacter::from_realizers(chi.domain(), xs);
}

DualElement realizer_above(const QuasiCharacter& chi, const Rational& s) {
  DualElement sum = DualElement::zero(chi.domain().frame(), chi.domain().side());
  for (const auto& lv : chi.levels()) {
    if (lv.depth > s) sum = sum + lv.realizer;
  }
  return sum;
}

QuasiCharacter restrict_to_group(const QuasiCharacter& chi, const TwistedLevi& L) {
  const TwistedLevi& dom = chi.domain();
  if (L.side() == dom.side()) {
    if (!dom.contains(L)) throw InputError("restriction target " + L.name() + " is not inside " + dom.name());
    std::vector<DualElement> xs;
    for (const auto& lv : chi.levels()) xs.push_back(lv.realizer);
    return QuasiCharacter::from_realizers(L, xs, chi.tail());
  }
  if (dom.side() != Side::G) throw InputError("cannot restrict an H-side character to a G-side Levi");
  std::vector<DualElement> ys;
  for (const auto& lv : chi.levels()) {
    if (!is_gamma_fixed(lv.realizer)) throw MathError("non-Gamma-fixed realizer restricted to the fixed-point group");
    ys.push_back(project_to_fixed(lv.realizer));
  }
  if (!fixed_levi(dom).contains(L)) {
    throw InputError("restriction target " + L.name() + " is not inside the fixed points of " + dom.name());
  }
  return QuasiCharacter::from_realizers(L, ys, chi.tail());
}

bool chars_equal_mod(const QuasiCharacter& a, const QuasiCharacter& b, const Rational& s, bool strict_tail) {
  if (a.domain() != b.domain()) throw InputError("chars_equal_mod needs equal domains");
  QuasiCharacter q = char_mul(a, char_inv(b));
  if (char_depth(q) > s) return false;
  return !strict_tail || q.tail().empty();
}

FieldElement dual_pairing(const DualElement& X, const DualElement& u) {
  if (X.side() != u.side() || X.frame() != u.frame()) throw InputError("pairing across frames or sides");
  FieldElement sum = FieldElement::zero(X.frame()->field());
  for (size_t k = 0; k < X.size(); ++k) {
    if (X[k].is_zero() || u[k].is_zero()) continue;
    FieldElement term = X[k] * u[k];
    if (X.side() == Side::H) term = term.scaled(Rational(X.frame()->weight(static_cast<int>(k))));
    sum = sum + term;
  }
  return sum;
}

CharValue evaluate(const QuasiCharacter& chi, const DualElement& u) {
  CharValue out;
  out.torsion = 0;
  out.tail_skipped = !chi.tail().empty();
  if (u.is_zero()) return out;
  const auto& F = u.frame()->field();
  if ((static_cast<long>(F->e()) * F->f()) % F->p() == 0) throw InputError("e*f divisible by p: trace pairing degenerates");
  Rational d = u.min_val().value();
  if (!(d > char_depth(chi) / 2)) {
    throw InputError("argument depth " + to_string(d) + " is outside the linear regime (needs > " +
                     to_string(char_depth(chi) / 2) + ")");
  }
  Rational total(0);
  for (const auto& lv : chi.levels()) total += psi_value(trace_to_base(dual_pairing(lv.realizer, u)));
  out.torsion = frac(total);
  return out;
}

QuasiCharacter canonical_char_from_realizer(const TwistedLevi& L, const Rational& r, const DualElement& X) {
  if (X.is_zero() || X.depth() != r) throw InputError("realizer depth does not match " + to_string(r));
  if (!is_central_for(X, L)) throw InputError("realizer is not central for " + L.name());
  return QuasiCharacter::from_realizers(L, {X});
}

}  // namespace levilift
