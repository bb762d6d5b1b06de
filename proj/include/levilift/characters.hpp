#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "levilift/root_datum.hpp"

namespace levilift {

// One graded piece of a quasicharacter: a realizer of true depth `depth`.
struct Level {
  Rational depth;
  DualElement realizer;
};

// Formal depth-zero part: free abelian group on named symbols.
using Tail = std::map<std::string, long long>;

// Quasicharacter of a twisted Levi, stored as its normalized realizer list.
class QuasiCharacter {
 public:
  QuasiCharacter() = default;

  static QuasiCharacter trivial(const TwistedLevi& domain);
  // Checks declared depths, centrality and rationality, then normalizes.
  static QuasiCharacter make(const TwistedLevi& domain, const std::vector<Level>& levels, Tail tail);
  // Normalizes an arbitrary list of central realizers: each is filed at its true depth,
  // equal-depth realizers are added and refiled, realizers of depth <= 0 are dropped.
  static QuasiCharacter from_realizers(const TwistedLevi& domain, const std::vector<DualElement>& realizers,
                                       Tail tail = {});

  const TwistedLevi& domain() const { return domain_; }
  const std::vector<Level>& levels() const { return levels_; }
  const Tail& tail() const { return tail_; }
  bool is_trivial() const { return levels_.empty(); }

  // Exact equality of domain, levels and (optionally) tails.
  bool equals(const QuasiCharacter& o, bool compare_tails = false) const;

 private:
  TwistedLevi domain_;
  std::vector<Level> levels_;
  Tail tail_;
};

// Value of a character on a Lie-algebra argument: a p-power torsion element of Q/Z in [0, 1).
struct CharValue {
  Rational torsion;
  // The depth-zero tail is formal and never evaluated; set when a nonzero tail was skipped.
  bool tail_skipped = false;
};

Rational char_depth(const QuasiCharacter& chi);
QuasiCharacter char_mul(const QuasiCharacter& a, const QuasiCharacter& b);
QuasiCharacter char_inv(const QuasiCharacter& a);
std::pair<Rational, DualElement> realize_at_top(const QuasiCharacter& chi);
QuasiCharacter restrict_above_depth(const QuasiCharacter& chi, const Rational& s);
// Sum of the realizers of depth > s: realizes chi on the depth-s^+ filtration subgroup.
DualElement realizer_above(const QuasiCharacter& chi, const Rational& s);
QuasiCharacter restrict_to_group(const QuasiCharacter& chi, const TwistedLevi& L);
bool chars_equal_mod(const QuasiCharacter& a, const QuasiCharacter& b, const Rational& s, bool strict_tail = false);
// Trace-form pairing X(u) on the side of X.
FieldElement dual_pairing(const DualElement& X, const DualElement& u);
CharValue evaluate(const QuasiCharacter& chi, const DualElement& u);
QuasiCharacter canonical_char_from_realizer(const TwistedLevi& L, const Rational& r, const DualElement& X);

Rational frac(const Rational& x);

}  // namespace levilift
