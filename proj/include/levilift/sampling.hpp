#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "levilift/datum.hpp"

namespace levilift {

// Deterministic pseudo-random generator for test data. Integers are drawn with a plain
// modulo reduction so that streams agree across standard library implementations.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  long uniform(long lo, long hi);  // inclusive bounds
  bool coin() { return uniform(0, 1) == 1; }

  // Element of exact valuation val with `ndigits` random digits.
  FieldElement element(const FieldPtr& field, const Rational& val, int ndigits = 3);
  // Element of valuation >= val (may be zero).
  FieldElement element_at_least(const FieldPtr& field, const Rational& val, int ndigits = 3);

  // Galois-rational G-side element with coordinates of valuation >= -depth; optionally Gamma-fixed.
  DualElement rational_dual(const FramePtr& frame, const Rational& depth, bool gamma_fixed);
  // Same, but retries until the depth is exactly `depth`.
  std::optional<DualElement> rational_dual_exact(const FramePtr& frame, const Rational& depth, bool gamma_fixed,
                                                 int attempts = 32);

  // Gamma-stable G-side datum with Gamma-fixed rational realizers, built top-down by sharp parts.
  std::optional<CharacterDatum> stable_datum(const FramePtr& frame, int max_length, int attempts = 64);

  // H-side rational argument with every coordinate of valuation >= val.
  DualElement h_argument(const FramePtr& frame, const Rational& val);

 private:
  std::mt19937_64 rng_;
};

// Galois average of a G-side element: the rational projection.
DualElement galois_average(const DualElement& X);

// Block averages of X over the partition of L: the projection to the centre of Lie(L).
DualElement central_part(const DualElement& X, const TwistedLevi& L);

struct NamedFrame {
  std::string name;
  FramePtr frame;
};

// GL(4) frames over p = 5 and GL(6) frames over p = 7, covering f, e in {1, 2} and inner and outer Gamma.
std::vector<NamedFrame> sample_frames();

}  // namespace levilift
