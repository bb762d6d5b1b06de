#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "levilift/local_field.hpp"

namespace levilift {

// Which group a Levi or dual element belongs to: ambient G, or the fixed-point group H.
enum class Side { G, H };

std::string side_name(Side s);

// Integer functional on the coordinate space (G side) or on V^Gamma (H side).
using RootVec = std::vector<long>;
using RootSet = std::set<RootVec>;
// Set partition of {0, ..., n-1}; canonical form has sorted blocks ordered by first element.
using Partition = std::vector<std::vector<int>>;

Partition canonical_partition(Partition p);
std::string partition_string(const Partition& p);

// gamma = Ad(diag(inner)) o w_perm o delta^[sign = -1] composed with a Galois twist,
// where delta(Y) = -transpose(Y). On torus coordinates: (gamma X)_{perm(k)} = sign * g(X_k).
struct GammaElement {
  std::vector<int> perm;
  int sign = 1;
  GaloisElement galois;
  std::vector<int> inner;
  bool operator==(const GammaElement&) const = default;
};

class TorusFrame;
using FramePtr = std::shared_ptr<const TorusFrame>;

// Coordinates for a maximal torus of GL(n) split over E, with Galois and Gamma actions.
class TorusFrame {
 public:
  // Permutations are 0-based. Throws InputError when the actions are inconsistent.
  static FramePtr create(FieldPtr field, int n, std::vector<int> frobenius_perm, std::vector<int> ramification_perm,
                         std::vector<GammaElement> gamma_generators);

  const FieldPtr& field() const { return field_; }
  int n() const { return n_; }
  const std::vector<int>& frobenius_perm() const { return frob_; }
  const std::vector<int>& ramification_perm() const { return ram_; }
  std::vector<int> galois_perm(const GaloisElement& g) const;

  const std::vector<GammaElement>& gamma_generators() const { return gens_; }
  const std::vector<GammaElement>& gamma_elements() const { return elements_; }
  long gamma_order() const { return static_cast<long>(elements_.size()); }
  GammaElement gamma_compose(const GammaElement& second, const GammaElement& first) const;

  // Image pair and scalar of the root space E_{jk} under gamma.
  std::pair<std::pair<int, int>, int> root_space_action(const GammaElement& g, int j, int k) const;

  // Basis of V^Gamma: v_b = sum_{k in orbit b} s_k e_k.
  int fixed_dim() const { return static_cast<int>(orbits_.size()); }
  const std::vector<std::vector<int>>& fixed_orbits() const { return orbits_; }
  // Orbit index of coordinate k, or -1 when the orbit carries no fixed vector.
  int orbit_of(int k) const { return orbit_of_[static_cast<size_t>(k)]; }
  int coord_sign(int k) const { return signs_[static_cast<size_t>(k)]; }
  long weight(int b) const { return static_cast<long>(orbits_[static_cast<size_t>(b)].size()); }

  // Restriction of e_j - e_k to V^Gamma in the basis v_b.
  RootVec restrict_root(int j, int k) const;

 private:
  TorusFrame() = default;
  FieldPtr field_;
  int n_ = 0;
  std::vector<int> frob_;
  std::vector<int> ram_;
  std::vector<GammaElement> gens_;
  std::vector<GammaElement> elements_;
  std::vector<std::vector<int>> orbits_;
  std::vector<int> orbit_of_;
  std::vector<int> signs_;
};

// Linear functional on the torus Lie algebra over E, as coordinates.
// G side: n coordinates X_k. H side: fixed_dim coordinates y_b = s_k X_k for k in orbit b.
class DualElement {
 public:
  DualElement() = default;
  DualElement(FramePtr frame, Side side, std::vector<FieldElement> coords);
  static DualElement zero(const FramePtr& frame, Side side);

  const FramePtr& frame() const { return frame_; }
  Side side() const { return side_; }
  size_t size() const { return coords_.size(); }
  const FieldElement& operator[](size_t k) const { return coords_[k]; }
  const std::vector<FieldElement>& coords() const { return coords_; }

  bool is_zero() const;
  // Minimum coordinate valuation; depth is its negative.
  Valuation min_val() const;
  // -min_val; throws for the zero element.
  Rational depth() const;

  DualElement operator+(const DualElement& o) const;
  DualElement operator-(const DualElement& o) const;
  DualElement operator-() const;
  DualElement scaled(const Rational& r) const;
  bool operator==(const DualElement& o) const;
  bool operator!=(const DualElement& o) const { return !(*this == o); }

 private:
  void check_compatible(const DualElement& o) const;
  FramePtr frame_;
  Side side_ = Side::G;
  std::vector<FieldElement> coords_;
};

// Twisted Levi subgroup containing the fixed torus, recorded by its roots.
// G side: the roots are all e_j - e_k inside blocks of a Galois-stable partition.
// H side: restricted roots on V^Gamma supplied as a descriptor.
class TwistedLevi {
 public:
  TwistedLevi() = default;
  static TwistedLevi from_partition(const FramePtr& frame, Partition partition, std::string name = "");
  static TwistedLevi from_roots(const FramePtr& frame, Side side, RootSet roots, std::string name);
  static TwistedLevi full(const FramePtr& frame);
  static TwistedLevi torus(const FramePtr& frame, Side side);

  const FramePtr& frame() const { return frame_; }
  Side side() const { return side_; }
  const RootSet& roots() const { return roots_; }
  // Only meaningful on the G side.
  const Partition& partition() const { return partition_; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  bool contains(const TwistedLevi& other) const;
  bool operator==(const TwistedLevi& o) const { return side_ == o.side_ && roots_ == o.roots_; }
  bool operator!=(const TwistedLevi& o) const { return !(*this == o); }
  bool is_galois_stable() const;
  bool is_gamma_stable() const;
  // Block index of each coordinate (G side).
  std::vector<int> block_index() const;

 private:
  FramePtr frame_;
  Side side_ = Side::G;
  RootSet roots_;
  Partition partition_;
  std::string name_;
};

FieldElement coroot_pairing(const DualElement& X, int j, int k);
// sum_b a_b X_b; on the G side a = e_j - e_k gives X_j - X_k.
FieldElement root_pairing(const DualElement& X, const RootVec& a);

bool is_rational(const DualElement& X);
DualElement act_gamma(const GammaElement& g, const DualElement& X);
bool is_gamma_fixed(const DualElement& X);
DualElement gamma_average(const DualElement& X);
// G side Gamma-fixed element to V^Gamma coordinates and back.
DualElement project_to_fixed(const DualElement& X);
DualElement lift_from_fixed(const DualElement& Y);

bool is_central_for(const DualElement& X, const TwistedLevi& L);
TwistedLevi centralizer_levi(const TwistedLevi& M, const DualElement& X);
// Ordered pairs j < k inside M-blocks with pairing zero or of valuation > -t (G side).
std::vector<std::pair<int, int>> phi_prime(const TwistedLevi& M, const DualElement& X, const Rational& t);
Partition phi_prime_classes(const TwistedLevi& M, const DualElement& X, const Rational& t);
std::pair<DualElement, DualElement> sharp_flat(const TwistedLevi& M, const DualElement& X, const Rational& t);
bool is_generic(const DualElement& X, const Rational& t, const TwistedLevi& Mprime, const TwistedLevi& M);

RootSet fixed_point_restricted_roots(const TwistedLevi& L);
TwistedLevi fixed_levi(const TwistedLevi& L);
bool fixed_levi_equals(const TwistedLevi& L, const TwistedLevi& Hlevi);

// All Galois- and Gamma-stable partitions of the frame (small n only).
std::vector<Partition> stable_partitions(const FramePtr& frame);

}  // namespace levilift
