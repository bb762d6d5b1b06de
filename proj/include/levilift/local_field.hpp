#pragma once

#include <memory>
#include <vector>

#include "levilift/rational.hpp"

namespace levilift {

// Tame Galois extension E/Q_p: unramified degree f, ramification degree e.
struct FieldDesc {
  long p = 5;
  int f = 1;
  int e = 1;
  // Monic degree-f polynomial over F_p, coefficients c_0..c_f.
  std::vector<long> residue_modulus{0, 1};
  int precision = 16;
};

// Frobenius power mod f and ramification twist mod e.
// (a, j) acts on x = sum c_i pi^i by sum sigma^a(c_i) zeta_e^(i j) pi^i.
struct GaloisElement {
  int frob_pow = 0;
  int ram_twist = 0;
  bool operator==(const GaloisElement&) const = default;
};

// Residue field element as coefficients in the basis 1, z, ..., z^(f-1).
using ResidueElem = std::vector<long>;

class FieldElement;

// Arithmetic context. Values live exactly in the number field Q(zeta_m)(pi)
// with pi^e = p, completed at a fixed prime above p.
class Field {
 public:
  static std::shared_ptr<const Field> create(const FieldDesc& desc);

  const FieldDesc& desc() const { return desc_; }
  long p() const { return desc_.p; }
  int f() const { return desc_.f; }
  int e() const { return desc_.e; }
  int precision() const { return desc_.precision; }
  long residue_size() const { return q_; }
  int cyclotomic_order() const { return m_; }

  // Same arithmetic context up to precision.
  bool same_extension(const Field& other) const;

  GaloisElement compose(const GaloisElement& a, const GaloisElement& b) const;
  GaloisElement inverse(const GaloisElement& g) const;
  GaloisElement normalize(const GaloisElement& g) const;
  std::vector<GaloisElement> galois_group() const;
  GaloisElement frobenius() const { return normalize({1, 0}); }
  GaloisElement ramification_generator() const { return normalize({0, 1}); }

  ResidueElem res_zero() const { return ResidueElem(static_cast<size_t>(f()), 0); }
  ResidueElem res_add(const ResidueElem& a, const ResidueElem& b) const;
  ResidueElem res_mul(const ResidueElem& a, const ResidueElem& b) const;
  ResidueElem res_pow(const ResidueElem& a, long k) const;
  ResidueElem res_inv(const ResidueElem& a) const;
  bool res_is_zero(const ResidueElem& a) const;
  ResidueElem res_normalize(const ResidueElem& a) const;

 private:
  friend class FieldElement;
  using LElem = std::vector<Rational>;

  explicit Field(const FieldDesc& desc);

  LElem l_zero() const { return LElem(static_cast<size_t>(phi_), Rational(0)); }
  LElem l_const(const Rational& c) const;
  LElem l_add(const LElem& a, const LElem& b) const;
  LElem l_sub(const LElem& a, const LElem& b) const;
  LElem l_scale(const LElem& a, const Rational& c) const;
  LElem l_mul(const LElem& a, const LElem& b) const;
  LElem l_shift_w(const LElem& a, long k) const;
  LElem l_automorphism(const LElem& a, long exponent) const;
  bool l_is_zero(const LElem& a) const;
  ResidueElem l_residue_integral(const LElem& a) const;
  // Exact valuation at the chosen prime and residue of a / p^v.
  std::pair<long, ResidueElem> l_valuation(const LElem& a) const;
  LElem residue_lift(const ResidueElem& d) const;

  FieldDesc desc_;
  long q_ = 0;
  int m_ = 1;
  int phi_ = 1;
  std::vector<long> cyclotomic_;
  std::vector<LElem> w_powers_;
  ResidueElem y_;
  std::vector<ResidueElem> y_powers_;
  std::vector<LElem> theta_powers_;
  LElem multiplier_;
  ResidueElem multiplier_residue_inv_;
};

using FieldPtr = std::shared_ptr<const Field>;

class FieldElement {
 public:
  FieldElement() = default;

  static FieldElement zero(const FieldPtr& field);
  static FieldElement one(const FieldPtr& field);
  static FieldElement from_rational(const FieldPtr& field, const Rational& r);
  static FieldElement uniformizer(const FieldPtr& field);
  // Fixed representative of a residue class: sum c_j theta^j with theta the
  // Teichmuller lift of z.
  static FieldElement residue_lift(const FieldPtr& field, const ResidueElem& d);
  // sum_i L(digits[i]) pi^(e*val + i). Digit entries may be any integers.
  static FieldElement from_digits(const FieldPtr& field, const Rational& val,
                                  const std::vector<ResidueElem>& digits);

  const FieldPtr& field() const { return field_; }
  bool is_zero() const { return val_.is_infinite(); }
  const Valuation& val() const { return val_; }

  // Canonical digits with entries in [0, p), at most `limit` of them
  // (default: precision). Stops early when the expansion terminates.
  std::vector<ResidueElem> digits(int limit = -1) const;
  ResidueElem leading_digit() const;

  FieldElement operator-() const;
  FieldElement operator+(const FieldElement& other) const;
  FieldElement operator-(const FieldElement& other) const;
  FieldElement operator*(const FieldElement& other) const;
  FieldElement scaled(const Rational& r) const;
  FieldElement inverse() const;
  // Multiply by pi^k.
  FieldElement shifted(long k) const;
  bool operator==(const FieldElement& other) const;
  bool operator!=(const FieldElement& other) const { return !(*this == other); }

  FieldElement galois(const GaloisElement& g) const;
  bool in_base_field() const;

 private:
  using LElem = std::vector<Rational>;
  FieldElement(FieldPtr field, std::vector<LElem> coeffs);
  FieldElement(FieldPtr field, std::vector<LElem> coeffs, Valuation val);
  void check_compatible(const FieldElement& other) const;
  Valuation compute_valuation() const;
  // Residue of an element of nonnegative valuation.
  ResidueElem residue() const;
  FieldElement apply_full_automorphism(long w_exponent, int twist) const;

  FieldPtr field_;
  std::vector<LElem> coeffs_;
  Valuation val_;
};

FieldElement fe_add(const FieldElement& a, const FieldElement& b);
FieldElement fe_mul(const FieldElement& a, const FieldElement& b);
FieldElement fe_inv(const FieldElement& a);
Valuation fe_val(const FieldElement& a);
FieldElement apply_galois(const GaloisElement& g, const FieldElement& a);
FieldElement trace_to_base(const FieldElement& a);
// frac(x / p) in [0, 1) for x in Q_p with val(x) > -precision.
Rational psi_value(const FieldElement& x);

}  // namespace levilift
