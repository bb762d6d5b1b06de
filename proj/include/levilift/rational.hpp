#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace levilift {

using Rational = mpq_class;

// Input or shape problem: exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Answer would depend on digits outside the stored window: exit code 2.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A mathematical check or hypothesis failed: exit code 1.
class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& x);

// Exponent of p in a nonzero rational.
long p_adic_valuation(const Rational& x, unsigned long p);

// x mod p for a p-integral rational.
long residue_mod_p(const Rational& x, long p);

long mod_pos(long a, long m);
long pow_mod(long base, long exp, long m);
long inv_mod(long a, long m);
bool is_prime(long n);
long gcd_long(long a, long b);

// Valuation in Q or +infinity.
class Valuation {
 public:
  Valuation() = default;
  explicit Valuation(Rational v) : infinite_(false), value_(std::move(v)) { value_.canonicalize(); }
  static Valuation infinity() { return Valuation(); }

  bool is_infinite() const { return infinite_; }
  const Rational& value() const;
  std::string str() const;

  friend bool operator==(const Valuation& a, const Valuation& b);
  friend bool operator<(const Valuation& a, const Valuation& b);
  friend bool operator!=(const Valuation& a, const Valuation& b) { return !(a == b); }
  friend bool operator>(const Valuation& a, const Valuation& b) { return b < a; }
  friend bool operator<=(const Valuation& a, const Valuation& b) { return !(b < a); }
  friend bool operator>=(const Valuation& a, const Valuation& b) { return !(a < b); }

 private:
  bool infinite_ = true;
  Rational value_;
};

}  // namespace levilift
