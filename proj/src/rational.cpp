#include "levilift/rational.hpp"

#include <cctype>

namespace levilift {

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw InputError("empty rational");
  Rational r;
  if (r.set_str(s, 10) != 0) throw InputError("malformed rational '" + text + "'");
  if (r.get_den() == 0) throw InputError("zero denominator in '" + text + "'");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& x) {
  Rational y = x;
  y.canonicalize();
  return y.get_str();
}

long p_adic_valuation(const Rational& x, unsigned long p) {
  if (x == 0) throw std::invalid_argument("valuation of zero rational");
  mpz_class pz(p);
  mpz_class rest;
  long vn = static_cast<long>(mpz_remove(rest.get_mpz_t(), x.get_num_mpz_t(), pz.get_mpz_t()));
  long vd = static_cast<long>(mpz_remove(rest.get_mpz_t(), x.get_den_mpz_t(), pz.get_mpz_t()));
  return vn - vd;
}

long mod_pos(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

long residue_mod_p(const Rational& x, long p) {
  long num = static_cast<long>(mpz_fdiv_ui(x.get_num_mpz_t(), static_cast<unsigned long>(p)));
  long den = static_cast<long>(mpz_fdiv_ui(x.get_den_mpz_t(), static_cast<unsigned long>(p)));
  if (den == 0) throw std::invalid_argument("rational is not p-integral");
  return mod_pos(num * inv_mod(den, p), p);
}

long pow_mod(long base, long exp, long m) {
  long result = 1 % m;
  long b = mod_pos(base, m);
  while (exp > 0) {
    if (exp & 1) result = static_cast<long>((static_cast<__int128>(result) * b) % m);
    b = static_cast<long>((static_cast<__int128>(b) * b) % m);
    exp >>= 1;
  }
  return result;
}

long gcd_long(long a, long b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

long inv_mod(long a, long m) {
  long t = 0, new_t = 1, r = m, new_r = mod_pos(a, m);
  while (new_r != 0) {
    long q = r / new_r;
    long tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw std::invalid_argument("element not invertible modulo m");
  return mod_pos(t, m);
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

const Rational& Valuation::value() const {
  if (infinite_) throw std::logic_error("value of infinite valuation");
  return value_;
}

std::string Valuation::str() const { return infinite_ ? "inf" : to_string(value_); }

bool operator==(const Valuation& a, const Valuation& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.value_ == b.value_;
}

bool operator<(const Valuation& a, const Valuation& b) {
  if (a.infinite_) return false;
  if (b.infinite_) return true;
  return a.value_ < b.value_;
}

}  // namespace levilift
