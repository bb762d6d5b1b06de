#include "levilift/local_field.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace levilift {

namespace {

using IntPoly = std::vector<long>;

void trim(IntPoly& a) {
  while (a.size() > 1 && a.back() == 0) a.pop_back();
}

// Exact division of integer polynomials by a monic divisor.
IntPoly int_poly_div_exact(IntPoly num, const IntPoly& den) {
  size_t dn = den.size() - 1;
  if (num.size() - 1 < dn) throw std::logic_error("cyclotomic division degree");
  IntPoly quot(num.size() - dn, 0);
  for (size_t i = num.size(); i-- > dn;) {
    long c = num[i];
    quot[i - dn] = c;
    for (size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  for (size_t i = 0; i < dn; ++i) {
    if (num[i] != 0) throw std::logic_error("cyclotomic division remainder");
  }
  return quot;
}

IntPoly cyclotomic(int m, std::map<int, IntPoly>& memo) {
  auto it = memo.find(m);
  if (it != memo.end()) return it->second;
  IntPoly poly(static_cast<size_t>(m) + 1, 0);
  poly[0] = -1;
  poly[static_cast<size_t>(m)] = 1;
  for (int d = 1; d < m; ++d) {
    if (m % d == 0) poly = int_poly_div_exact(poly, cyclotomic(d, memo));
  }
  memo[m] = poly;
  return poly;
}

// Polynomials over F_p, low-to-high coefficients.
IntPoly fp_normalize(IntPoly a, long p) {
  for (auto& c : a) c = mod_pos(c, p);
  trim(a);
  return a;
}

IntPoly fp_mod(IntPoly a, const IntPoly& b, long p) {
  a = fp_normalize(a, p);
  IntPoly d = fp_normalize(b, p);
  long lead_inv = inv_mod(d.back(), p);
  while (a.size() >= d.size() && !(a.size() == 1 && a[0] == 0)) {
    long c = static_cast<long>((static_cast<__int128>(a.back()) * lead_inv) % p);
    size_t shift = a.size() - d.size();
    for (size_t j = 0; j < d.size(); ++j) a[shift + j] = mod_pos(a[shift + j] - c * d[j], p);
    trim(a);
    if (a.size() < d.size()) break;
  }
  return a;
}

IntPoly fp_div_exact(IntPoly a, const IntPoly& b, long p) {
  a = fp_normalize(a, p);
  IntPoly d = fp_normalize(b, p);
  long lead_inv = inv_mod(d.back(), p);
  if (a.size() < d.size()) throw std::logic_error("F_p division degree");
  IntPoly quot(a.size() - d.size() + 1, 0);
  for (size_t i = a.size(); i-- >= d.size();) {
    long c = static_cast<long>((static_cast<__int128>(a[i]) * lead_inv) % p);
    quot[i - (d.size() - 1)] = c;
    for (size_t j = 0; j < d.size(); ++j) a[i - (d.size() - 1) + j] = mod_pos(a[i - (d.size() - 1) + j] - c * d[j], p);
    if (i == d.size() - 1) break;
  }
  for (size_t i = 0; i + 1 < d.size(); ++i) {
    if (a[i] != 0) throw std::logic_error("F_p division remainder");
  }
  return quot;
}

bool fp_is_irreducible(const IntPoly& f, long p) {
  size_t deg = f.size() - 1;
  if (deg <= 1) return deg == 1;
  // Trial division by every monic polynomial of degree 1..deg/2.
  for (size_t d = 1; d <= deg / 2; ++d) {
    long count = 1;
    for (size_t i = 0; i < d; ++i) count *= p;
    for (long idx = 0; idx < count; ++idx) {
      IntPoly g(d + 1, 0);
      long rest = idx;
      for (size_t i = 0; i < d; ++i) {
        g[i] = rest % p;
        rest /= p;
      }
      g[d] = 1;
      IntPoly r = fp_mod(f, g, p);
      if (r.size() == 1 && r[0] == 0) return false;
    }
  }
  return true;
}

Rational p_power(long p, long k) {
  mpz_class base(p);
  mpz_class pw;
  mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(k < 0 ? -k : k));
  if (k >= 0) return Rational(pw);
  return Rational(mpz_class(1), pw);
}

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

// ---------------------------------------------------------------- Field

std::shared_ptr<const Field> Field::create(const FieldDesc& desc) {
  return std::shared_ptr<const Field>(new Field(desc));
}

Field::Field(const FieldDesc& desc) : desc_(desc) {
  const long p = desc.p;
  if (!is_prime(p)) throw InputError("p = " + std::to_string(p) + " is not prime");
  if (desc.f < 1) throw InputError("unramified degree f must be >= 1");
  if (desc.e < 1) throw InputError("ramification degree e must be >= 1");
  if (desc.precision < 1) throw InputError("precision must be >= 1");
  if (gcd_long(desc.e, p) != 1) throw InputError("ramification degree e must be prime to p");
  q_ = 1;
  for (int i = 0; i < desc.f; ++i) {
    q_ *= p;
    if (q_ > 2000000) throw InputError("residue field too large");
  }
  if ((q_ - 1) % desc.e != 0) throw InputError("e must divide p^f - 1");
  if (desc.residue_modulus.size() != static_cast<size_t>(desc.f) + 1) {
    throw InputError("residue modulus must have degree f");
  }
  desc_.residue_modulus = desc.residue_modulus;
  for (auto& c : desc_.residue_modulus) c = mod_pos(c, p);
  if (desc_.residue_modulus.back() != 1) throw InputError("residue modulus must be monic");
  if (!fp_is_irreducible(desc_.residue_modulus, p)) throw InputError("residue modulus is not irreducible over F_p");

  // Cyclotomic level m: contains zeta_e and, for f > 1, the Teichmuller lift of z.
  auto res_order = [&](const ResidueElem& a) {
    long n = q_ - 1;
    long order = n;
    for (long d = 1; d <= n; ++d) {
      if (n % d == 0 && res_pow(a, d) == res_normalize(ResidueElem{1})) {
        order = d;
        break;
      }
    }
    return order;
  };
  ResidueElem zbar = res_zero();
  long zorder = 1;
  if (desc.f > 1) {
    zbar[1] = 1;
    zorder = res_order(zbar);
  }
  long m = std::lcm(zorder, static_cast<long>(desc.e));
  m_ = static_cast<int>(m);
  long ordp = 1;
  while (pow_mod(p, ordp, m) != 1 % m) ++ordp;
  if (ordp != desc.f) throw InputError("internal: cyclotomic level has wrong residue degree");

  std::map<int, IntPoly> memo;
  cyclotomic_ = cyclotomic(m_, memo);
  phi_ = static_cast<int>(cyclotomic_.size()) - 1;

  // Powers of w reduced modulo Phi_m.
  w_powers_.assign(static_cast<size_t>(m_), l_zero());
  w_powers_[0][0] = 1;
  for (int j = 1; j < m_; ++j) {
    LElem next(static_cast<size_t>(phi_) + 1, Rational(0));
    for (int t = 0; t < phi_; ++t) next[static_cast<size_t>(t) + 1] = w_powers_[static_cast<size_t>(j) - 1][static_cast<size_t>(t)];
    Rational top = next[static_cast<size_t>(phi_)];
    if (top != 0) {
      for (int t = 0; t <= phi_; ++t) next[static_cast<size_t>(t)] -= top * cyclotomic_[static_cast<size_t>(t)];
    }
    next.resize(static_cast<size_t>(phi_));
    w_powers_[static_cast<size_t>(j)] = next;
  }

  // Residue image y of w: an element of exact order m.
  bool found = false;
  for (long idx = 1; idx < q_ && !found; ++idx) {
    ResidueElem cand = res_zero();
    long rest = idx;
    for (int i = 0; i < desc.f; ++i) {
      cand[static_cast<size_t>(i)] = rest % p;
      rest /= p;
    }
    if (res_is_zero(cand)) continue;
    if (res_order(cand) == m) {
      y_ = cand;
      found = true;
    }
  }
  if (!found) throw std::logic_error("no residue element of order m");
  y_powers_.clear();
  ResidueElem acc = res_normalize(ResidueElem{1});
  for (int i = 0; i < std::max(phi_, 1); ++i) {
    y_powers_.push_back(acc);
    acc = res_mul(acc, y_);
  }

  // theta = w^k with y^k = zbar.
  theta_powers_.clear();
  theta_powers_.push_back(l_const(Rational(1)));
  if (desc.f > 1) {
    long k = -1;
    ResidueElem cur = res_normalize(ResidueElem{1});
    for (long j = 0; j < m; ++j) {
      if (cur == zbar) {
        k = j;
        break;
      }
      cur = res_mul(cur, y_);
    }
    if (k < 0) throw std::logic_error("z is not a power of y");
    for (int j = 1; j < desc.f; ++j) theta_powers_.push_back(w_powers_[static_cast<size_t>((j * k) % m)]);
  }

  // Minimal polynomial h of y over F_p and multiplier c = Phi_m / h mod p.
  std::vector<ResidueElem> conj;
  ResidueElem c = y_;
  do {
    conj.push_back(c);
    c = res_pow(c, p);
  } while (c != y_);
  std::vector<ResidueElem> h{res_normalize(ResidueElem{1})};
  for (const auto& r : conj) {
    std::vector<ResidueElem> next(h.size() + 1, res_zero());
    ResidueElem neg_r = res_mul(r, res_normalize(ResidueElem{p - 1}));
    for (size_t i = 0; i < h.size(); ++i) {
      next[i + 1] = res_add(next[i + 1], h[i]);
      next[i] = res_add(next[i], res_mul(h[i], neg_r));
    }
    h = next;
  }
  IntPoly hpoly;
  for (const auto& coef : h) {
    for (size_t j = 1; j < coef.size(); ++j) {
      if (coef[j] != 0) throw std::logic_error("minimal polynomial not over F_p");
    }
    hpoly.push_back(coef[0]);
  }
  IntPoly cpoly = fp_div_exact(cyclotomic_, hpoly, p);
  multiplier_ = l_zero();
  for (size_t i = 0; i < cpoly.size(); ++i) multiplier_[i] = cpoly[i];
  ResidueElem cres = l_residue_integral(multiplier_);
  if (res_is_zero(cres)) throw std::logic_error("multiplier vanishes at the chosen prime");
  multiplier_residue_inv_ = res_inv(cres);
}

bool Field::same_extension(const Field& other) const {
  return desc_.p == other.desc_.p && desc_.f == other.desc_.f && desc_.e == other.desc_.e &&
         desc_.residue_modulus == other.desc_.residue_modulus;
}

GaloisElement Field::normalize(const GaloisElement& g) const {
  return {static_cast<int>(mod_pos(g.frob_pow, f())), static_cast<int>(mod_pos(g.ram_twist, e()))};
}

GaloisElement Field::compose(const GaloisElement& a, const GaloisElement& b) const {
  long twist = a.ram_twist + static_cast<long>(b.ram_twist) * pow_mod(p(), mod_pos(a.frob_pow, f()), e());
  return normalize({a.frob_pow + b.frob_pow, static_cast<int>(mod_pos(twist, e()))});
}

GaloisElement Field::inverse(const GaloisElement& g) const {
  GaloisElement n = normalize(g);
  if (e() == 1) return normalize({-n.frob_pow, 0});
  long pinv = inv_mod(pow_mod(p(), n.frob_pow, e()), e());
  return normalize({-n.frob_pow, static_cast<int>(mod_pos(-n.ram_twist * pinv, e()))});
}

std::vector<GaloisElement> Field::galois_group() const {
  std::vector<GaloisElement> out;
  for (int a = 0; a < f(); ++a) {
    for (int j = 0; j < e(); ++j) out.push_back({a, j});
  }
  return out;
}

ResidueElem Field::res_normalize(const ResidueElem& a) const {
  ResidueElem r = res_zero();
  for (size_t i = 0; i < a.size(); ++i) {
    if (i >= r.size()) {
      if (mod_pos(a[i], p()) != 0) throw InputError("residue element has too many coefficients");
      continue;
    }
    r[i] = mod_pos(a[i], p());
  }
  return r;
}

ResidueElem Field::res_add(const ResidueElem& a, const ResidueElem& b) const {
  ResidueElem r = res_zero();
  for (size_t i = 0; i < r.size(); ++i) r[i] = mod_pos(a[i] + b[i], p());
  return r;
}

ResidueElem Field::res_mul(const ResidueElem& a, const ResidueElem& b) const {
  const size_t f = static_cast<size_t>(this->f());
  std::vector<long> prod(2 * f - 1, 0);
  for (size_t i = 0; i < f; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < f; ++j) prod[i + j] = mod_pos(prod[i + j] + a[i] * b[j], p());
  }
  const auto& mod = desc_.residue_modulus;
  for (size_t d = prod.size(); d-- > f;) {
    long c = prod[d];
    if (c == 0) continue;
    for (size_t t = 0; t <= f; ++t) prod[d - f + t] = mod_pos(prod[d - f + t] - c * mod[t], p());
  }
  prod.resize(f);
  return prod;
}

ResidueElem Field::res_pow(const ResidueElem& a, long k) const {
  ResidueElem result = res_normalize(ResidueElem{1});
  ResidueElem base = a;
  while (k > 0) {
    if (k & 1) result = res_mul(result, base);
    base = res_mul(base, base);
    k >>= 1;
  }
  return result;
}

ResidueElem Field::res_inv(const ResidueElem& a) const {
  if (res_is_zero(a)) throw MathError("inverse of zero residue");
  return res_pow(a, q_ - 2);
}

bool Field::res_is_zero(const ResidueElem& a) const {
  return std::all_of(a.begin(), a.end(), [](long c) { return c == 0; });
}

Field::LElem Field::l_const(const Rational& c) const {
  LElem r = l_zero();
  r[0] = c;
  return r;
}

Field::LElem Field::l_add(const LElem& a, const LElem& b) const {
  LElem r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Field::LElem Field::l_sub(const LElem& a, const LElem& b) const {
  LElem r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Field::LElem Field::l_scale(const LElem& a, const Rational& c) const {
  LElem r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
  return r;
}

Field::LElem Field::l_mul(const LElem& a, const LElem& b) const {
  const size_t n = static_cast<size_t>(phi_);
  LElem prod(2 * n - 1, Rational(0));
  for (size_t i = 0; i < n; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (size_t j = 0; j < n; ++j) {
      if (sgn(b[j]) == 0) continue;
      prod[i + j] += a[i] * b[j];
    }
  }
  for (size_t d = prod.size(); d-- > n;) {
    if (sgn(prod[d]) == 0) continue;
    Rational c = prod[d];
    for (size_t t = 0; t <= n; ++t) {
      if (cyclotomic_[t] != 0) prod[d - n + t] -= c * cyclotomic_[t];
    }
  }
  prod.resize(n);
  return prod;
}

Field::LElem Field::l_shift_w(const LElem& a, long k) const {
  long kk = mod_pos(k, m_);
  if (kk == 0) return a;
  LElem r = l_zero();
  for (size_t t = 0; t < a.size(); ++t) {
    if (sgn(a[t]) == 0) continue;
    const LElem& w = w_powers_[static_cast<size_t>((static_cast<long>(t) + kk) % m_)];
    for (size_t s = 0; s < r.size(); ++s) {
      if (sgn(w[s]) != 0) r[s] += a[t] * w[s];
    }
  }
  return r;
}

Field::LElem Field::l_automorphism(const LElem& a, long exponent) const {
  long ex = mod_pos(exponent, m_);
  if (ex == 1 % m_ || m_ == 1) return a;
  LElem r = l_zero();
  for (size_t t = 0; t < a.size(); ++t) {
    if (sgn(a[t]) == 0) continue;
    const LElem& w = w_powers_[static_cast<size_t>((static_cast<long>(t) * ex) % m_)];
    for (size_t s = 0; s < r.size(); ++s) {
      if (sgn(w[s]) != 0) r[s] += a[t] * w[s];
    }
  }
  return r;
}

bool Field::l_is_zero(const LElem& a) const {
  return std::all_of(a.begin(), a.end(), [](const Rational& c) { return sgn(c) == 0; });
}

ResidueElem Field::l_residue_integral(const LElem& a) const {
  ResidueElem r = res_zero();
  for (size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    long c = residue_mod_p(a[i], p());
    if (c == 0) continue;
    for (size_t j = 0; j < r.size(); ++j) r[j] = mod_pos(r[j] + c * y_powers_[i][j], p());
  }
  return r;
}

std::pair<long, ResidueElem> Field::l_valuation(const LElem& a) const {
  long k = 0;
  bool first = true;
  for (const auto& c : a) {
    if (sgn(c) == 0) continue;
    long v = p_adic_valuation(c, static_cast<unsigned long>(p()));
    if (first || v < k) k = v;
    first = false;
  }
  if (first) throw std::logic_error("valuation of zero");
  LElem b = (k == 0) ? a : l_scale(a, p_power(p(), -k));
  const Rational inv_p(mpz_class(1), mpz_class(p()));
  for (long extra = 0; extra < 100000; ++extra) {
    ResidueElem r = l_residue_integral(b);
    if (!res_is_zero(r)) {
      return {k + extra, res_mul(r, res_pow(multiplier_residue_inv_, extra))};
    }
    b = l_scale(l_mul(multiplier_, b), inv_p);
  }
  throw std::logic_error("valuation loop did not terminate");
}

Field::LElem Field::residue_lift(const ResidueElem& d) const {
  LElem r = l_zero();
  for (size_t j = 0; j < d.size(); ++j) {
    if (d[j] == 0) continue;
    if (j >= theta_powers_.size()) throw InputError("residue element has too many coefficients");
    r = l_add(r, l_scale(theta_powers_[j], Rational(d[j])));
  }
  return r;
}

// --------------------------------------------------------- FieldElement

FieldElement::FieldElement(FieldPtr field, std::vector<LElem> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  val_ = compute_valuation();
}

FieldElement::FieldElement(FieldPtr field, std::vector<LElem> coeffs, Valuation val)
    : field_(std::move(field)), coeffs_(std::move(coeffs)), val_(std::move(val)) {}

FieldElement FieldElement::zero(const FieldPtr& field) {
  std::vector<LElem> c(static_cast<size_t>(field->e()), field->l_zero());
  return FieldElement(field, std::move(c), Valuation::infinity());
}

FieldElement FieldElement::one(const FieldPtr& field) { return from_rational(field, Rational(1)); }

FieldElement FieldElement::from_rational(const FieldPtr& field, const Rational& r) {
  if (r == 0) return zero(field);
  std::vector<LElem> c(static_cast<size_t>(field->e()), field->l_zero());
  c[0] = field->l_const(r);
  return FieldElement(field, std::move(c), Valuation(Rational(p_adic_valuation(r, static_cast<unsigned long>(field->p())))));
}

FieldElement FieldElement::uniformizer(const FieldPtr& field) { return one(field).shifted(1); }

FieldElement FieldElement::residue_lift(const FieldPtr& field, const ResidueElem& d) {
  std::vector<LElem> c(static_cast<size_t>(field->e()), field->l_zero());
  c[0] = field->residue_lift(d);
  return FieldElement(field, std::move(c));
}

FieldElement FieldElement::from_digits(const FieldPtr& field, const Rational& val,
                                       const std::vector<ResidueElem>& digits) {
  if (digits.empty()) return zero(field);
  if (static_cast<int>(digits.size()) > field->precision()) {
    throw PrecisionError("digit list longer than precision " + std::to_string(field->precision()));
  }
  Rational scaled = val * field->e();
  if (scaled.get_den() != 1) throw InputError("valuation " + to_string(val) + " not in (1/e)Z");
  long start = scaled.get_num().get_si();
  std::vector<LElem> acc(static_cast<size_t>(field->e()), field->l_zero());
  FieldElement total(field, acc, Valuation::infinity());
  for (size_t i = 0; i < digits.size(); ++i) {
    ResidueElem d = digits[i];
    if (field->f() == 1 && d.size() > 1) throw InputError("digit has too many coefficients");
    if (static_cast<int>(d.size()) > field->f()) throw InputError("digit has too many coefficients");
    std::vector<LElem> c(static_cast<size_t>(field->e()), field->l_zero());
    c[0] = field->residue_lift(d);
    if (field->l_is_zero(c[0])) continue;
    FieldElement term = FieldElement(field, std::move(c)).shifted(start + static_cast<long>(i));
    for (size_t k = 0; k < total.coeffs_.size(); ++k) total.coeffs_[k] = field->l_add(total.coeffs_[k], term.coeffs_[k]);
  }
  FieldElement result(field, std::move(total.coeffs_));
  if (result.is_zero()) return result;
  if (result.val() != Valuation(val)) {
    throw InputError("digits are inconsistent with val " + to_string(val) + " (leading digit vanishes)");
  }
  return result;
}

void FieldElement::check_compatible(const FieldElement& other) const {
  if (!field_ || !other.field_) throw std::logic_error("uninitialized field element");
  if (field_ != other.field_ && !field_->same_extension(*other.field_)) {
    throw InputError("field elements belong to different field descriptions");
  }
}

Valuation FieldElement::compute_valuation() const {
  const Field& F = *field_;
  bool any = false;
  long best = 0;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (F.l_is_zero(coeffs_[i])) continue;
    long v = F.l_valuation(coeffs_[i]).first;
    long key = v * F.e() + static_cast<long>(i);
    if (!any || key < best) best = key;
    any = true;
  }
  if (!any) return Valuation::infinity();
  return Valuation(Rational(best, F.e()));
}

ResidueElem FieldElement::residue() const {
  const Field& F = *field_;
  if (F.l_is_zero(coeffs_[0])) return F.res_zero();
  auto [v, r] = F.l_valuation(coeffs_[0]);
  if (v > 0) return F.res_zero();
  if (v < 0) throw std::logic_error("residue of element with negative valuation");
  return r;
}

std::vector<ResidueElem> FieldElement::digits(int limit) const {
  if (is_zero()) return {};
  const Field& F = *field_;
  int count = limit < 0 ? F.precision() : limit;
  Rational n = val_.value() * F.e();
  FieldElement u = shifted(-n.get_num().get_si());
  std::vector<ResidueElem> out;
  for (int k = 0; k < count; ++k) {
    bool zero = true;
    for (const auto& c : u.coeffs_) {
      if (!F.l_is_zero(c)) {
        zero = false;
        break;
      }
    }
    if (zero) break;
    ResidueElem d = u.residue();
    out.push_back(d);
    u.coeffs_[0] = F.l_sub(u.coeffs_[0], F.residue_lift(d));
    u = FieldElement(u.field_, u.coeffs_, Valuation(Rational(0))).shifted(-1);
  }
  return out;
}

ResidueElem FieldElement::leading_digit() const {
  if (is_zero()) return field_->res_zero();
  Rational n = val_.value() * field_->e();
  return shifted(-n.get_num().get_si()).residue();
}

FieldElement FieldElement::operator-() const {
  std::vector<LElem> c;
  c.reserve(coeffs_.size());
  for (const auto& a : coeffs_) c.push_back(field_->l_scale(a, Rational(-1)));
  return FieldElement(field_, std::move(c), val_);
}

FieldElement FieldElement::operator+(const FieldElement& other) const {
  check_compatible(other);
  if (is_zero()) return other;
  if (other.is_zero()) return *this;
  std::vector<LElem> c(coeffs_.size());
  for (size_t i = 0; i < coeffs_.size(); ++i) c[i] = field_->l_add(coeffs_[i], other.coeffs_[i]);
  FieldElement r(field_, std::move(c));
  if (!r.is_zero()) {
    Rational low = std::min(val_.value(), other.val_.value());
    if (r.val().value() - low >= field_->precision()) {
      throw PrecisionError("cancellation beyond the stored window: sum has valuation " + r.val().str() +
                           " from operands of valuation " + to_string(low));
    }
  }
  return r;
}

FieldElement FieldElement::operator-(const FieldElement& other) const { return *this + (-other); }

FieldElement FieldElement::operator*(const FieldElement& other) const {
  check_compatible(other);
  if (is_zero() || other.is_zero()) return zero(field_);
  const Field& F = *field_;
  const size_t e = coeffs_.size();
  std::vector<LElem> c(e, F.l_zero());
  const Rational pr(F.p());
  for (size_t i = 0; i < e; ++i) {
    if (F.l_is_zero(coeffs_[i])) continue;
    for (size_t j = 0; j < e; ++j) {
      if (F.l_is_zero(other.coeffs_[j])) continue;
      LElem prod = F.l_mul(coeffs_[i], other.coeffs_[j]);
      if (i + j >= e) {
        c[i + j - e] = F.l_add(c[i + j - e], F.l_scale(prod, pr));
      } else {
        c[i + j] = F.l_add(c[i + j], prod);
      }
    }
  }
  return FieldElement(field_, std::move(c), Valuation(val_.value() + other.val_.value()));
}

FieldElement FieldElement::scaled(const Rational& r) const {
  if (r == 0 || is_zero()) return zero(field_);
  std::vector<LElem> c;
  c.reserve(coeffs_.size());
  for (const auto& a : coeffs_) c.push_back(field_->l_scale(a, r));
  long v = p_adic_valuation(r, static_cast<unsigned long>(field_->p()));
  return FieldElement(field_, std::move(c), Valuation(val_.value() + v));
}

FieldElement FieldElement::shifted(long k) const {
  if (is_zero() || k == 0) return *this;
  const Field& F = *field_;
  const long e = F.e();
  std::vector<LElem> c(coeffs_.size(), F.l_zero());
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (F.l_is_zero(coeffs_[i])) continue;
    long idx = static_cast<long>(i) + k;
    long q = floor_div(idx, e);
    long r = idx - q * e;
    c[static_cast<size_t>(r)] = F.l_add(c[static_cast<size_t>(r)], F.l_scale(coeffs_[i], p_power(F.p(), q)));
  }
  return FieldElement(field_, std::move(c), Valuation(val_.value() + Rational(k, e)));
}

FieldElement FieldElement::apply_full_automorphism(long w_exponent, int twist) const {
  const Field& F = *field_;
  std::vector<LElem> c;
  c.reserve(coeffs_.size());
  const long step = F.m_ / F.e();
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    LElem a = F.l_automorphism(coeffs_[i], w_exponent);
    c.push_back(F.l_shift_w(a, step * static_cast<long>(i) * twist));
  }
  return FieldElement(field_, std::move(c), val_);
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw MathError("inversion of zero");
  const Field& F = *field_;
  FieldElement prod = one(field_);
  for (long a = 1; a <= std::max(F.m_, 1); ++a) {
    if (F.m_ > 1 && gcd_long(a, F.m_) != 1) continue;
    if (F.m_ == 1 && a > 1) break;
    for (int j = 0; j < F.e(); ++j) {
      if (a == 1 && j == 0) continue;
      prod = prod * apply_full_automorphism(a, j);
    }
  }
  FieldElement norm = *this * prod;
  for (size_t i = 1; i < norm.coeffs_.size(); ++i) {
    if (!F.l_is_zero(norm.coeffs_[i])) throw std::logic_error("norm is not rational");
  }
  for (size_t t = 1; t < norm.coeffs_[0].size(); ++t) {
    if (sgn(norm.coeffs_[0][t]) != 0) throw std::logic_error("norm is not rational");
  }
  Rational n = norm.coeffs_[0][0];
  FieldElement inv = prod.scaled(Rational(1) / n);
  return FieldElement(field_, inv.coeffs_, Valuation(-val_.value()));
}

bool FieldElement::operator==(const FieldElement& other) const {
  check_compatible(other);
  if (val_ != other.val_) return false;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != other.coeffs_[i]) return false;
  }
  return true;
}

FieldElement FieldElement::galois(const GaloisElement& g) const {
  const Field& F = *field_;
  GaloisElement n = F.normalize(g);
  if (n.frob_pow == 0 && n.ram_twist == 0) return *this;
  long ex = pow_mod(F.p(), n.frob_pow, F.m_);
  return apply_full_automorphism(ex, n.ram_twist);
}

bool FieldElement::in_base_field() const {
  return galois(field_->frobenius()) == *this && galois(field_->ramification_generator()) == *this;
}

// ------------------------------------------------------ free functions

FieldElement fe_add(const FieldElement& a, const FieldElement& b) { return a + b; }
FieldElement fe_mul(const FieldElement& a, const FieldElement& b) { return a * b; }
FieldElement fe_inv(const FieldElement& a) { return a.inverse(); }
Valuation fe_val(const FieldElement& a) { return a.val(); }
FieldElement apply_galois(const GaloisElement& g, const FieldElement& a) { return a.galois(g); }

FieldElement trace_to_base(const FieldElement& a) {
  if (a.is_zero()) return FieldElement::zero(a.field());
  std::vector<FieldElement> conj;
  for (const auto& g : a.field()->galois_group()) conj.push_back(a.galois(g));
  FieldElement total = conj[0];
  for (size_t i = 1; i < conj.size(); ++i) {
    try {
      total = total + conj[i];
    } catch (const PrecisionError&) {
      throw PrecisionError("trace cancels beyond the stored window");
    }
  }
  return total;
}

Rational psi_value(const FieldElement& x) {
  if (!x.in_base_field()) throw InputError("psi_value needs an element of the base field");
  if (x.is_zero()) return Rational(0);
  const Field& F = *x.field();
  Rational v = x.val().value();
  if (v.get_den() != 1) throw std::logic_error("base field element with fractional valuation");
  long vi = v.get_num().get_si();
  if (vi >= 1) return Rational(0);
  if (vi <= -F.precision()) {
    throw PrecisionError("psi_value needs val(x) > -precision; got " + v.get_str());
  }
  int needed = static_cast<int>(-vi * F.e() + 1);
  std::vector<ResidueElem> ds = x.digits(needed);
  Rational sum(0);
  for (size_t i = 0; i < ds.size(); ++i) {
    for (size_t j = 1; j < ds[i].size(); ++j) {
      if (ds[i][j] != 0) throw std::logic_error("base field digit outside F_p");
    }
    if (static_cast<long>(i) % F.e() != 0) {
      if (ds[i][0] != 0) throw std::logic_error("base field digit at fractional valuation");
      continue;
    }
    long k = vi + static_cast<long>(i) / F.e();
    sum += p_power(F.p(), k - 1) * ds[i][0];
  }
  return sum;
}

}  // namespace levilift
