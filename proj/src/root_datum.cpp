#include "levilift/root_datum.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <sstream>

namespace levilift {

namespace {

void check_perm(const std::vector<int>& perm, int n, const std::string& what) {
  if (static_cast<int>(perm.size()) != n) throw InputError(what + ": permutation must have length " + std::to_string(n));
  std::vector<bool> seen(static_cast<size_t>(n), false);
  for (int v : perm) {
    if (v < 0 || v >= n || seen[static_cast<size_t>(v)]) throw InputError(what + ": not a permutation");
    seen[static_cast<size_t>(v)] = true;
  }
}

std::vector<int> identity_perm(int n) {
  std::vector<int> id(static_cast<size_t>(n));
  std::iota(id.begin(), id.end(), 0);
  return id;
}

// (a o b)(k) = a(b(k)).
std::vector<int> compose_perm(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> r(b.size());
  for (size_t k = 0; k < b.size(); ++k) r[k] = a[static_cast<size_t>(b[k])];
  return r;
}

std::vector<int> perm_power(const std::vector<int>& a, long k) {
  std::vector<int> r = identity_perm(static_cast<int>(a.size()));
  for (long i = 0; i < k; ++i) r = compose_perm(a, r);
  return r;
}

std::vector<int> invert_perm(const std::vector<int>& a) {
  std::vector<int> r(a.size());
  for (size_t k = 0; k < a.size(); ++k) r[static_cast<size_t>(a[k])] = static_cast<int>(k);
  return r;
}

void normalize_inner(std::vector<int>& c) {
  if (!c.empty() && c[0] == -1) {
    for (auto& v : c) v = -v;
  }
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
  }
  Partition classes() {
    Partition out;
    std::vector<int> slot(parent.size(), -1);
    for (int k = 0; k < static_cast<int>(parent.size()); ++k) {
      int r = find(k);
      if (slot[static_cast<size_t>(r)] < 0) {
        slot[static_cast<size_t>(r)] = static_cast<int>(out.size());
        out.emplace_back();
      }
      out[static_cast<size_t>(slot[static_cast<size_t>(r)])].push_back(k);
    }
    return out;
  }
};

RootVec g_root(int n, int j, int k) {
  RootVec a(static_cast<size_t>(n), 0);
  a[static_cast<size_t>(j)] = 1;
  a[static_cast<size_t>(k)] = -1;
  return a;
}

// Index pair (j, k) of a G-side root vector.
std::pair<int, int> root_pair(const RootVec& a) {
  int j = -1, k = -1;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 1) j = static_cast<int>(i);
    if (a[i] == -1) k = static_cast<int>(i);
  }
  return {j, k};
}

bool roots_stable_under(const RootSet& roots, const std::vector<int>& perm) {
  for (const auto& a : roots) {
    auto [j, k] = root_pair(a);
    if (!roots.count(g_root(static_cast<int>(perm.size()), perm[static_cast<size_t>(j)], perm[static_cast<size_t>(k)]))) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::string side_name(Side s) { return s == Side::G ? "G" : "H"; }

Partition canonical_partition(Partition p) {
  for (auto& b : p) std::sort(b.begin(), b.end());
  p.erase(std::remove_if(p.begin(), p.end(), [](const std::vector<int>& b) { return b.empty(); }), p.end());
  std::sort(p.begin(), p.end());
  return p;
}

std::string partition_string(const Partition& p) {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) os << ",";
    os << "{";
    for (size_t j = 0; j < p[i].size(); ++j) {
      if (j) os << ",";
      os << p[i][j] + 1;
    }
    os << "}";
  }
  os << "}";
  return os.str();
}

// ----------------------------------------------------------- TorusFrame

FramePtr TorusFrame::create(FieldPtr field, int n, std::vector<int> frobenius_perm, std::vector<int> ramification_perm,
                            std::vector<GammaElement> gamma_generators) {
  if (n < 1) throw InputError("frame rank n must be >= 1");
  if (n >= field->p()) throw InputError("frame rank n must be smaller than p (p must not divide |W|)");
  if (frobenius_perm.empty()) frobenius_perm = identity_perm(n);
  if (ramification_perm.empty()) ramification_perm = identity_perm(n);
  check_perm(frobenius_perm, n, "frobenius");
  check_perm(ramification_perm, n, "ramification");
  const auto id = identity_perm(n);
  if (perm_power(frobenius_perm, field->f()) != id) throw InputError("frobenius permutation must have order dividing f");
  if (perm_power(ramification_perm, field->e()) != id) {
    throw InputError("ramification permutation must have order dividing e");
  }
  if (compose_perm(frobenius_perm, ramification_perm) !=
      compose_perm(perm_power(ramification_perm, mod_pos(field->p(), field->e())), frobenius_perm)) {
    throw InputError("frobenius and ramification permutations violate the Galois relation");
  }

  auto frame = std::shared_ptr<TorusFrame>(new TorusFrame());
  frame->field_ = field;
  frame->n_ = n;
  frame->frob_ = frobenius_perm;
  frame->ram_ = ramification_perm;

  for (size_t gi = 0; gi < gamma_generators.size(); ++gi) {
    auto& g = gamma_generators[gi];
    const std::string what = "gamma generator " + std::to_string(gi + 1);
    check_perm(g.perm, n, what);
    if (g.sign != 1 && g.sign != -1) throw InputError(what + ": sign must be +1 or -1");
    if (g.inner.empty()) g.inner.assign(static_cast<size_t>(n), 1);
    if (static_cast<int>(g.inner.size()) != n) throw InputError(what + ": inner must have length n");
    for (int c : g.inner) {
      if (c != 1 && c != -1) throw InputError(what + ": inner entries must be +1 or -1");
    }
    for (const auto& gp : {frobenius_perm, ramification_perm}) {
      for (int k = 0; k < n; ++k) {
        if (g.inner[static_cast<size_t>(gp[static_cast<size_t>(k)])] != g.inner[static_cast<size_t>(k)]) {
          throw InputError(what + ": inner sign vector is not Galois-invariant");
        }
      }
    }
    normalize_inner(g.inner);
    g.galois = field->normalize(g.galois);
    // P_gamma o P_h = P_{t h t^-1} o P_gamma for the Galois generators h.
    for (const auto& h : {field->frobenius(), field->ramification_generator()}) {
      GaloisElement conj = field->compose(field->compose(g.galois, h), field->inverse(g.galois));
      if (compose_perm(g.perm, frame->galois_perm(h)) != compose_perm(frame->galois_perm(conj), g.perm)) {
        throw InputError(what + ": action does not commute with the Galois action");
      }
    }
  }
  frame->gens_ = gamma_generators;

  GammaElement identity{id, 1, GaloisElement{}, std::vector<int>(static_cast<size_t>(n), 1)};
  frame->elements_ = {identity};
  std::deque<GammaElement> queue{identity};
  while (!queue.empty()) {
    GammaElement cur = queue.front();
    queue.pop_front();
    for (const auto& g : frame->gens_) {
      GammaElement next = frame->gamma_compose(g, cur);
      if (std::find(frame->elements_.begin(), frame->elements_.end(), next) == frame->elements_.end()) {
        frame->elements_.push_back(next);
        queue.push_back(next);
        if (frame->elements_.size() > 4096) throw InputError("Gamma closure too large");
      }
    }
  }
  if (gcd_long(frame->gamma_order(), field->p()) != 1) {
    throw InputError("|Gamma| = " + std::to_string(frame->gamma_order()) + " is not prime to p");
  }

  // Fixed space V^Gamma from signed orbits.
  frame->orbit_of_.assign(static_cast<size_t>(n), -1);
  frame->signs_.assign(static_cast<size_t>(n), 0);
  std::vector<bool> visited(static_cast<size_t>(n), false);
  for (int k = 0; k < n; ++k) {
    if (visited[static_cast<size_t>(k)]) continue;
    std::vector<int> sign(static_cast<size_t>(n), 0);
    bool conflict = false;
    std::vector<int> orbit;
    for (const auto& g : frame->elements_) {
      int img = g.perm[static_cast<size_t>(k)];
      if (sign[static_cast<size_t>(img)] == 0) {
        sign[static_cast<size_t>(img)] = g.sign;
        orbit.push_back(img);
      } else if (sign[static_cast<size_t>(img)] != g.sign) {
        conflict = true;
      }
    }
    std::sort(orbit.begin(), orbit.end());
    for (int v : orbit) visited[static_cast<size_t>(v)] = true;
    if (conflict) continue;
    int b = static_cast<int>(frame->orbits_.size());
    frame->orbits_.push_back(orbit);
    for (int v : orbit) {
      frame->orbit_of_[static_cast<size_t>(v)] = b;
      frame->signs_[static_cast<size_t>(v)] = sign[static_cast<size_t>(v)];
    }
  }
  return frame;
}

std::vector<int> TorusFrame::galois_perm(const GaloisElement& g) const {
  GaloisElement n = field_->normalize(g);
  return compose_perm(perm_power(ram_, n.ram_twist), perm_power(frob_, n.frob_pow));
}

GammaElement TorusFrame::gamma_compose(const GammaElement& second, const GammaElement& first) const {
  GammaElement r;
  r.perm = compose_perm(second.perm, first.perm);
  r.sign = second.sign * first.sign;
  r.galois = field_->compose(second.galois, first.galois);
  auto inv2 = invert_perm(second.perm);
  r.inner.resize(static_cast<size_t>(n_));
  for (int k = 0; k < n_; ++k) {
    r.inner[static_cast<size_t>(k)] =
        second.inner[static_cast<size_t>(k)] * first.inner[static_cast<size_t>(inv2[static_cast<size_t>(k)])];
  }
  normalize_inner(r.inner);
  return r;
}

std::pair<std::pair<int, int>, int> TorusFrame::root_space_action(const GammaElement& g, int j, int k) const {
  int pj = g.perm[static_cast<size_t>(j)];
  int pk = g.perm[static_cast<size_t>(k)];
  int cj = g.inner[static_cast<size_t>(pj)];
  int ck = g.inner[static_cast<size_t>(pk)];
  if (g.sign == 1) return {{pj, pk}, cj * ck};
  return {{pk, pj}, -cj * ck};
}

RootVec TorusFrame::restrict_root(int j, int k) const {
  RootVec a(orbits_.size(), 0);
  int bj = orbit_of(j), bk = orbit_of(k);
  if (bj >= 0) a[static_cast<size_t>(bj)] += coord_sign(j);
  if (bk >= 0) a[static_cast<size_t>(bk)] -= coord_sign(k);
  return a;
}

// ----------------------------------------------------------- DualElement

DualElement::DualElement(FramePtr frame, Side side, std::vector<FieldElement> coords)
    : frame_(std::move(frame)), side_(side), coords_(std::move(coords)) {
  size_t expected = side_ == Side::G ? static_cast<size_t>(frame_->n()) : static_cast<size_t>(frame_->fixed_dim());
  if (coords_.size() != expected) {
    throw InputError(side_name(side_) + "-side dual element needs " + std::to_string(expected) + " coordinates, got " +
                     std::to_string(coords_.size()));
  }
}

DualElement DualElement::zero(const FramePtr& frame, Side side) {
  size_t n = side == Side::G ? static_cast<size_t>(frame->n()) : static_cast<size_t>(frame->fixed_dim());
  return DualElement(frame, side, std::vector<FieldElement>(n, FieldElement::zero(frame->field())));
}

bool DualElement::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const FieldElement& x) { return x.is_zero(); });
}

Valuation DualElement::min_val() const {
  Valuation best = Valuation::infinity();
  for (const auto& x : coords_) best = std::min(best, x.val());
  return best;
}

Rational DualElement::depth() const {
  Valuation v = min_val();
  if (v.is_infinite()) throw std::logic_error("depth of the zero dual element");
  return -v.value();
}

void DualElement::check_compatible(const DualElement& o) const {
  if (frame_ != o.frame_ || side_ != o.side_) throw InputError("dual elements live in different frames or sides");
}

DualElement DualElement::operator+(const DualElement& o) const {
  check_compatible(o);
  std::vector<FieldElement> c;
  c.reserve(coords_.size());
  for (size_t k = 0; k < coords_.size(); ++k) c.push_back(coords_[k] + o.coords_[k]);
  return DualElement(frame_, side_, std::move(c));
}

DualElement DualElement::operator-(const DualElement& o) const { return *this + (-o); }

DualElement DualElement::operator-() const {
  std::vector<FieldElement> c;
  c.reserve(coords_.size());
  for (const auto& x : coords_) c.push_back(-x);
  return DualElement(frame_, side_, std::move(c));
}

DualElement DualElement::scaled(const Rational& r) const {
  std::vector<FieldElement> c;
  c.reserve(coords_.size());
  for (const auto& x : coords_) c.push_back(x.scaled(r));
  return DualElement(frame_, side_, std::move(c));
}

bool DualElement::operator==(const DualElement& o) const {
  if (frame_ != o.frame_ || side_ != o.side_) return false;
  for (size_t k = 0; k < coords_.size(); ++k) {
    if (coords_[k] != o.coords_[k]) return false;
  }
  return true;
}

// ----------------------------------------------------------- TwistedLevi

TwistedLevi TwistedLevi::from_partition(const FramePtr& frame, Partition partition, std::string name) {
  const int n = frame->n();
  std::vector<int> seen(static_cast<size_t>(n), 0);
  for (const auto& b : partition) {
    for (int k : b) {
      if (k < 0 || k >= n) throw InputError("partition index out of range");
      if (seen[static_cast<size_t>(k)]++) throw InputError("partition repeats index " + std::to_string(k + 1));
    }
  }
  for (int k = 0; k < n; ++k) {
    if (!seen[static_cast<size_t>(k)]) throw InputError("partition misses index " + std::to_string(k + 1));
  }
  TwistedLevi L;
  L.frame_ = frame;
  L.side_ = Side::G;
  L.partition_ = canonical_partition(std::move(partition));
  for (const auto& b : L.partition_) {
    for (int j : b) {
      for (int k : b) {
        if (j != k) L.roots_.insert(g_root(n, j, k));
      }
    }
  }
  L.name_ = name.empty() ? partition_string(L.partition_) : std::move(name);
  if (!L.is_galois_stable()) throw InputError("partition " + partition_string(L.partition_) + " is not Galois-stable");
  return L;
}

TwistedLevi TwistedLevi::from_roots(const FramePtr& frame, Side side, RootSet roots, std::string name) {
  if (side == Side::G) {
    UnionFind uf(frame->n());
    for (const auto& a : roots) {
      auto [j, k] = root_pair(a);
      if (j < 0 || k < 0) throw InputError("G-side root must have the form e_j - e_k");
      uf.unite(j, k);
    }
    TwistedLevi L = from_partition(frame, uf.classes(), std::move(name));
    if (L.roots_ != roots) throw InputError("G-side root set is not a partition root set");
    return L;
  }
  for (const auto& a : roots) {
    if (static_cast<int>(a.size()) != frame->fixed_dim()) {
      throw InputError("H-side root must have " + std::to_string(frame->fixed_dim()) + " coordinates");
    }
    if (std::all_of(a.begin(), a.end(), [](long v) { return v == 0; })) throw InputError("H-side root is zero");
  }
  TwistedLevi L;
  L.frame_ = frame;
  L.side_ = side;
  L.roots_ = std::move(roots);
  L.name_ = std::move(name);
  return L;
}

TwistedLevi TwistedLevi::full(const FramePtr& frame) {
  Partition p{std::vector<int>(static_cast<size_t>(frame->n()))};
  std::iota(p[0].begin(), p[0].end(), 0);
  return from_partition(frame, p, "G");
}

TwistedLevi TwistedLevi::torus(const FramePtr& frame, Side side) {
  if (side == Side::H) return from_roots(frame, Side::H, {}, "S");
  Partition p;
  for (int k = 0; k < frame->n(); ++k) p.push_back({k});
  return from_partition(frame, p, "T");
}

bool TwistedLevi::contains(const TwistedLevi& other) const {
  if (side_ != other.side_) throw InputError("Levi containment across G and H sides");
  return std::includes(roots_.begin(), roots_.end(), other.roots_.begin(), other.roots_.end());
}

bool TwistedLevi::is_galois_stable() const {
  if (side_ == Side::H) return true;
  return roots_stable_under(roots_, frame_->frobenius_perm()) && roots_stable_under(roots_, frame_->ramification_perm());
}

bool TwistedLevi::is_gamma_stable() const {
  if (side_ == Side::H) return true;
  for (const auto& g : frame_->gamma_generators()) {
    if (!roots_stable_under(roots_, g.perm)) return false;
  }
  return true;
}

std::vector<int> TwistedLevi::block_index() const {
  std::vector<int> idx(static_cast<size_t>(frame_->n()), -1);
  for (size_t b = 0; b < partition_.size(); ++b) {
    for (int k : partition_[b]) idx[static_cast<size_t>(k)] = static_cast<int>(b);
  }
  return idx;
}

// ------------------------------------------------------------ functions

FieldElement coroot_pairing(const DualElement& X, int j, int k) {
  if (X.side() != Side::G) throw InputError("coroot_pairing needs a G-side element");
  if (j == k) throw InputError("coroot_pairing needs distinct indices");
  return X[static_cast<size_t>(j)] - X[static_cast<size_t>(k)];
}

FieldElement root_pairing(const DualElement& X, const RootVec& a) {
  if (a.size() != X.size()) throw InputError("root and dual element dimensions differ");
  FieldElement sum = FieldElement::zero(X.frame()->field());
  for (size_t b = 0; b < a.size(); ++b) {
    if (a[b] != 0) sum = sum + X[b].scaled(Rational(a[b]));
  }
  return sum;
}

bool is_rational(const DualElement& X) {
  if (X.side() == Side::H) return is_rational(lift_from_fixed(X));
  const auto& F = X.frame()->field();
  for (const auto& g : {F->frobenius(), F->ramification_generator()}) {
    auto perm = X.frame()->galois_perm(g);
    for (size_t k = 0; k < X.size(); ++k) {
      if (X[static_cast<size_t>(perm[k])] != X[k].galois(g)) return false;
    }
  }
  return true;
}

DualElement act_gamma(const GammaElement& g, const DualElement& X) {
  if (X.side() == Side::H) return X;
  std::vector<FieldElement> c(X.size(), FieldElement::zero(X.frame()->field()));
  for (size_t k = 0; k < X.size(); ++k) {
    FieldElement v = X[k].galois(g.galois);
    c[static_cast<size_t>(g.perm[k])] = g.sign == 1 ? v : -v;
  }
  return DualElement(X.frame(), Side::G, std::move(c));
}

bool is_gamma_fixed(const DualElement& X) {
  if (X.side() == Side::H) return true;
  for (const auto& g : X.frame()->gamma_generators()) {
    if (act_gamma(g, X) != X) return false;
  }
  return true;
}

DualElement gamma_average(const DualElement& X) {
  if (X.side() == Side::H) return X;
  const auto& frame = X.frame();
  DualElement sum = DualElement::zero(frame, Side::G);
  for (const auto& g : frame->gamma_elements()) sum = sum + act_gamma(g, X);
  return sum.scaled(Rational(1, frame->gamma_order()));
}

DualElement project_to_fixed(const DualElement& X) {
  if (X.side() != Side::G) throw InputError("projection needs a G-side element");
  if (!is_gamma_fixed(X)) throw MathError("projection of a dual element that is not Gamma-fixed");
  const auto& frame = X.frame();
  std::vector<FieldElement> y;
  for (const auto& orbit : frame->fixed_orbits()) {
    int k = orbit.front();
    FieldElement v = X[static_cast<size_t>(k)];
    y.push_back(frame->coord_sign(k) == 1 ? v : -v);
  }
  for (int k = 0; k < frame->n(); ++k) {
    if (frame->orbit_of(k) < 0 && !X[static_cast<size_t>(k)].is_zero()) {
      throw std::logic_error("Gamma-fixed element with a nonzero coordinate off V^Gamma");
    }
  }
  return DualElement(frame, Side::H, std::move(y));
}

DualElement lift_from_fixed(const DualElement& Y) {
  if (Y.side() != Side::H) throw InputError("lift needs an H-side element");
  const auto& frame = Y.frame();
  std::vector<FieldElement> x;
  for (int k = 0; k < frame->n(); ++k) {
    int b = frame->orbit_of(k);
    if (b < 0) {
      x.push_back(FieldElement::zero(frame->field()));
    } else {
      const FieldElement& v = Y[static_cast<size_t>(b)];
      x.push_back(frame->coord_sign(k) == 1 ? v : -v);
    }
  }
  return DualElement(frame, Side::G, std::move(x));
}

bool is_central_for(const DualElement& X, const TwistedLevi& L) {
  if (X.side() != L.side()) throw InputError("centrality across G and H sides");
  if (X.side() == Side::G) {
    for (const auto& b : L.partition()) {
      for (int k : b) {
        if (X[static_cast<size_t>(k)] != X[static_cast<size_t>(b.front())]) return false;
      }
    }
    return true;
  }
  for (const auto& a : L.roots()) {
    if (!root_pairing(X, a).is_zero()) return false;
  }
  return true;
}

TwistedLevi centralizer_levi(const TwistedLevi& M, const DualElement& X) {
  if (X.side() != M.side()) throw InputError("centralizer across G and H sides");
  if (M.side() == Side::G) {
    UnionFind uf(M.frame()->n());
    for (const auto& b : M.partition()) {
      for (size_t i = 0; i < b.size(); ++i) {
        for (size_t j = i + 1; j < b.size(); ++j) {
          if (coroot_pairing(X, b[i], b[j]).is_zero()) uf.unite(b[i], b[j]);
        }
      }
    }
    return TwistedLevi::from_partition(M.frame(), uf.classes());
  }
  RootSet roots;
  for (const auto& a : M.roots()) {
    if (root_pairing(X, a).is_zero()) roots.insert(a);
  }
  return TwistedLevi::from_roots(M.frame(), Side::H, roots, "");
}

std::vector<std::pair<int, int>> phi_prime(const TwistedLevi& M, const DualElement& X, const Rational& t) {
  if (M.side() != Side::G || X.side() != Side::G) throw InputError("phi_prime needs G-side data");
  std::vector<std::pair<int, int>> out;
  const Valuation bound(-t);
  for (const auto& b : M.partition()) {
    for (size_t i = 0; i < b.size(); ++i) {
      for (size_t j = i + 1; j < b.size(); ++j) {
        FieldElement d = coroot_pairing(X, b[i], b[j]);
        if (d.is_zero() || d.val() > bound) out.emplace_back(std::min(b[i], b[j]), std::max(b[i], b[j]));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Partition phi_prime_classes(const TwistedLevi& M, const DualElement& X, const Rational& t) {
  UnionFind uf(M.frame()->n());
  for (auto [j, k] : phi_prime(M, X, t)) uf.unite(j, k);
  return canonical_partition(uf.classes());
}

std::pair<DualElement, DualElement> sharp_flat(const TwistedLevi& M, const DualElement& X, const Rational& t) {
  if (X.is_zero() || X.depth() != t) throw InputError("sharp_flat needs depth(X) = t = " + to_string(t));
  const auto& frame = X.frame();
  std::vector<FieldElement> sharp(X.size(), FieldElement::zero(frame->field()));
  for (const auto& cls : phi_prime_classes(M, X, t)) {
    long size = static_cast<long>(cls.size());
    if (size % frame->field()->p() == 0) throw MathError("Phi' class size divisible by p");
    FieldElement sum = FieldElement::zero(frame->field());
    for (int k : cls) sum = sum + X[static_cast<size_t>(k)];
    FieldElement avg = sum.scaled(Rational(1, size));
    for (int k : cls) sharp[static_cast<size_t>(k)] = avg;
  }
  DualElement xs(frame, Side::G, std::move(sharp));
  return {xs, X - xs};
}

bool is_generic(const DualElement& X, const Rational& t, const TwistedLevi& Mprime, const TwistedLevi& M) {
  if (!M.contains(Mprime)) throw InputError("is_generic needs Mprime inside M");
  const Valuation target(-t);
  for (const auto& a : M.roots()) {
    if (Mprime.roots().count(a)) continue;
    FieldElement v = root_pairing(X, a);
    if (v.is_zero() || v.val() != target) return false;
  }
  return true;
}

RootSet fixed_point_restricted_roots(const TwistedLevi& L) {
  if (L.side() != Side::G) throw InputError("fixed-point roots need a G-side Levi");
  if (!L.is_gamma_stable()) throw InputError("fixed-point roots need a Gamma-stable Levi");
  const auto& frame = L.frame();
  RootSet out;
  for (const auto& a : L.roots()) {
    auto [j, k] = root_pair(a);
    RootVec r = frame->restrict_root(j, k);
    if (std::all_of(r.begin(), r.end(), [](long v) { return v == 0; })) continue;
    bool survives = true;
    for (const auto& g : frame->gamma_elements()) {
      auto [target, scalar] = frame->root_space_action(g, j, k);
      if (target == std::make_pair(j, k) && scalar != 1) {
        survives = false;
        break;
      }
    }
    if (survives) out.insert(r);
  }
  return out;
}

TwistedLevi fixed_levi(const TwistedLevi& L) {
  return TwistedLevi::from_roots(L.frame(), Side::H, fixed_point_restricted_roots(L), "");
}

bool fixed_levi_equals(const TwistedLevi& L, const TwistedLevi& Hlevi) {
  if (Hlevi.side() != Side::H) throw InputError("fixed_levi_equals needs an H-side descriptor");
  if (L.frame() != Hlevi.frame()) throw InputError("frames mismatch");
  return fixed_point_restricted_roots(L) == Hlevi.roots();
}

std::vector<Partition> stable_partitions(const FramePtr& frame) {
  const int n = frame->n();
  if (n > 8) throw InputError("stable partition enumeration limited to n <= 8");
  std::vector<Partition> out;
  std::vector<int> growth(static_cast<size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int pos, int max_block) {
    if (pos == n) {
      Partition p(static_cast<size_t>(max_block + 1));
      for (int k = 0; k < n; ++k) p[static_cast<size_t>(growth[static_cast<size_t>(k)])].push_back(k);
      p = canonical_partition(p);
      RootSet roots;
      for (const auto& b : p) {
        for (int j : b) {
          for (int k : b) {
            if (j != k) roots.insert(g_root(n, j, k));
          }
        }
      }
      bool ok = roots_stable_under(roots, frame->frobenius_perm()) &&
                roots_stable_under(roots, frame->ramification_perm());
      for (const auto& g : frame->gamma_generators()) ok = ok && roots_stable_under(roots, g.perm);
      if (ok) out.push_back(p);
      return;
    }
    for (int b = 0; b <= max_block + 1; ++b) {
      growth[static_cast<size_t>(pos)] = b;
      rec(pos + 1, std::max(max_block, b));
    }
  };
  if (n > 0) {
    growth[0] = 0;
    rec(1, 0);
  }
  return out;
}

}  // namespace levilift
