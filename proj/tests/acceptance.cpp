// Acceptance checks: one PASS/FAIL line per criterion.
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "levilift/commands.hpp"
#include "levilift/sampling.hpp"

using namespace levilift;

namespace {

const std::string kCorpus = LEVILIFT_CORPUS_DIR;

Scenario scenario(const std::string& name) { return load_scenario(kCorpus + "/" + name + ".json"); }

Rational R(long a, long b = 1) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

// Step-bound audit shared by every lift in this binary.
struct BoundAudit {
  long runs = 0;
  long violations = 0;
  std::string first;

  void add(const LiftResult& run, const std::string& where) {
    ++runs;
    const Rational top = run.steps.empty() ? Rational(0) : run.steps.front().t;
    const long e = run.sigma.levis.front().frame()->field()->e();
    Rational et = top * e;
    mpz_class ceil_et;
    mpz_cdiv_q(ceil_et.get_mpz_t(), et.get_num_mpz_t(), et.get_den_mpz_t());
    bool ok = static_cast<long>(run.steps.size()) <= run.step_bound && run.step_bound <= ceil_et.get_si();
    if (!ok) {
      ++violations;
      if (first.empty()) {
        first = where + ": " + std::to_string(run.steps.size()) + " steps, bound " + std::to_string(run.step_bound);
      }
    }
  }
  void add(const DatumLiftResult& res, const std::string& where) {
    for (const auto& r : res.runs) add(r, where);
  }
};

BoundAudit g_bound;

struct Outcome {
  bool pass = true;
  std::string detail;
};

void report(int n, const Outcome& o, double seconds) {
  std::ostringstream t;
  t.precision(2);
  t << std::fixed << seconds;
  std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail << " [" << t.str() << " s]"
            << std::endl;
}

bool same_levi(const TwistedLevi& L, const Json& want) {
  const int n = L.frame()->n();
  Partition p;
  if (want.is_string() && want == "G") {
    std::vector<int> all;
    for (int k = 0; k < n; ++k) all.push_back(k);
    p = {all};
  } else if (want.is_string() && want == "T") {
    for (int k = 0; k < n; ++k) p.push_back({k});
  } else if (want.is_array()) {
    for (const auto& b : want) p.push_back(b.get<std::vector<int>>());
  } else {
    return false;
  }
  return L.side() == Side::G && canonical_partition(L.partition()) == canonical_partition(p);
}

bool same_levis(const CharacterDatum& sigma, const Json& want) {
  if (sigma.levis.size() != want.size()) return false;
  for (size_t i = 0; i < want.size(); ++i) {
    if (!same_levi(sigma.levis[i], want[i])) return false;
  }
  return true;
}

bool same_depths(const CharacterDatum& sigma, const Json& want) {
  if (sigma.depths.size() != want.size()) return false;
  for (size_t i = 0; i < want.size(); ++i) {
    if (sigma.depths[i] != parse_rational(want[i].get<std::string>())) return false;
  }
  return true;
}

DatumLiftResult lift_scenario(const Scenario& sc) {
  LiftContext ctx(ChoiceStrategy::canonical(), sc.h_levis);
  auto res = lift_datum(*sc.first_on(Side::H), sc.frame, ctx);
  g_bound.add(res, sc.name);
  return res;
}

// Smallest valuation in (1/e)Z strictly above half of the top depth.
Rational theta_argument_val(const CharacterDatum& delta, long e) {
  Rational scaled = delta.depths.back() * e / 2;
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  Rational d(mpz_class(fl + 1), mpz_class(e));
  d.canonicalize();
  return d;
}

long theta_mismatches(const CharacterDatum& delta, const CharacterDatum& sigma, const FramePtr& frame, long samples,
                      std::uint64_t seed) {
  Sampler smp(seed);
  const Rational d = theta_argument_val(delta, frame->field()->e());
  long bad = 0;
  for (long i = 0; i < samples; ++i) {
    DualElement u = smp.h_argument(frame, d);
    if (theta_evaluate(delta, u, 0).torsion != theta_evaluate(sigma, lift_from_fixed(u), 0).torsion) ++bad;
  }
  return bad;
}

// 1. Sharp/flat decomposition on random elements.
Outcome sharp_flat_suite() {
  std::vector<NamedFrame> frames;
  for (auto& f : sample_frames()) {
    if (f.frame->n() == 4) frames.push_back(f);
  }
  {
    FieldDesc d;
    d.p = 5;
    d.f = 2;
    d.e = 2;
    d.residue_modulus = {3, 0, 1};
    auto F = Field::create(d);
    frames.push_back({"gl4-ram-unram", TorusFrame::create(F, 4, {1, 0, 3, 2}, {1, 0, 3, 2},
                                                          {GammaElement{{0, 1, 2, 3}, 1, {}, {1, 1, -1, -1}}})});
  }
  Sampler smp(20240501);
  long cases = 0, fixed_cases = 0;
  for (int iter = 0; cases < 500 && iter < 5000; ++iter) {
    const auto& nf = frames[static_cast<size_t>(smp.uniform(0, static_cast<long>(frames.size()) - 1))];
    const auto& frame = nf.frame;
    const long e = frame->field()->e();
    auto parts = stable_partitions(frame);
    TwistedLevi M = TwistedLevi::from_partition(frame, parts[static_cast<size_t>(smp.uniform(0, static_cast<long>(parts.size()) - 1))]);
    const Rational t = R(smp.uniform(1, 3 * e), e);
    const bool gamma_fixed = smp.coin();
    auto X = smp.rational_dual_exact(frame, t, gamma_fixed);
    if (!X) continue;
    ++cases;
    if (gamma_fixed) ++fixed_cases;
    std::string where = nf.name + " case " + std::to_string(cases);
    auto [sharp, flat] = sharp_flat(M, *X, t);
    if (sharp + flat != *X) return {false, where + ": X != X_sharp + X_flat"};
    if (!flat.is_zero() && !(flat.min_val().value() > -t)) return {false, where + ": X_flat has depth >= t"};
    for (auto [j, k] : phi_prime(M, *X, t)) {
      if (!coroot_pairing(sharp, j, k).is_zero()) return {false, where + ": X_sharp does not kill a Phi' coroot"};
    }
    if (!sharp.is_zero()) {
      TwistedLevi C = centralizer_levi(M, sharp);
      if (!is_generic(sharp, t, C, M)) return {false, where + ": X_sharp is not generic for its centralizer"};
      if (C != TwistedLevi::from_partition(frame, phi_prime_classes(M, *X, t))) {
        return {false, where + ": centralizer differs from the Phi' classes"};
      }
    }
    if (gamma_fixed && !is_gamma_fixed(sharp)) return {false, where + ": Gamma-fixed input, X_sharp not Gamma-fixed"};
    if (!is_rational(sharp)) return {false, where + ": X_sharp not rational"};
  }
  if (cases < 500) return {false, "only " + std::to_string(cases) + " cases generated"};
  return {true, std::to_string(cases) + " random elements over " + std::to_string(frames.size()) + " frames (" +
                    std::to_string(fixed_cases) + " Gamma-fixed)"};
}

// Rational elements spanning the lattice of valuation >= d in the torus Lie algebra.
std::vector<DualElement> spanning_arguments(const FramePtr& frame, const Rational& d) {
  const auto& F = frame->field();
  std::vector<DualElement> out;
  for (int k = 0; k < frame->n(); ++k) {
    for (int j = 0; j < F->f(); ++j) {
      ResidueElem unit(static_cast<size_t>(F->f()), 0);
      unit[static_cast<size_t>(j)] = 1;
      std::vector<FieldElement> c(static_cast<size_t>(frame->n()), FieldElement::zero(F));
      c[static_cast<size_t>(k)] = FieldElement::from_digits(F, d, {unit});
      DualElement u = galois_average(DualElement(frame, Side::G, std::move(c)));
      if (!u.is_zero()) out.push_back(u);
    }
  }
  return out;
}

// 2. chars_equal_mod against direct evaluation of psi(Tr X(u)) on spanning arguments.
Outcome coset_oracle() {
  FieldDesc q;
  q.p = 5;
  FieldDesc u;
  u.p = 5;
  u.f = 2;
  u.residue_modulus = {3, 0, 1};
  FieldDesc r;
  r.p = 5;
  r.e = 2;
  std::vector<FramePtr> frames = {
      TorusFrame::create(Field::create(q), 2, {}, {}, {GammaElement{{0, 1}, 1, {}, {}}}),
      TorusFrame::create(Field::create(u), 2, {1, 0}, {}, {GammaElement{{0, 1}, 1, {}, {}}}),
      TorusFrame::create(Field::create(r), 2, {}, {1, 0}, {GammaElement{{0, 1}, 1, {}, {}}}),
  };
  Sampler smp(77);
  long cases = 0, equal = 0, args = 0;
  for (int iter = 0; cases < 240 && iter < 5000; ++iter) {
    const auto& frame = frames[static_cast<size_t>(cases % 3)];
    const long e = frame->field()->e();
    const Rational rr = R(smp.uniform(1, 4 * e), e);
    // s uniformly on a grid inside (r/2, r)
    const long num = smp.uniform(1, 7);
    const Rational s = rr / 2 + rr * R(num, 16);
    auto X = smp.rational_dual_exact(frame, rr, false);
    if (!X) continue;
    DualElement Y = smp.rational_dual(frame, R(smp.uniform(0, 4 * e), e), false);
    if (smp.uniform(0, 3) == 0) Y = DualElement::zero(frame, Side::G);
    DualElement Xp = *X + Y;
    if (Xp.is_zero()) continue;
    TwistedLevi T = TwistedLevi::torus(frame, Side::G);
    QuasiCharacter a = QuasiCharacter::from_realizers(T, {*X});
    QuasiCharacter b = QuasiCharacter::from_realizers(T, {Xp});
    if (char_depth(b) > rr) continue;
    ++cases;
    bool brute = true;
    for (Rational d = s; !(d > rr);) {
      // next depth in (1/e)Z strictly above d
      Rational scaled = d * e;
      mpz_class fl;
      mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
      d = Rational(mpz_class(fl + 1), mpz_class(e));
      d.canonicalize();
      if (d > rr) break;
      for (const auto& arg : spanning_arguments(frame, d)) {
        ++args;
        Rational va = frac(psi_value(trace_to_base(dual_pairing(*X, arg))));
        Rational vb = frac(psi_value(trace_to_base(dual_pairing(Xp, arg))));
        if (va != vb) brute = false;
      }
    }
    bool fast = chars_equal_mod(a, b, s);
    if (brute) ++equal;
    if (brute != fast) {
      return {false, "case " + std::to_string(cases) + ": chars_equal_mod says " + (fast ? "equal" : "different") +
                         ", evaluation says " + (brute ? "equal" : "different") + " (r = " + to_string(rr) +
                         ", s = " + to_string(s) + ")"};
    }
  }
  if (cases < 200 || equal == 0 || equal == cases) {
    return {false, "insufficient coverage: " + std::to_string(cases) + " cases, " + std::to_string(equal) + " equal"};
  }
  return {true, std::to_string(cases) + " cases (" + std::to_string(equal) + " equal, " +
                    std::to_string(cases - equal) + " different), " + std::to_string(args) + " test arguments"};
}

Outcome expect_lift(const std::string& name, Outcome acc = {}) {
  Scenario sc = scenario(name);
  auto res = lift_scenario(sc);
  auto fail = [&](const std::string& why) { return Outcome{false, name + ": " + why}; };
  if (!res.ok()) return fail("lift checks failed");
  if (sc.expect.contains("lift_levis") && !same_levis(res.lift.sigma, sc.expect["lift_levis"])) {
    return fail("lift Levis differ from expectation");
  }
  if (sc.expect.contains("lift_depths") && !same_depths(res.lift.sigma, sc.expect["lift_depths"])) {
    return fail("lift depths differ from expectation");
  }
  if (sc.expect.contains("steps") && static_cast<long>(res.lift.steps.size()) != sc.expect["steps"].get<long>()) {
    return fail("step count differs from expectation");
  }
  if (sc.expect.contains("first_step_levi") && !same_levi(res.lift.steps.front().M_prime, sc.expect["first_step_levi"])) {
    return fail("first-step M' differs from expectation (got " + res.lift.steps.front().M_prime.name() + ")");
  }
  if (sc.expect.contains("step_levis")) {
    const auto& want = sc.expect["step_levis"];
    if (want.size() != res.lift.steps.size()) return fail("step count differs from expectation");
    for (size_t i = 0; i < want.size(); ++i) {
      if (!same_levi(res.lift.steps[i].M_prime, want[i])) return fail("step " + std::to_string(i) + " Levi differs");
    }
  }
  // Genericity of every level of the lift.
  const auto& sigma = res.lift.sigma;
  for (size_t i = 0; i < sigma.chars.size(); ++i) {
    auto [t, X] = realize_at_top(sigma.chars[i]);
    if (!is_generic(X, t, sigma.levis[i], sigma.levis[i + 1])) return fail("lift character " + std::to_string(i) + " not generic");
  }
  acc.detail += (acc.detail.empty() ? "" : "; ") + name + ": " + res.lift.sigma.levis.front().name() + " ... depths " +
                std::to_string(sigma.depths.size());
  return acc;
}

// 3. Both regimes of the GL(2) x GL(2) example.
Outcome weird_regimes() {
  Outcome o = expect_lift("eg_weird_equal");
  if (!o.pass) return o;
  o = expect_lift("eg_weird_split", o);
  if (!o.pass) return o;
  return {true, "equal regime lifts to G0 = G in one step; split regime lifts to G0 = {{1,2},{3,4}}, G-generic"};
}

// 4. Three regimes of the unramified induction step.
Outcome pindstep_regimes() {
  for (const char* name : {"eg_pindstep_sharp", "eg_pindstep_twisted", "eg_pindstep_generic"}) {
    Outcome o = expect_lift(name);
    if (!o.pass) return o;
  }
  return {true, "M' = {{1,3},{2,4}}, {{1,4},{2,3}}, T as expected"};
}

// 5. Incompatible entries: folded lift is a chain, naive lift is not.
Outcome incompatible() {
  Outcome o = expect_lift("eg_incompatible");
  if (!o.pass) return o;
  Scenario sc = scenario("eg_incompatible");
  auto naive = naive_lift(*sc.datum, sc.frame, sc.h_levis);
  if (naive.chain || !naive.incomparable) return {false, "naive per-entry lift unexpectedly forms a chain"};
  return {true, "chain T < {{1,2},{3,4}} < G, depths (1, 2, 3); naive lift gives incomparable " +
                    naive.incomparable->first.name() + " and " + naive.incomparable->second.name()};
}

// 6. Lifting contract on the corpus and on random data.
Outcome main_contract() {
  long corpus_cases = 0;
  for (const char* name : {"eg_weird_equal", "eg_weird_split", "eg_pindstep_sharp", "eg_pindstep_twisted",
                           "eg_pindstep_generic", "eg_tliftone", "eg_incompatible", "sp4_nonstable"}) {
    Scenario sc = scenario(name);
    auto res = lift_scenario(sc);
    if (!res.ok()) return {false, std::string(name) + ": lift contract failed"};
    CommandOptions o;
    o.command = "eval-theta";
    o.samples = 200;
    auto cr = run_command(o, sc);
    if (cr.exit_code != 0 || cr.report["discrepancies"] != 0) return {false, std::string(name) + ": theta disagreement"};
    ++corpus_cases;
  }
  auto frames = sample_frames();
  Sampler smp(4242);
  long random_cases = 0, multi = 0;
  for (int iter = 0; random_cases < 60 && iter < 2000; ++iter) {
    const auto& nf = frames[static_cast<size_t>(iter % static_cast<int>(frames.size()))];
    auto sigma0 = smp.stable_datum(nf.frame, 3);
    if (!sigma0) continue;
    CharacterDatum delta = restrict_datum(*sigma0, {});
    if (!validate_datum(delta).ok()) return {false, nf.name + ": restricted random datum is invalid"};
    LiftContext ctx(ChoiceStrategy::canonical());
    auto res = lift_datum(delta, nf.frame, ctx);
    g_bound.add(res, nf.name);
    if (!res.ok()) return {false, nf.name + " random case " + std::to_string(random_cases) + ": contract failed"};
    long bad = theta_mismatches(delta, res.lift.sigma, nf.frame, 200, 1000 + static_cast<std::uint64_t>(iter));
    if (bad != 0) return {false, nf.name + ": " + std::to_string(bad) + " theta disagreements"};
    if (delta.length() >= 2) ++multi;
    ++random_cases;
  }
  if (random_cases < 50) return {false, "only " + std::to_string(random_cases) + " random data generated"};
  return {true, std::to_string(corpus_cases) + " corpus data and " + std::to_string(random_cases) + " random data (" +
                    std::to_string(multi) + " with several characters): valid, Gamma-stable, refactorization holds, "
                    "0 theta disagreements over 200 samples each"};
}

// 7. Restriction followed by replayed lifting returns the datum.
Outcome roundtrips() {
  auto frames = sample_frames();
  Sampler smp(9001);
  long cases = 0;
  for (int iter = 0; cases < 60 && iter < 2000; ++iter) {
    const auto& nf = frames[static_cast<size_t>(iter % static_cast<int>(frames.size()))];
    auto sigma = smp.stable_datum(nf.frame, 3);
    if (!sigma) continue;
    auto rt = replay_roundtrip(*sigma, {});
    g_bound.add(rt.lifted, nf.name + " replay");
    if (!rt.ok) return {false, nf.name + ": " + rt.message};
    if (!rt.lifted.lift.correction.is_trivial()) return {false, nf.name + ": nontrivial correction after replay"};
    ++cases;
  }
  for (const char* name : {"eg_tliftone", "eg_incompatible"}) {
    Scenario sc = scenario(name);
    auto res = lift_scenario(sc);
    auto rt = replay_roundtrip(res.lift.sigma, sc.h_levis);
    if (!rt.ok || !rt.lifted.lift.correction.is_trivial()) return {false, std::string(name) + ": " + rt.message};
    ++cases;
  }
  if (cases < 50) return {false, "only " + std::to_string(cases) + " roundtrips"};
  return {true, std::to_string(cases) + " Gamma-stable data reproduced with trivial correction"};
}

// 8. Howe-type G datum is not Gamma-stable; lifting the H character is.
Outcome sp4_negative() {
  Scenario sc = scenario("sp4_nonstable");
  const CharacterDatum& howe = *sc.datum;
  if (!validate_datum(howe).ok()) return {false, "Howe datum is not a valid datum"};
  auto st = check_gamma_stable(howe);
  if (st.stable) return {false, "Howe datum is unexpectedly Gamma-stable"};
  if (!st.witness || st.witness->kind != "levi" || st.witness->levi != "T0xGL2") {
    return {false, "witness is not the Levi T0xGL2"};
  }
  const CharacterDatum& delta = *sc.datum2;
  LiftContext ctx(ChoiceStrategy::canonical(), sc.h_levis);
  auto res = lift_single(delta.chars[0], delta.levis[1], TwistedLevi::full(sc.frame), Rational(0), ctx);
  g_bound.add(res, "sp4 lift_single");
  const auto& sigma = res.sigma;
  if (sigma.length() != 1 || !same_levi(sigma.levis[0], "T") || !same_levi(sigma.levis[1], "G")) {
    return {false, "lift is not a single-level datum on T < G"};
  }
  if (!validate_datum(sigma).ok() || !check_gamma_stable(sigma).stable) return {false, "lift is not a stable datum"};
  if (!check_refactorization(restrict_datum(sigma, sc.h_levis), delta).ok) return {false, "lift does not restrict to the input"};
  return {true, "Howe datum fails stability at Levi T0xGL2 (index 0); lift_single gives a stable datum on T < G"};
}

// 9. Every run in this binary stays within the step bound.
Outcome termination() {
  Scenario sc = scenario("eg_tliftone");
  auto res = lift_scenario(sc);
  if (res.lift.steps.size() != 3) return {false, "eg_tliftone takes " + std::to_string(res.lift.steps.size()) + " steps"};
  if (g_bound.violations != 0) return {false, std::to_string(g_bound.violations) + " runs exceed the bound; " + g_bound.first};
  return {true, std::to_string(g_bound.runs) + " lift_single runs within ceil(e(t - s)) <= ceil(e t) steps"};
}

}  // namespace

int main() {
  using Clock = std::chrono::steady_clock;
  std::vector<std::function<Outcome()>> criteria = {sharp_flat_suite, coset_oracle,  weird_regimes,
                                                    pindstep_regimes, incompatible,  main_contract,
                                                    roundtrips,       sp4_negative,  termination};
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::chrono::duration<double> dt = Clock::now() - t0;
    report(static_cast<int>(i + 1), o, dt.count());
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
