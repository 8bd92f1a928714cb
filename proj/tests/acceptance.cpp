// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cheval/badplaces.hpp"
#include "cheval/cw_bounds.hpp"
#include "cheval/eliminate.hpp"
#include "cheval/factor.hpp"
#include "cheval/fixtures.hpp"
#include "cheval/heights.hpp"
#include "cheval/integer.hpp"
#include "cheval/puiseux.hpp"
#include "cheval/verify.hpp"

using namespace cheval;

namespace {

// Pinned limits.
constexpr double kPrimeSumSeconds = 60;
constexpr double kHeightSuiteSeconds = 120;
constexpr double kPuiseuxSeconds = 60;
constexpr double kEmpiricalSeconds = 600;
constexpr long kPrimeSumLimit = 1000000;
constexpr long kPrimeCountAtLimit = 78498;  // pi(10^6)
// chunked sums reassociate the long double additions
constexpr long double kSweepRatioTolerance = 1e-12L;
constexpr int kHeightInstances = 100;
constexpr int kRamificationSamples = 200;
constexpr int kFibersPerFixture = 20;
constexpr long kSampleHeight = 50;
constexpr int kRandomFields = 50;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Tally {
  long checked = 0, failed = 0;
  std::string first;
  void add(bool ok, const std::string& what) {
    ++checked;
    if (!ok && failed++ == 0) first = what;
  }
  bool ok(long at_least = 1) const { return failed == 0 && checked >= at_least; }
  std::string str() const {
    std::string s = std::to_string(checked) + " checked, " + std::to_string(failed) + " failed";
    if (failed) s += " (first: " + first + ")";
    return s;
  }
};

std::string fmt(long double x) {
  char b[64];
  std::snprintf(b, sizeof b, "%.6Lg", x);
  return b;
}

QPoly2 random_poly2(std::mt19937_64& rng, int m, int n, long range) {
  std::uniform_int_distribution<long> coef(-range, range);
  std::vector<QPoly> cols;
  for (int j = 0; j <= n; ++j) {
    std::vector<mpq_class> c;
    for (int i = 0; i <= m; ++i) c.emplace_back(coef(rng));
    cols.emplace_back(c);
  }
  if (cols.back().zero()) cols.back() = QPoly(1);
  return QPoly2(cols);
}

QPoly random_poly(std::mt19937_64& rng, int d, long range) {
  std::uniform_int_distribution<long> coef(-range, range);
  std::vector<mpq_class> c;
  for (int i = 0; i <= d; ++i) c.emplace_back(coef(rng));
  if (sgn(c.back()) == 0) c.back() = 1;
  return QPoly(c);
}

QPoly random_irreducible(std::mt19937_64& rng, int d) {
  std::uniform_int_distribution<long> c(-9, 9);
  for (;;) {
    std::vector<mpq_class> v(static_cast<size_t>(d) + 1);
    for (auto& x : v) x = c(rng);
    v[static_cast<size_t>(d)] = 1;
    QPoly F(v);
    if (is_irreducible(F)) return F;
  }
}

QPoly zp(std::initializer_list<long> c) {
  std::vector<mpq_class> v;
  for (long x : c) v.emplace_back(x);
  return QPoly(v);
}

// ---- 1: prime sums ----
Outcome prime_sums() {
  PrimeSumSweep par = prime_sum_sweep_parallel(kPrimeSumLimit);
  PrimeSumSweep ser = prime_sum_sweep_serial(kPrimeSumLimit);
  PrimeSumRecord top = prime_sum_checks(kPrimeSumLimit);
  bool agree = par.checked == ser.checked && par.violations == ser.violations &&
               std::fabs(par.worst_theta - ser.worst_theta) < kSweepRatioTolerance &&
               std::fabs(par.worst_prime_count - ser.worst_prime_count) < kSweepRatioTolerance &&
               std::fabs(par.worst_mertens - ser.worst_mertens) < kSweepRatioTolerance;
  Outcome o;
  o.pass = par.violations == 0 && par.checked == kPrimeSumLimit - 1 && agree && top.prime_count == kPrimeCountAtLimit;
  o.detail = std::to_string(par.checked) + " values of x, " + std::to_string(par.violations) +
             " violations; worst ratios " + fmt(par.worst_prime_count) + ", " + fmt(par.worst_theta) + ", " +
             fmt(par.worst_mertens) + "; pi(10^6) = " + std::to_string(top.prime_count) +
             (agree ? "; parallel = serial" : "; PARALLEL AND SERIAL DISAGREE");
  return o;
}

// ---- 2: height inequalities ----
Outcome height_suite() {
  std::mt19937_64 rng(90210);
  std::uniform_int_distribution<int> deg4(1, 4), deg8(1, 8), deg3(0, 3), parts(2, 4);
  Tally resultant, gelfond, mahler, divisor, translation, determinant;
  while (resultant.checked < 2 * kHeightInstances) {
    QPoly2 f = random_poly2(rng, deg4(rng), deg4(rng), 100);
    if (resultant_y(f).zero()) continue;
    resultant.add(check_resultant_affine(f).holds(), to_string(f));
    resultant.add(check_resultant_projective(f).holds(), to_string(f));
  }
  for (int t = 0; t < kHeightInstances; ++t) {
    std::vector<QPoly2> fs;
    int k = parts(rng);
    for (int i = 0; i < k; ++i) fs.push_back(random_poly2(rng, deg3(rng), deg3(rng) + (i == 0), 100));
    gelfond.add(check_gelfond(fs).holds(), "Gelfond");
    QPoly F = random_poly(rng, deg8(rng), 100);
    mahler.add(check_mahler(F).holds(), to_string(F));
    QPoly g = random_poly(rng, deg4(rng), 100);
    bool all = true;
    for (auto& c : check_divisor(g, g * random_poly(rng, deg4(rng), 100))) all = all && c.holds();
    divisor.add(all, to_string(g));
  }
  FieldPtr K = NumberField::create(zp({-2, 0, 1}));
  FieldPtr Kc = NumberField::create(zp({-2, 0, 0, 1}));
  for (int t = 0; t < kHeightInstances; ++t) {
    QPoly2 h = random_poly2(rng, deg4(rng), deg4(rng), 100);
    NFElem alpha = t % 3 == 0   ? NFElem(mpq_class(t - 50, 7))
                   : t % 3 == 1 ? NFElem(K, zp({t % 5 - 2, 1 + t % 3}))
                                : NFElem(Kc, zp({1, t % 4 - 2, 1}));
    translation.add(check_translation(h, alpha).holds(), to_string(h));
    int s = 2 + t % 3;
    std::vector<std::vector<QPoly>> M(static_cast<size_t>(s), std::vector<QPoly>(static_cast<size_t>(s)));
    for (auto& row : M)
      for (auto& e : row) e = random_poly(rng, t % 3, 100);
    determinant.add(check_determinant(M).holds(), "determinant");
  }
  Outcome o;
  o.pass = resultant.ok(2 * kHeightInstances) && gelfond.ok(kHeightInstances) && mahler.ok(kHeightInstances) &&
           divisor.ok(kHeightInstances) && translation.ok(kHeightInstances) && determinant.ok(kHeightInstances);
  o.detail = "resultant " + resultant.str() + "; Gelfond " + gelfond.str() + "; Mahler " + mahler.str() +
             "; divisor " + divisor.str() + "; translation " + translation.str() + "; determinant " +
             determinant.str();
  return o;
}

// ---- 3 and 4: Puiseux and Eisenstein on the fixtures ----
struct FixtureAnalysis {
  std::string name;
  std::vector<CenterAnalysis> centers;
};

std::vector<FixtureAnalysis> analyze_fixtures() {
  std::vector<std::pair<std::string, QPoly2>> fx{{"Y^2 - X", fixtures::square_root()},
                                                 {"Y^2 - X(X+1)", fixtures::node()},
                                                 {"Y^2 - XY + 1", fixtures::joukowski()},
                                                 {"Y~^4 - XY~^2 + 1", fixtures::joukowski_cover()},
                                                 {"Y~^4 + (10 - 4X^2)Y~^2 + 9", fixtures::descent_cover()}};
  std::vector<FixtureAnalysis> out;
  for (auto& [name, f] : fx) {
    PlaneCurveModel M = PlaneCurveModel::normalize_f0_monic(f);
    out.push_back({name, analyze_centers(M)});
  }
  return out;
}

Outcome puiseux_fixtures(const std::vector<FixtureAnalysis>& fx) {
  Tally residual, ramification, growth;
  size_t coefficients = 0;
  for (auto& F : fx)
    for (auto& A : F.centers) {
      std::string at = F.name + " at " + to_string(A.center.minpoly);
      ramification.add(A.ramification_sum == A.eisenstein.n, at);
      for (size_t i = 0; i < A.branches.size(); ++i) {
        residual.add(A.residuals[i].ok(), at);
        growth.add(A.growth[i].holds, at + " (" + A.growth[i].worst_place + ")");
        coefficients += A.growth[i].checked;
      }
    }
  Outcome o;
  o.pass = residual.ok() && ramification.ok(static_cast<long>(fx.size())) && growth.ok();
  o.detail = "centers " + ramification.str() + " for sum e = n; branches: residual " + residual.str() + ", growth " +
             growth.str() + " over " + std::to_string(coefficients) + " coefficient-place pairs";
  return o;
}

Outcome eisenstein_fixtures(const std::vector<FixtureAnalysis>& fx) {
  Tally checks;
  long double tightest = 1e300L;
  std::string tight_name;
  for (auto& F : fx)
    for (auto& A : F.centers)
      for (auto& c : A.checks()) {
        checks.add(c.holds(), F.name + " " + c.name);
        if (c.rhs > 0 && c.rhs - c.lhs.upper < tightest) tightest = c.rhs - c.lhs.upper, tight_name = c.name;
      }
  Outcome o;
  o.pass = checks.ok(5);
  o.detail = "inequalities " + checks.str() + "; smallest margin " + fmt(tightest) + " (" + tight_name + ")";
  return o;
}

// ---- 5: bad places ----
Outcome bad_places() {
  Tally checks;
  std::string details;
  for (auto spec : {fixtures::joukowski_covering(), fixtures::descent_covering()}) {
    CheckedCovering c = validate_covering(spec);
    CoveringAudit a = covering_audit(c, ChartPolicy::both);
    std::vector<const CoveringBadPlaces*> charts{&a.finite_places};
    if (a.infinite_places) charts.push_back(&*a.infinite_places);
    for (auto* b : charts) {
      std::vector<BoundCheck> all = b->base.checks;
      all.insert(all.end(), b->cover.checks.begin(), b->cover.checks.end());
      all.push_back(b->tower.check);
      all.push_back(b->union_check);
      for (auto& ch : all) checks.add(ch.holds(), to_string(c.base.f()) + ": " + ch.name);
      checks.add(b->base.T5_witnessed.subset_of(b->base.T[5]) && b->cover.T5_witnessed.subset_of(b->cover.T[5]),
                 "witnessed T5 outside T5");
    }
    details += "; " + to_string(c.base.f()) + ": T u T~ u U = " + a.finite_places.all.to_string() + ", h = " +
               fmt(a.finite_places.union_check.lhs.upper) + " <= " + fmt(a.finite_places.union_check.rhs);
  }
  Outcome o;
  o.pass = checks.ok(2 * 18);
  o.detail = "set estimates " + checks.str() + details;
  return o;
}

// ---- 6: ramification prediction ----
Outcome ramification_prediction() {
  std::mt19937_64 rng(4242);
  Tally match;
  for (int e : {2, 3}) {
    std::vector<std::tuple<int, int, mpq_class>> terms{{0, e, 1}, {1, 0, -1}};
    PlaneCurveModel M = PlaneCurveModel::normalize_f0_monic(make_qpoly2(terms));
    BadPlaceTable t = bad_place_table(M);
    PlaceSet excluded = t.T[1].united(t.T[5]).united(t.T[6]).united(t.T[7]);
    std::vector<long> ps;
    for (long p : primes_up_to(100))
      if (!excluded.contains(p)) ps.push_back(p);
    std::uniform_int_distribution<size_t> pick(0, ps.size() - 1);
    std::uniform_int_distribution<long> unit(1, 60), lexp(1, 6);
    long done = 0;
    while (done < kRamificationSamples) {
      long p = ps[pick(rng)], l = lexp(rng), a = unit(rng), b = unit(rng);
      if (a % p == 0 || b % p == 0) continue;
      mpq_class xi(ipow(p, static_cast<unsigned long>(l)) * a, b);
      if (rng() % 2) xi = -xi;
      xi.canonicalize();
      mpq_class ell = proximity_ell(xi, CenterPoint::rational(0), p);
      long predicted = predicted_ramification(e, ell.get_num().get_si());
      std::vector<mpq_class> c(static_cast<size_t>(e) + 1);
      c[0] = -xi;
      c[static_cast<size_t>(e)] = 1;
      bool ok = ell == l;
      for (auto& fac : factor_rational_poly(QPoly(c))) {
        if (fac.poly.degree() == 1) {
          ok = ok && predicted == 1;
          continue;
        }
        FieldPtr K = NumberField::create(fac.poly);
        for (auto& P : K->primes_above(mpz_class(p))) ok = ok && P.e == predicted;
      }
      match.add(ok, "e=" + std::to_string(e) + " xi=" + xi.get_str() + " p=" + std::to_string(p));
      ++done;
    }
  }
  Outcome o;
  o.pass = match.ok(2 * kRamificationSamples);
  o.detail = "(xi, p) pairs: " + match.str();
  return o;
}

// ---- 7: empirical Chevalley-Weil ----
Outcome empirical_cw() {
  Tally fibers, tmain;
  std::string details;
  bool rh_ok = true;
  for (auto spec : {fixtures::descent_covering(), fixtures::joukowski_covering()}) {
    CheckedCovering c = validate_covering(spec);
    CoveringAudit audit = covering_audit(c, ChartPolicy::both);
    std::optional<PlaceSet> S;
    if (c.spec.mode == CoveringMode::affine) S = c.spec.S;
    // draw until enough fibers survive the skip rules
    std::vector<mpq_class> sample = sample_points(kFibersPerFixture + 10, kSampleHeight, S, 77);
    std::vector<FiberReport> reports = cw_empirical_check(c, sample);
    int used = 0;
    long double worst = 0, bound = 0;
    for (auto& r : reports) {
      if (r.skipped) continue;
      ++used;
      bound = r.bound;
      for (auto& p : r.cover) worst = std::max(worst, p.partial.upper);
      fibers.add(r.holds(), "xi = " + r.xi.get_str());
      TmainAudit t = tmain_ramification_check(audit, r);
      tmain.add(t.holds() && t.uncovered.empty(), "xi = " + r.xi.get_str());
    }
    if (used < kFibersPerFixture) fibers.add(false, "too few usable fibers");
    RiemannHurwitz rh = riemann_hurwitz_check(c);
    rh_ok = rh_ok && rh.consistent;
    details += "; " + std::string(c.spec.mode == CoveringMode::projective ? "projective" : "affine") + ": " +
               std::to_string(used) + " fibers, max partial " + fmt(worst) + " vs bound " + fmt(bound);
  }
  Outcome o;
  o.pass = fibers.ok(2 * kFibersPerFixture) && tmain.ok(2 * kFibersPerFixture);
  o.detail = "fibers " + fibers.str() + "; ramification audits " + tmain.str() + details +
             (rh_ok ? "; Riemann-Hurwitz consistent" : "; Riemann-Hurwitz heuristic disagrees");
  return o;
}

// ---- 8: discriminants ----
Outcome discriminants() {
  Tally named, random;
  std::vector<std::pair<QPoly, long>> fields{{zp({-2, 0, 1}), 8},
                                             {zp({-1, -1, 1}), 5},
                                             {zp({-1, -1, 0, 1}), -23},
                                             {zp({1, 0, -10, 0, 1}), 2304},
                                             {zp({-3, 0, 1}), 12}};
  for (auto& [g, d] : fields) named.add(NumberField::create(g)->discriminant() == d, to_string(g));

  std::mt19937_64 rng(8128);
  std::uniform_int_distribution<int> dd(2, 4), cc(-3, 3);
  int built = 0;
  while (built < kRandomFields) {
    FieldPtr K = NumberField::create(random_irreducible(rng, dd(rng)));
    std::vector<mpq_class> c(static_cast<size_t>(K->degree()));
    for (auto& x : c) x = cc(rng);
    NFElem a(K, QPoly(c));
    if (a.is_rational()) continue;
    QPoly F = a.minpoly();
    FieldPtr Ka = NumberField::create(F);
    QPoly G = random_irreducible(rng, 1 + built % 3);
    if (G == F) continue;
    int nu = Ka->degree();
    HeightValue part = normalized_log_discriminant(*Ka);
    HeightValue ha = affine_height(a);
    std::string tag = to_string(F);
    random.add(part.upper <= silverman_rhs(nu, ha.lower), "Silverman " + tag);
    PlaceSet ram;
    for (auto& p : Ka->ramified_primes()) ram.insert(p);
    random.add(part.upper <= dedekind_hensel_rhs(nu, ram.height().lower), "Dedekind-Hensel " + tag);
    random.add(ram.height().upper <= ramified_height_rhs(nu, part.upper) + 1e-15L, "converse " + tag);
    FieldPtr KG = NumberField::create(G);
    HeightValue sum = part.scaled(nu) + (G.degree() == 1 ? HeightValue{0, 0}
                                                         : normalized_log_discriminant(*KG).scaled(G.degree()));
    random.add(sum.upper <= root_discriminant_sum_rhs((F * G).degree(), projective_height(F * G).lower),
               "root sum " + tag);
    ++built;
  }
  Outcome o;
  o.pass = named.ok(5) && random.ok(4 * kRandomFields);
  o.detail = "named fields " + named.str() + "; " + std::to_string(built) + " random fields, inequalities " +
             random.str();
  return o;
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  int failures = 0;
  auto report = [&](int index, const std::string& name, double limit, const std::function<Outcome()>& body) {
    auto t0 = clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(clock::now() - t0).count();
    bool in_time = limit <= 0 || secs < limit;
    bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::printf("%s [%d] %s: %s (%.2f s%s)\n", pass ? "PASS" : "FAIL", index, name.c_str(), o.detail.c_str(), secs,
                in_time ? "" : ", over the time limit");
    std::fflush(stdout);
  };
  std::vector<FixtureAnalysis> fx;
  report(1, "prime-sum inequalities to 10^6", kPrimeSumSeconds, prime_sums);
  report(2, "height inequality property suite", kHeightSuiteSeconds, height_suite);
  report(3, "Puiseux expansions on the fixtures", kPuiseuxSeconds, [&] {
    fx = analyze_fixtures();
    return puiseux_fixtures(fx);
  });
  report(4, "Eisenstein aggregate bounds", 0, [&] { return eisenstein_fixtures(fx); });
  report(5, "bad-place audits on both coverings", 0, bad_places);
  report(6, "ramification prediction for pure root covers", 0, ramification_prediction);
  report(7, "empirical Chevalley-Weil on both coverings", kEmpiricalSeconds, empirical_cw);
  report(8, "discriminant machinery", 0, discriminants);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
