#include "cheval/verify.hpp"

#include <algorithm>
#include <exception>
#include <random>
#include <set>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cheval/factor.hpp"
#include "cheval/integer.hpp"
#include "cheval/puiseux.hpp"

namespace cheval {

namespace {

QPoly2 constant2(const QPoly& c) { return QPoly2(c); }

bool vanishes_at(const QPoly& p, const mpq_class& x) { return !p.zero() && eval(p, x) == 0; }

// Index of the prime of K below the prime P of L, where K sits in L through
// the image `y` of its generator.
int prime_below(const FieldPtr& K, const NFElem& y, const PrimeIdeal& P) {
  const auto& ideals = K->primes_above(P.p);
  if (ideals.size() == 1) return 0;
  const MaximalOrder& O = K->maximal_order();
  for (int idx = 0; idx < static_cast<int>(ideals.size()); ++idx) {
    bool contained = true;
    for (auto& row : ideals[static_cast<size_t>(idx)].hnf) {
      QVector pc = O.to_power_coords(QVector(row.begin(), row.end()));
      NFElem x = NFElem(K, QPoly(std::vector<mpq_class>(pc.begin(), pc.end()))).mapped(y);
      if (!x.is_zero() && valuation(x, P) <= 0) {
        contained = false;
        break;
      }
    }
    if (contained) return idx;
  }
  throw std::logic_error("no prime of K(P) below a prime of K(P~)");
}

std::vector<mpz_class> relatively_ramified(const FieldPtr& K, const FieldPtr& L, const NFElem& y) {
  std::vector<mpz_class> out;
  if (L->degree() == K->degree()) return out;
  for (auto& p : L->ramified_primes()) {
    bool ramified = false;
    for (auto& P : L->primes_above(p)) {
      int eK = K->degree() == 1 ? 1 : K->primes_above(p)[static_cast<size_t>(prime_below(K, y, P))].e;
      if (P.e % eK != 0) throw std::logic_error("ramification indices do not divide");
      if (P.e / eK > 1) ramified = true;
    }
    if (ramified) out.push_back(p);
  }
  return out;
}

}  // namespace

CheckedCovering validate_covering(const CoveringSpec& spec) {
  if (spec.Phi.zero()) throw std::invalid_argument("y-expression numerator is zero");
  if (spec.D.zero()) throw std::invalid_argument("y-expression denominator is zero");
  CheckedCovering c{spec, PlaneCurveModel::normalize_f0_monic(spec.f), PlaneCurveModel::normalize_f0_monic(spec.ft),
                    0};
  int n = c.base.n(), nt = c.cover.n();
  if (nt % n != 0) throw std::invalid_argument("covering degree mismatch: deg_Y f does not divide deg_Y f~");
  c.nu = nt / n;
  // D^n f(X, Phi / D) = sum_j c_j(X) Phi^j D^(n - j)
  QPoly2 G;
  QPoly2 Dpow = constant2(QPoly(1)), Phipow = constant2(QPoly(1));
  std::vector<QPoly2> phi_powers{Phipow};
  for (int j = 1; j <= n; ++j) phi_powers.push_back(phi_powers.back() * spec.Phi);
  for (int j = n; j >= 0; --j) {
    G += constant2(spec.f.coeff(j)) * phi_powers[static_cast<size_t>(j)] * Dpow;
    Dpow = Dpow * constant2(spec.D);
  }
  if (!pseudo_remainder(G, spec.ft).zero()) throw std::invalid_argument("y-expression does not define a covering map");
  if (spec.mode == CoveringMode::affine) c.spec.S.insert_infinite();
  return c;
}

std::vector<FiberPoint> fiber_points(const QPoly2& f, const mpq_class& xi) {
  QPoly F = eval_x(f, xi);
  if (F.degree() < 1) throw std::invalid_argument("fiber at infinity; transform model");
  std::vector<FiberPoint> out;
  for (auto& fac : factor_rational_poly(F)) {
    QPoly g = fac.poly.monic();
    for (int k = 0; k < fac.multiplicity; ++k) {
      if (g.degree() == 1)
        out.push_back({g, NumberField::rationals(), NFElem(mpq_class(-g[0]))});
      else {
        FieldPtr K = NumberField::create(g, true);
        out.push_back({g, K, NFElem::generator(K)});
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const FiberPoint& a, const FiberPoint& b) {
    if (a.factor.degree() != b.factor.degree()) return a.factor.degree() < b.factor.degree();
    return to_string(a.factor) < to_string(b.factor);
  });
  return out;
}

bool CoverPointReport::consistent(long double tol) const {
  return partial.lower >= -tol && tower_divisible && std::fabs(partial.mid() - partial_from_norm) <= tol &&
         supports_agree;
}

bool FiberReport::holds(long double tol) const {
  if (skipped) return true;
  if (!matching_complete) return false;
  for (auto& c : cover)
    if (!c.consistent(tol) || !c.within_bound) return false;
  return true;
}

QPoly2 reciprocal_model(const QPoly2& f) {
  int m = deg_x(f);
  std::vector<QPoly> c;
  for (int j = 0; j <= f.degree(); ++j) c.push_back(f.coeff(j).zero() ? QPoly() : reverse(f.coeff(j), m));
  return QPoly2(c);
}

PlaneCurveModel model_at_infinity(const PlaneCurveModel& M) {
  return PlaneCurveModel::normalize_f0_monic(reciprocal_model(M.f()));
}

CheckedCovering covering_at_infinity(const CheckedCovering& c) {
  CoveringSpec s = c.spec;
  s.f = reciprocal_model(c.spec.f);
  s.ft = reciprocal_model(c.spec.ft);
  int k = std::max(deg_x(c.spec.Phi), c.spec.D.degree());
  std::vector<QPoly> phi;
  for (int j = 0; j <= c.spec.Phi.degree(); ++j)
    phi.push_back(c.spec.Phi.coeff(j).zero() ? QPoly() : reverse(c.spec.Phi.coeff(j), k));
  s.Phi = QPoly2(phi);
  s.D = reverse(c.spec.D, k);
  return validate_covering(s);
}

FiberReport fiber_report(const CheckedCovering& c, const mpq_class& xi) {
  FiberReport r;
  r.xi = xi;
  const CoveringSpec& s = c.spec;
  long double hS = s.mode == CoveringMode::affine ? s.S.height().lower : 0;
  r.bound = cw_bound({c.base.m(), c.base.n(), c.cover.m(), c.cover.n(), c.base.hp().lower, c.cover.hp().lower, hS},
                     s.mode);
  auto skip = [&](const std::string& why) {
    r.skipped = true;
    r.skip_reason = why;
    return r;
  };
  if (s.mode == CoveringMode::affine && xi.get_den() != 1)
    for (auto& q : prime_divisors(xi.get_den()))
      if (!s.S.contains(q)) return skip("xi is not S-integral");
  if (vanishes_at(s.D, xi)) return skip("pole of the y-expression");
  if (vanishes_at(c.base.f0(), xi) || vanishes_at(c.base.R(), xi)) return skip("branch or singular fiber of f");
  if (vanishes_at(c.cover.f0(), xi) || vanishes_at(c.cover.R(), xi)) return skip("branch or singular fiber of f~");

  r.base = fiber_points(c.base.f(), xi);
  std::vector<FiberPoint> cover = fiber_points(c.cover.f(), xi);
  QPoly Phi_xi = eval_x(s.Phi, xi);
  mpq_class D_xi = eval(s.D, xi);
  r.matching_complete = true;
  std::vector<int> degree_over(r.base.size(), 0);

  for (auto& pt : cover) {
    CoverPointReport cr;
    cr.point = pt;
    cr.y_in_cover = Phi_xi.eval_as<NFElem>(pt.y) / NFElem(D_xi);
    int hits = 0;
    for (size_t i = 0; i < r.base.size(); ++i)
      if (r.base[i].factor.eval_as<NFElem>(cr.y_in_cover).is_zero()) {
        ++hits;
        cr.base_index = static_cast<int>(i);
      }
    if (hits != 1) {
      r.matching_complete = false;
      r.cover.push_back(cr);
      continue;
    }
    const FieldPtr& K = r.base[static_cast<size_t>(cr.base_index)].field;
    const FieldPtr& L = pt.field;
    degree_over[static_cast<size_t>(cr.base_index)] += L->degree();
    cr.relative_degree = L->degree() / K->degree();
    cr.disc_cover = L->degree() == 1 ? mpz_class(1) : L->discriminant();
    cr.disc_base = K->degree() == 1 ? mpz_class(1) : K->discriminant();
    cr.partial_cover = L->degree() == 1 ? HeightValue::exact(0) : normalized_log_discriminant(*L);
    cr.partial_base = K->degree() == 1 ? HeightValue::exact(0) : normalized_log_discriminant(*K);
    if (K->degree() == 1)
      cr.partial = cr.partial_cover;
    else
      cr.partial = normalized_log_discriminant(*L, *K, cr.y_in_cover);

    mpz_class dK = ipow(abs(cr.disc_base), static_cast<unsigned long>(cr.relative_degree)), dL = abs(cr.disc_cover);
    cr.tower_divisible = mpz_divisible_p(dL.get_mpz_t(), dK.get_mpz_t()) != 0;
    if (cr.tower_divisible) {
      cr.relative_norm = dL / dK;
      cr.partial_from_norm = cr.relative_norm == 1 ? 0 : log_abs(cr.relative_norm) / L->degree();
    }
    if (L->degree() > 1) {
      cr.ramified_over_Q = L->ramified_primes();
      cr.relative_ramified = relatively_ramified(K, L, cr.y_in_cover);
    }
    std::vector<mpz_class> support;
    if (cr.tower_divisible && cr.relative_norm > 1) support = prime_divisors(cr.relative_norm);
    cr.supports_agree = support == cr.relative_ramified;
    cr.within_bound = cr.partial.upper <= r.bound;
    r.cover.push_back(std::move(cr));
  }
  // every point of the base has nu points of the cover above it, counted with degree
  for (size_t i = 0; i < r.base.size(); ++i)
    if (degree_over[i] != c.nu * r.base[i].factor.degree()) r.matching_complete = false;
  return r;
}

std::vector<FiberReport> cw_empirical_check_serial(const CheckedCovering& c, const std::vector<mpq_class>& sample) {
  std::vector<FiberReport> out;
  out.reserve(sample.size());
  for (auto& xi : sample) out.push_back(fiber_report(c, xi));
  return out;
}

std::vector<FiberReport> cw_empirical_check(const CheckedCovering& c, const std::vector<mpq_class>& sample,
                                            int threads) {
  std::vector<FiberReport> out(sample.size());
  std::vector<std::exception_ptr> errors(sample.size());
  long count = static_cast<long>(sample.size());
#ifdef _OPENMP
  int nt = threads > 0 ? threads : omp_get_max_threads();
#else
  int nt = 1;
  (void)threads;
#endif
#pragma omp parallel for schedule(dynamic) num_threads(nt)
  for (long i = 0; i < count; ++i) {
    try {
      out[static_cast<size_t>(i)] = fiber_report(c, sample[static_cast<size_t>(i)]);
    } catch (...) {
      errors[static_cast<size_t>(i)] = std::current_exception();
    }
  }
  (void)nt;
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

CoveringAudit covering_audit(const CheckedCovering& c, ChartPolicy charts) {
  CoveringAudit a{c, covering_bad_places(c.base, c.cover), std::nullopt, std::nullopt};
  if (c.spec.mode == CoveringMode::projective && charts == ChartPolicy::both) {
    a.infinite = covering_at_infinity(c);
    a.infinite_places = covering_bad_places(a.infinite->base, a.infinite->cover);
  }
  return a;
}

TmainAudit tmain_ramification_check(const CoveringAudit& audit, const FiberReport& fiber) {
  TmainAudit t;
  t.xi = fiber.xi;
  std::set<mpz_class> primes;
  for (auto& c : fiber.cover) primes.insert(c.relative_ramified.begin(), c.relative_ramified.end());
  for (auto& p : primes) {
    TmainEntry e;
    e.p = p;
    e.xi_integral = fiber.xi == 0 || valuation(fiber.xi, p) >= 0;
    if (e.xi_integral) {
      e.chart = "finite";
      e.covered = true;
      e.in_bad_set = audit.finite_places.all.contains(p);
    } else if (audit.infinite_places) {
      e.chart = "infinite";
      e.covered = true;
      e.in_bad_set = audit.infinite_places->all.contains(p);
    }
    if (!e.covered)
      t.uncovered.push_back(p);
    else if (!e.in_bad_set)
      t.violations.push_back(p);
    t.entries.push_back(e);
  }
  return t;
}

namespace {

// sum over the places above the conjugates of one center of (e - 1)
int center_ramification(const PlaneCurveModel& M, const QPoly& minpoly) {
  CenterPoint c = CenterPoint::algebraic(minpoly);
  int places = 0;
  for (auto& b : puiseux_expand(M, c)) places += b.cycles;
  return minpoly.degree() * (M.n() - places);
}

}  // namespace

GenusData branch_genus(const PlaneCurveModel& M) {
  GenusData g;
  g.n = M.n();
  for (auto& c : M.centers()) g.ramification += center_ramification(M, c.minpoly);
  PlaneCurveModel inf = model_at_infinity(M);
  for (auto& c : inf.centers())
    if (c.minpoly == QPoly::x()) g.ramification += center_ramification(inf, c.minpoly);
  g.euler = -2 * g.n + g.ramification;
  return g;
}

RiemannHurwitz riemann_hurwitz_check(const CheckedCovering& c) {
  RiemannHurwitz r;
  r.base = branch_genus(c.base);
  r.cover = branch_genus(c.cover);
  r.nu = c.nu;
  long lhs = r.cover.euler, rhs = static_cast<long>(c.nu) * r.base.euler;
  bool even = r.base.euler % 2 == 0 && r.cover.euler % 2 == 0;
  if (c.spec.mode == CoveringMode::projective) {
    r.consistent = even && lhs == rhs;
    r.note = r.consistent ? "2g~ - 2 = nu (2g - 2), as for an unramified covering"
                          : "Euler characteristics do not match an unramified covering";
  } else {
    r.consistent = even && lhs >= rhs;
    r.note = r.consistent ? "2g~ - 2 >= nu (2g - 2); ramification is not localized by this check"
                          : "cover genus too small for a covering of this degree";
  }
  return r;
}

std::vector<mpq_class> sample_points(int count, long max_height, const std::optional<PlaceSet>& S, unsigned seed) {
  if (count < 0 || max_height < 1) throw std::invalid_argument("sample count and height must be positive");
  std::mt19937 rng(seed);
  std::uniform_int_distribution<long> num(-max_height, max_height), den(1, max_height);
  bool integral = S && S->primes().empty();
  std::vector<mpq_class> out;
  std::set<mpq_class> seen;
  long attempts = 0, limit = 200L * count + 1000;
  while (static_cast<int>(out.size()) < count && attempts++ < limit) {
    long b = integral ? 1 : den(rng);
    if (S && b > 1) {
      bool ok = true;
      for (auto& q : prime_divisors(mpz_class(b))) ok = ok && S->contains(q);
      if (!ok) continue;
    }
    mpq_class x(num(rng), b);
    x.canonicalize();
    if (seen.insert(x).second) out.push_back(x);
  }
  return out;
}

}  // namespace cheval
