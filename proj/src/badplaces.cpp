#include "cheval/badplaces.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "cheval/integer.hpp"

namespace cheval {

namespace {

PlaceSet numerator_primes(const mpq_class& x) {
  PlaceSet s;
  if (x == 0) throw std::logic_error("numerator places of zero");
  mpz_class num = abs(x.get_num());
  if (num > 1)
    for (auto& p : prime_divisors(num)) s.insert(p);
  return s;
}

// Set estimates can hold with equality (h(T2) = h_p(f) when one coefficient carries all denominators).
constexpr long double kSetSlack = 1e-12L;

BoundCheck set_check(int index, const PlaceSet& S, int m, int n, long double hp) {
  return {"T" + std::to_string(index) + " height", tset_provenance(index), S.height(), tset_rhs(index, m, n, hp),
          kSetSlack};
}

}  // namespace

ResultantSets tsets_resultant(const PlaneCurveModel& M) {
  ResultantSets r;
  for (long p : primes_up_to(M.n())) r.T1.insert(mpz_class(p));
  r.T2 = denominator_numerator_places(coefficient_vector(M.f())).den;
  r.T3 = numerator_primes(M.r0());
  r.T4 = numerator_primes(M.Delta());
  long double h = M.hp().lower;
  int i = 1;
  for (auto* S : {&r.T1, &r.T2, &r.T3, &r.T4}) r.checks.push_back(set_check(i++, *S, M.m(), M.n(), h));
  return r;
}

std::vector<CenterAnalysis> analyze_centers(const PlaneCurveModel& M) {
  std::vector<CenterAnalysis> out;
  for (auto& c : M.centers()) out.push_back(analyze_center(M, c));
  return out;
}

PuiseuxSets tsets_puiseux(const PlaneCurveModel& M, const std::vector<CenterAnalysis>& centers) {
  PuiseuxSets r;
  for (auto& A : centers) {
    for (auto& pc : A.eisenstein.places)
      if (!pc.archimedean && (pc.log_A > 0 || pc.log_B > 0)) r.T5.insert(pc.p);
    for (auto& p : A.point.K->ramified_primes()) r.T6.insert(p);
    for (size_t i = 0; i < A.branches.size(); ++i) {
      const PuiseuxBranch& b = A.branches[i];
      r.T5_witnessed.insert_all(denominator_places(b.a));
      for (auto& p : b.field->ramified_primes()) r.T6.insert(p);
      for (auto& ec : A.essential[i].items) r.T7.insert_all(denominator_numerator_places(std::vector<NFElem>{ec.a}).num);
    }
  }
  long double h = M.hp().lower;
  r.checks.push_back(set_check(5, r.T5, M.m(), M.n(), h));
  r.checks.push_back(set_check(6, r.T6, M.m(), M.n(), h));
  r.checks.push_back(set_check(7, r.T7, M.m(), M.n(), h));
  return r;
}

bool BadPlaceTable::all_hold() const {
  for (auto& c : checks)
    if (!c.holds()) return false;
  for (auto& A : centers)
    if (!A.all_hold()) return false;
  return T5_witnessed.subset_of(T[5]);
}

BadPlaceTable bad_place_table(const PlaneCurveModel& M) {
  BadPlaceTable t;
  ResultantSets rs = tsets_resultant(M);
  t.centers = analyze_centers(M);
  PuiseuxSets ps = tsets_puiseux(M, t.centers);
  t.T = {PlaceSet(), rs.T1, rs.T2, rs.T3, rs.T4, ps.T5, ps.T6, ps.T7};
  t.exact = {true, true, true, true, true, !ps.T5_superset, true, true};
  t.T5_witnessed = ps.T5_witnessed;
  for (int i = 1; i <= 7; ++i) t.all.insert_all(t.T[i]);
  t.checks = rs.checks;
  t.checks.insert(t.checks.end(), ps.checks.begin(), ps.checks.end());
  t.checks.push_back({"T height", "union of the seven bad-place sets", t.all.height(),
                      bad_place_total_rhs(M.m(), M.n(), M.hp().lower), kSetSlack});
  return t;
}

TowerSet u_set(const PlaneCurveModel& f, const PlaneCurveModel& ft) {
  TowerSet t;
  const QPoly& f0 = f.f0();
  const QPoly& Rt = ft.R();
  QPoly R2 = Rt;
  for (;;) {
    QPoly g = gcd(R2, f0);
    if (g.degree() <= 0) break;
    R2 = R2 / g;
  }
  R2 = R2.monic();
  t.R2 = R2;
  t.R1 = Rt / R2;
  t.Theta = resultant_field(f0, R2);
  if (t.Theta == 0) throw std::logic_error("resultant of f_0 and R~2 vanishes");
  t.U = numerator_primes(t.Theta);
  long double rhs = upsilon(f.m(), ft.m(), ft.n(), f.hp().lower, ft.hp().lower) + xi(f.m(), ft.m(), ft.n());
  t.check = {"U height", "places dividing the resultant of f_0 and the f_0-coprime part of the cover's resultant",
             t.U.height(), rhs, kSetSlack};
  return t;
}

bool CoveringBadPlaces::all_hold() const {
  return base.all_hold() && cover.all_hold() && tower.check.holds() && union_check.holds();
}

CoveringBadPlaces covering_bad_places(const PlaneCurveModel& f, const PlaneCurveModel& ft) {
  CoveringBadPlaces c;
  c.base = bad_place_table(f);
  c.cover = bad_place_table(ft);
  c.tower = u_set(f, ft);
  c.q = main_quantities({f.m(), f.n(), ft.m(), ft.n(), f.hp().lower, ft.hp().lower, 0});
  c.all = c.base.all.united(c.cover.all).united(c.tower.U);
  c.union_check = {"T, T~ and U height", "bad places of both models and of the tower", c.all.height(),
                   c.q.Omega + c.q.Omega_tilde + c.q.Upsilon, kSetSlack};
  return c;
}

mpq_class proximity_ell(const mpq_class& xi, const CenterPoint& alpha, const mpz_class& p) {
  NFElem d = NFElem(xi) - alpha.alpha;
  if (d.is_zero()) throw std::invalid_argument("sample point equals the center");
  if (d.is_rational()) {
    int v = valuation(d.rational_value(), p);
    if (v <= 0) throw std::invalid_argument("not close");
    return mpq_class(v);
  }
  bool found = false;
  mpq_class ell;
  for (auto& P : alpha.K->primes_above(p)) {
    int v = valuation(d, P);
    if (v <= 0) continue;
    mpq_class l(v, P.e);
    l.canonicalize();
    if (found && l != ell) throw std::invalid_argument("proximity depends on the extension");
    ell = l;
    found = true;
  }
  if (!found) throw std::invalid_argument("not close");
  return ell;
}

long predicted_ramification(long e, long ell) {
  if (e <= 0 || ell <= 0) throw std::invalid_argument("ramification and proximity must be positive");
  return e / std::gcd(e, ell);
}

}  // namespace cheval
