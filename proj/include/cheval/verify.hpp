#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "cheval/badplaces.hpp"
#include "cheval/cw_bounds.hpp"
#include "cheval/eliminate.hpp"
#include "cheval/heights.hpp"
#include "cheval/number_field.hpp"

namespace cheval {

// A covering C~ -> C of plane models, both with x as the X-coordinate, and
// y = Phi(X, Y~) / D(X) on C~.
struct CoveringSpec {
  QPoly2 f, ft;            // raw models
  QPoly2 Phi;              // numerator, polynomial in Y~ over Q[X]
  QPoly D = QPoly(1);      // denominator in Q[X]
  CoveringMode mode = CoveringMode::projective;
  PlaceSet S;              // affine mode: the places where x may have poles; always holds infinity
  bool ramification_asserted = true;  // the unramifiedness hypothesis, taken on trust
};

// The covering after the congruence and degree checks, with both models normalized.
struct CheckedCovering {
  CoveringSpec spec;
  PlaneCurveModel base, cover;
  int nu = 0;
};

// Throws invalid_argument("y-expression does not define a covering map")
// unless f(X, Phi/D) vanishes modulo f~ over Q(X), and on degree mismatch.
CheckedCovering validate_covering(const CoveringSpec& spec);

// One point of a fiber over a rational xi, as a Q-conjugacy class.
struct FiberPoint {
  QPoly factor;   // monic irreducible factor of f(xi, Y)
  FieldPtr field; // Q(y); Q for a linear factor
  NFElem y;       // generator of `field`, or the rational root
};

// Throws invalid_argument("fiber at infinity; transform model") when f(xi, Y) is constant.
std::vector<FiberPoint> fiber_points(const QPoly2& f, const mpq_class& xi);

// Tolerance on the agreement between the two discriminant routes.
constexpr long double kPartialTolerance = 1e-9L;

// One P~ above P with the relative discriminant measured two ways.
struct CoverPointReport {
  FiberPoint point;          // P~ on the cover
  int base_index = -1;       // index of P among the base fiber points
  NFElem y_in_cover;         // y(P) written in K(P~)
  int relative_degree = 0;   // [K(P~):K(P)]
  mpz_class disc_cover, disc_base;
  HeightValue partial_cover, partial_base;  // normalized log discriminants over Q
  HeightValue partial;                      // their difference
  // |d_{K(P~)}| / |d_{K(P)}|^{[K(P~):K(P)]}, the norm of the relative discriminant
  mpz_class relative_norm;
  bool tower_divisible = false;
  long double partial_from_norm = 0;  // log(relative_norm) / [K(P~):Q]
  // primes p with some prime of K(P~) above p ramified over K(P), from prime decompositions
  std::vector<mpz_class> relative_ramified;
  bool supports_agree = false;  // relative_ramified = prime support of relative_norm
  std::vector<mpz_class> ramified_over_Q;
  bool within_bound = false;
  bool consistent(long double tol = kPartialTolerance) const;  // nonnegative, both routes agree
};

struct FiberReport {
  mpq_class xi;
  bool skipped = false;
  std::string skip_reason;
  std::vector<FiberPoint> base;
  std::vector<CoverPointReport> cover;
  long double bound = 0;
  bool matching_complete = false;  // each root of f~(xi, .) lands in exactly one factor of f(xi, .)
  bool holds(long double tol = kPartialTolerance) const;
};

// x -> 1/x: X^m f(1/X, Y), normalized.
PlaneCurveModel model_at_infinity(const PlaneCurveModel& M);
QPoly2 reciprocal_model(const QPoly2& f);
// The same covering in the chart x -> 1/x.
CheckedCovering covering_at_infinity(const CheckedCovering& c);

FiberReport fiber_report(const CheckedCovering& c, const mpq_class& xi);
std::vector<FiberReport> cw_empirical_check_serial(const CheckedCovering& c, const std::vector<mpq_class>& sample);
// Fibers in parallel, merged by sample order; threads = 0 uses the OpenMP default.
std::vector<FiberReport> cw_empirical_check(const CheckedCovering& c, const std::vector<mpq_class>& sample,
                                            int threads = 0);

enum class ChartPolicy { both, finite };

// Bad places of the covering in each chart; the infinite chart is present
// for projective coverings under ChartPolicy::both.
struct CoveringAudit {
  CheckedCovering finite;
  CoveringBadPlaces finite_places;
  std::optional<CheckedCovering> infinite;
  std::optional<CoveringBadPlaces> infinite_places;
};
CoveringAudit covering_audit(const CheckedCovering& c, ChartPolicy charts);

struct TmainEntry {
  mpz_class p;
  bool xi_integral = true;   // |xi|_p <= 1, finite chart
  bool covered = false;      // the chart applicable at p was computed
  bool in_bad_set = false;
  std::string chart;         // "finite" or "infinite"
};
struct TmainAudit {
  mpq_class xi;
  std::vector<TmainEntry> entries;  // one per prime ramified in some K(P~)/K(P)
  std::vector<mpz_class> violations;
  std::vector<mpz_class> uncovered;  // |xi|_p > 1 without the infinite chart
  bool holds() const { return violations.empty(); }
};
TmainAudit tmain_ramification_check(const CoveringAudit& audit, const FiberReport& fiber);

// Genus from branch data: 2g - 2 = -2n + sum over places of (e - 1), with
// the places over infinity read off the reciprocal model.
struct GenusData {
  int n = 0;
  int ramification = 0;  // sum of (e - 1)
  int euler = 0;         // 2g - 2
  int genus() const { return euler / 2 + 1; }
};
GenusData branch_genus(const PlaneCurveModel& M);

// Riemann-Hurwitz for the covering: equality when unramified, and
// 2g~ - 2 >= nu (2g - 2) when ramification is allowed over the poles of x.
struct RiemannHurwitz {
  GenusData base, cover;
  int nu = 0;
  bool consistent = false;
  std::string note;
};
RiemannHurwitz riemann_hurwitz_check(const CheckedCovering& c);

// Distinct rational xi with |numerator|, denominator <= max_height, in an
// order fixed by the seed.  With S the denominator is supported on S (so 1
// when S has no finite places); without S it is unrestricted.
std::vector<mpq_class> sample_points(int count, long max_height, const std::optional<PlaceSet>& S, unsigned seed = 1);

}  // namespace cheval
