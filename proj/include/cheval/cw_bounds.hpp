#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace cheval {

// Every numeric constant of the bound formulas, in one place.
namespace cw_constants {
// main quantity Omega = 200 m n^3 log n (h + 2m + 2n)
constexpr long double kOmega = 200;
// union of the seven bad-place sets: 150 m n^3 log n (h + 2m + 2n)
constexpr long double kBadPlaceTotal = 150;
// theta(x) = sum_{p <= x} log p <= 1.02 x
constexpr long double kTheta = 1.02L;
// pi(x) <= 1.26 x / log x, also the Dedekind-Hensel error term 1.26 nu
constexpr long double kPrimeCount = 1.26L;
// discriminant set: 16 m n^2 (h + 2m + 2 log n)
constexpr long double kDiscriminantSet = 16;
// Eisenstein set: 16 m n^2 (h + 2m + 2n)
constexpr long double kEisensteinSet = 16;
// ramification set: 40 m n^3 (h + 2m + 2n)
constexpr long double kRamificationSet = 40;
// essential coefficient set: 18 m n^3 log n (h + 2m + 2n)
constexpr long double kEssentialSet = 18;
// Eisenstein A sum: (2n - 1) h + 6 n^2 + 2n log m
constexpr long double kEisensteinA = 6;
// places with A_v > 1 or B_v > 1: (4n - 1) h + 13 n^2 + 4n log m
constexpr long double kEisensteinPlaces = 13;
// non-integral A places: (2n - 1) h + n (2 log m + 3 log n + 5)
constexpr long double kNonIntegralA = 5;
// coefficient field discriminant: (mu + u nu)(12 n^2 + 4n log m)
constexpr long double kFieldQuadratic = 12;
// essential coefficient heights: (2n h + 6 n^2 + 2n log m)
constexpr long double kEssentialQuadratic = 6;
// minimal model exponent ((g + 1) n)^{25 (g + 1) n}
constexpr long kLambdaExponent = 25;
// equation-free model exponent (2 (g + 1) n^2)^{10 g n + 12 n}
constexpr long kModelExponentG = 10;
constexpr long kModelExponentN = 12;
}  // namespace cw_constants

enum class CoveringMode { projective, affine };

struct BoundInputs {
  int m = 1, n = 2;    // degrees of f
  int mt = 1, nt = 2;  // degrees of the covering model f~
  long double hp_f = 0, hp_ft = 0;
  long double h_S = 0;  // affine mode only
};

struct MainQuantities {
  long double Omega = 0, Omega_tilde = 0, Upsilon = 0, Xi = 0;
};

// Throws invalid_argument("bound formula requires n >= 2") for n or n~ below 2.
long double omega(int m, int n, long double hp);
long double upsilon(int m, int mt, int nt, long double hp_f, long double hp_ft);
long double xi(int m, int mt, int nt);
MainQuantities main_quantities(const BoundInputs& in);
// projective: 2 (Omega + Omega~ + Upsilon); affine: Omega + Omega~ + Upsilon + h(S)
long double cw_bound(const BoundInputs& in, CoveringMode mode);

// base^exponent + additive, kept symbolic.
struct PowerExpression {
  mpz_class base, exponent, additive;
  long double log_value() const;
  // Exact integer when it has at most max_bits bits.
  std::optional<mpz_class> exact(unsigned long max_bits = 1u << 16) const;
  std::string to_string() const;
};

struct MinimalModelBounds {
  PowerExpression Lambda;             // ((g~ + 1) n~)^{25 (g~ + 1) n~} + 2 (delta - 1)
  PowerExpression Lambda_prime;       // (2 (g + 1) n^2)^{10 g n + 12 n}
  PowerExpression Lambda_prime_tilde;
  long double log_bound = 0;          // log of Lambda (h(A) + 1) [+ h(S)]
  // The chain through the equation-free models, in logs: the Chevalley-Weil
  // bound over the field of definition plus its discriminant must not
  // exceed Lambda (h(A) + 1).
  long double log_chain = 0;
  bool chain_holds() const { return log_chain <= log_bound; }
};
// g, n: genus and degree of the base curve; gt, nt: the same for the cover.
MinimalModelBounds minimal_model_bounds(int g, int n, int gt, int nt, long delta, long double h_A, CoveringMode mode,
                                        long double h_S = 0);

// Discriminant estimates.
long double silverman_rhs(int nu, long double ha);                   // 2 (nu - 1) h_a + log nu
long double root_discriminant_sum_rhs(int N, long double hp_F);      // 2 (N - 1) h_p(F) + 3 N log N
long double dedekind_hensel_rhs(int nu, long double h_ram);          // (nu - 1)/nu h(ram) + 1.26 nu
long double ramified_height_rhs(int nu, long double partial);        // nu * partial

// Right-hand sides of the Eisenstein-side estimates for one center.
struct EisensteinAggregateBounds {
  long double A_sum = 0;             // (2n - 1) h + 6 n^2 + 2n log m
  long double B_sum = 0;             // h + log 2n
  long double nonintegral = 0;       // (2n - 1) h + n (2 log m + 3 log n + 5)
  long double sigma_sum = 0;         // (2n - 1) h + 2n log((m + 1)(n + 1) sqrt n)
  long double bad_places = 0;        // (4n - 1) h + 13 n^2 + 4n log m
  long double field = 0;             // coefficient field of one series, degree nu
  long double field_all = 0;         // summed over all n series
  long double essential = 0;         // q-essential heights of one series, ramification e
  long double essential_all = 0;     // summed over all n series
};
EisensteinAggregateBounds eisenstein_aggregate_bounds(int m, int n, long double h, int u, int mu, int nu, int e);

// Bad-place set estimates, indexed 1..7, and their union.
long double tset_rhs(int index, int m, int n, long double hp);
long double bad_place_total_rhs(int m, int n, long double hp);
const char* tset_provenance(int index);

}  // namespace cheval
