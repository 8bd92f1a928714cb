#include "cheval/cw_bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace cheval {

namespace {

long double L(long double x) { return std::log(x); }
long double log_m(int m) { return std::log(static_cast<long double>(std::max(m, 1))); }

void require_degree(int n) {
  if (n < 2) throw std::invalid_argument("bound formula requires n >= 2");
}

// log(e^a + e^b)
long double log_add(long double a, long double b) {
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

long double log_of(const mpz_class& z) {
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
  return std::log(static_cast<long double>(std::fabs(mant))) + exp2 * std::log(2.0L);
}

}  // namespace

long double omega(int m, int n, long double hp) {
  require_degree(n);
  return cw_constants::kOmega * m * std::pow(static_cast<long double>(n), 3) * L(n) * (hp + 2.0L * m + 2.0L * n);
}

long double upsilon(int m, int mt, int nt, long double hp_f, long double hp_ft) {
  return 2.0L * nt * (mt * hp_f + m * hp_ft);
}

long double xi(int m, int mt, int nt) {
  long double s = m + 2.0L * mt * nt;
  return 2.0L * m * nt * (2.0L * mt + 3 * L(nt)) + s * L(s);
}

MainQuantities main_quantities(const BoundInputs& in) {
  require_degree(in.n);
  require_degree(in.nt);
  return {omega(in.m, in.n, in.hp_f), omega(in.mt, in.nt, in.hp_ft), upsilon(in.m, in.mt, in.nt, in.hp_f, in.hp_ft),
          xi(in.m, in.mt, in.nt)};
}

long double cw_bound(const BoundInputs& in, CoveringMode mode) {
  MainQuantities q = main_quantities(in);
  long double s = q.Omega + q.Omega_tilde + q.Upsilon;
  return mode == CoveringMode::projective ? 2 * s : s + in.h_S;
}

long double PowerExpression::log_value() const {
  long double main = mpz_class(exponent).get_d() * log_of(base);
  if (additive == 0) return main;
  // additive is tiny next to the power in every use; fold it in exactly when it matters
  if (main > 80) return main + std::log1p(mpz_class(additive).get_d() / std::exp(std::min(main, 11000.0L)));
  return std::log(std::exp(main) + mpz_class(additive).get_d());
}

std::optional<mpz_class> PowerExpression::exact(unsigned long max_bits) const {
  if (!exponent.fits_ulong_p()) return std::nullopt;
  long double bits = mpz_class(exponent).get_d() * log_of(base) / std::log(2.0L);
  if (bits > max_bits) return std::nullopt;
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent.get_ui());
  return mpz_class(r + additive);
}

std::string PowerExpression::to_string() const {
  std::string s = base.get_str() + "^" + exponent.get_str();
  if (additive != 0) s += " + " + additive.get_str();
  return s;
}

MinimalModelBounds minimal_model_bounds(int g, int n, int gt, int nt, long delta, long double h_A, CoveringMode mode,
                                        long double h_S) {
  require_degree(n);
  require_degree(nt);
  MinimalModelBounds r;
  long k = static_cast<long>(gt + 1) * nt;
  r.Lambda = {mpz_class(k), mpz_class(cw_constants::kLambdaExponent * k), mpz_class(2 * (delta - 1))};
  auto model = [](int gg, int nn) {
    return PowerExpression{mpz_class(2L * (gg + 1) * nn * nn),
                           mpz_class(cw_constants::kModelExponentG * gg * nn + cw_constants::kModelExponentN * nn), 0};
  };
  r.Lambda_prime = model(g, n);
  r.Lambda_prime_tilde = model(gt, nt);
  long double lh = std::log(h_A + 1);
  r.log_bound = r.Lambda.log_value() + lh;
  if (mode == CoveringMode::affine && h_S > 0) r.log_bound = log_add(r.log_bound, std::log(h_S));

  // Over the field L generated by A and the model coefficients: deg_X f = g + 1
  // and h_p(f) <= Lambda' (h + 1), likewise for the cover.
  long double lhp = r.Lambda_prime.log_value() + lh, lhpt = r.Lambda_prime_tilde.log_value() + lh;
  int m = g + 1, mt = gt + 1;
  auto log_omega = [](int mm, int nn, long double lhh) {
    long double c = cw_constants::kOmega * mm * std::pow(static_cast<long double>(nn), 3) * std::log((long double)nn);
    return std::log(c) + log_add(lhh, std::log(2.0L * mm + 2.0L * nn));
  };
  long double lOmega = log_omega(m, n, lhp), lOmegat = log_omega(mt, nt, lhpt);
  long double lUps = std::log(2.0L * nt) + log_add(std::log((long double)mt) + lhp, std::log((long double)m) + lhpt);
  long double lsum = log_add(log_add(lOmega, lOmegat), lUps);
  long double lcw = mode == CoveringMode::projective ? std::log(2.0L) + lsum : lsum;
  if (mode == CoveringMode::affine && h_S > 0) lcw = log_add(lcw, std::log(h_S));
  long double lfield = log_add(r.Lambda_prime.log_value(), r.Lambda_prime_tilde.log_value());
  if (delta > 1) lfield = log_add(lfield, std::log(2.0L * (delta - 1)));
  r.log_chain = log_add(lcw, lfield + lh);
  return r;
}

long double silverman_rhs(int nu, long double ha) { return 2.0L * (nu - 1) * ha + L(nu); }

long double root_discriminant_sum_rhs(int N, long double hp_F) { return 2.0L * (N - 1) * hp_F + 3.0L * N * L(N); }

long double dedekind_hensel_rhs(int nu, long double h_ram) {
  return static_cast<long double>(nu - 1) / nu * h_ram + cw_constants::kPrimeCount * nu;
}

long double ramified_height_rhs(int nu, long double partial) { return nu * partial; }

EisensteinAggregateBounds eisenstein_aggregate_bounds(int m, int n, long double h, int u, int mu, int nu, int e) {
  EisensteinAggregateBounds b;
  long double N = n, lm = log_m(m), ln = L(n);
  b.A_sum = (2 * N - 1) * h + cw_constants::kEisensteinA * N * N + 2 * N * lm;
  b.B_sum = h + L(2 * N);
  b.nonintegral = (2 * N - 1) * h + N * (2 * lm + 3 * ln + cw_constants::kNonIntegralA);
  b.sigma_sum = (2 * N - 1) * h + 2 * N * L((m + 1.0L) * (N + 1) * std::sqrt(N));
  b.bad_places = (4 * N - 1) * h + cw_constants::kEisensteinPlaces * N * N + 4 * N * lm;
  b.field = (4 * N * mu + 4 * N * u * nu + 2.0L * nu) * h +
            (mu + static_cast<long double>(u) * nu) * (cw_constants::kFieldQuadratic * N * N + 4 * N * lm) +
            3.0L * nu * L(2 * N);
  b.field_all = (4 * N * N * mu + 4 * N * N * N * u + 2 * N * N) * h +
                (mu * N + u * N * N) * (cw_constants::kFieldQuadratic * N * N + 4 * N * lm) + 3 * N * N * L(2 * N);
  b.essential = std::log2(static_cast<long double>(e)) * (u + static_cast<long double>(mu) / nu) *
                (2 * N * h + cw_constants::kEssentialQuadratic * N * N + 2 * N * lm);
  b.essential_all = (u + mu) * (2 * N * N * h + cw_constants::kEssentialQuadratic * N * N * N + 2 * N * N * lm) *
                    std::log2(N);
  return b;
}

long double tset_rhs(int index, int m, int n, long double hp) {
  long double M = m, N = n, tail = hp + 2 * M + 2 * N;
  switch (index) {
    case 1: return cw_constants::kTheta * N;
    case 2: return hp;
    case 3: return (2 * N - 1) * (hp + M * L(2) + L(2 * N * N));
    case 4: return cw_constants::kDiscriminantSet * M * N * N * (hp + 2 * M + 2 * L(N));
    case 5: return cw_constants::kEisensteinSet * M * N * N * tail;
    case 6: return cw_constants::kRamificationSet * M * N * N * N * tail;
    case 7: return cw_constants::kEssentialSet * M * N * N * N * L(N) * tail;
  }
  throw std::invalid_argument("bad-place set index must be 1..7");
}

long double bad_place_total_rhs(int m, int n, long double hp) {
  return cw_constants::kBadPlaceTotal * m * std::pow(static_cast<long double>(n), 3) * L(n) * (hp + 2.0L * m + 2.0L * n);
}

const char* tset_provenance(int index) {
  switch (index) {
    case 1: return "primes up to n, Chebyshev theta estimate";
    case 2: return "denominator places of f bounded by its height";
    case 3: return "places dividing the leading coefficient of the Y-resultant";
    case 4: return "places dividing the discriminant of the radical of the Y-resultant";
    case 5: return "Eisenstein bad places summed over non-conjugate centers";
    case 6: return "places ramified in the Puiseux coefficient fields, Dedekind-Hensel converse";
    case 7: return "numerator places of the q-essential coefficients";
  }
  return "";
}

}  // namespace cheval
