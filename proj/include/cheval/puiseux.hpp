#pragma once

#include <string>
#include <vector>

#include "cheval/eliminate.hpp"
#include "cheval/heights.hpp"
#include "cheval/number_field.hpp"

namespace cheval {

// A finite point alpha of the X-line, given as the generator of K = Q(alpha).
struct CenterPoint {
  FieldPtr K;
  NFElem alpha;
  static CenterPoint rational(const mpq_class& a);
  static CenterPoint algebraic(const QPoly& minpoly);  // alpha = a root of minpoly
  QPoly minpoly() const;                               // monic, over Q
};

// u = ord_alpha f_0 and mu = ord_alpha R_f.
std::pair<int, int> center_orders(const PlaneCurveModel& M, const CenterPoint& c);

// Truncation that certifies essential coefficients and coefficient fields:
// n*mu + 4 >= e*mu/nu + 4 for every branch.
int default_truncation(const PlaneCurveModel& M, const CenterPoint& c);

// One cycle of Puiseux expansions y = sum_{k >= -k0} a_k (x - alpha)^{k/e}.
// The coefficients live in `field`, which contains alpha as `alpha`.  The
// branch stands for `cycles` distinct cycles, conjugate over Q(alpha).
struct PuiseuxBranch {
  FieldPtr base;
  FieldPtr field;
  NFElem alpha;
  int e = 1;
  int k0 = 0;
  int N = 0;
  int u = 0;
  int mu = 0;
  int cycles = 1;
  std::vector<NFElem> a;  // a[k + k0] for k = -k0 .. N
  NFElem coeff(int k) const;
  int relative_degree() const { return field->degree() / base->degree(); }
};

constexpr int kCoefficientFieldCap = 16;

// Newton polygon iteration over successively extended fields.  Throws
// runtime_error("field tower too large") past the absolute degree cap.
std::vector<PuiseuxBranch> puiseux_expand(const PlaneCurveModel& M, const CenterPoint& c, int N = -1,
                                          int degree_cap = kCoefficientFieldCap);

// t-orders of f(alpha + t^e, y_N(t)) and f'_Y(alpha + t^e, y_N(t)) for the
// truncated branch y_N, and the order a correct truncation must reach.
struct ResidualReport {
  int residual_order = 0;
  int derivative_order = 0;
  int required = 0;
  bool ok() const { return residual_order >= required; }
};
ResidualReport residual_check(const PlaneCurveModel& M, const PuiseuxBranch& b);

// Constants of the quantitative Eisenstein theorem at one place of K.
struct PlaceConstants {
  bool archimedean = false;
  mpz_class p;           // 0 for archimedean places
  int index = 0;         // prime index in K->primes_above(p), or embedding index in K->roots()
  int local_degree = 1;  // d_v
  long double log_norm = 0;
  long double log_inv_sigma = 0;
  long double log_A = 0;
  long double log_B = 0;
  bool A_ratio_integral = true;  // d_v log A_v / log N v in Z
  std::string label() const;
};

// Allowance for the floating-point place sums; the B sum meets its bound with equality.
constexpr long double kSumSlack = 1e-12L;

struct EisensteinData {
  CenterPoint center;
  NFPoly2 f;  // f(X + alpha, Y) scaled so that f_0 = X^u (1 + ...)
  int m = 0, n = 0, u = 0, mu = 0;
  HeightValue hp;
  NFPoly R_star;  // R_f(X + alpha) / (A X^mu), constant term 1
  std::vector<PlaceConstants> places;  // every archimedean place and the finite support
  long double sum_log_A = 0, sum_log_B = 0, sum_log_inv_sigma = 0;
  long double nonintegral_height = 0;
  std::vector<BoundCheck> checks;
  const PlaceConstants* finite(const mpz_class& p, int index) const;
  const PlaceConstants* archimedean(int index) const;
  bool all_hold() const;
};
EisensteinData eisenstein_data(const PlaneCurveModel& M, const CenterPoint& c);

struct GrowthReport {
  bool holds = true;
  long double worst_margin = -1e300L;  // max of log|a_k|_w - log(B_v A_v^{u+k/e})
  int worst_k = 0;
  std::string worst_place;
  size_t checked = 0;
};
constexpr long double kGrowthSlack = 1e-12L;
GrowthReport eisenstein_growth_check(const PuiseuxBranch& b, const EisensteinData& data);

struct EssentialCoefficient {
  int q = 0;
  int kappa = 0;
  NFElem a;
  HeightValue height;
  long double kappa_bound = 0;  // e mu / (nu (q - 1)) - 1
  bool within_kappa_bound() const { return kappa <= kappa_bound; }
};
struct EssentialReport {
  std::vector<EssentialCoefficient> items;
  BoundCheck height_sum;
};
// Throws runtime_error("increase truncation") when N < e mu / nu.
EssentialReport essential_coefficients(const PuiseuxBranch& b, const EisensteinData& data);

struct CoefficientFieldReport {
  FieldPtr field;            // Q(alpha, a_k), absolute
  NFElem alpha;              // alpha in field
  int nu = 1;                // [field : Q(alpha)]
  int prefix_length = 0;     // coefficients a_{-k0} .. a_kappa used, kappa <= e mu / nu
  bool generated_by_prefix = false;
  HeightValue discriminant;  // normalized log discriminant relative to Q(alpha)
  BoundCheck bound;
};
CoefficientFieldReport coefficient_field(const PuiseuxBranch& b, const EisensteinData& data);

// Sum over all n series at the center of the relative discriminants.
BoundCheck coefficient_field_aggregate(const std::vector<PuiseuxBranch>& branches,
                                       const std::vector<CoefficientFieldReport>& fields,
                                       const EisensteinData& data);

// Sum over all n series at the center of the q-essential coefficient heights.
BoundCheck essential_aggregate(const std::vector<PuiseuxBranch>& branches, const std::vector<EssentialReport>& reports,
                               const EisensteinData& data);

// Everything computed at one Q-conjugacy class of centers.
struct CenterAnalysis {
  Center center;
  CenterPoint point;
  std::vector<PuiseuxBranch> branches;
  std::vector<ResidualReport> residuals;
  EisensteinData eisenstein;
  std::vector<GrowthReport> growth;
  std::vector<EssentialReport> essential;
  std::vector<CoefficientFieldReport> fields;
  BoundCheck field_aggregate, essential_aggregate;
  int ramification_sum = 0;  // sum of e * cycles, equal to n
  std::vector<BoundCheck> checks() const;  // every audited inequality at this center
  bool all_hold() const;
};
CenterAnalysis analyze_center(const PlaneCurveModel& M, const Center& c, int N = -1);

}  // namespace cheval
