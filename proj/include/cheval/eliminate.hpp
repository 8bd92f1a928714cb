#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "cheval/heights.hpp"
#include "cheval/number_field.hpp"
#include "cheval/poly.hpp"

namespace cheval {

// R_f(X) = Res_Y(f, f'_Y), Sylvester determinant with Bareiss elimination.
QPoly resultant_y(const QPoly2& f);
// Same roots as F, leading coefficient of F kept.
QPoly radical(const QPoly& F);
// f(X + alpha, Y) with coefficients in Q(alpha).
NFPoly2 translate(const QPoly2& f, const NFElem& alpha);
NFPoly2 to_nfpoly2(const QPoly2& f);
int total_degree(const QPoly2& f);

enum class IrreducibilityStatus {
  certified,        // Q-irreducible fiber plus coprime fiber factor degrees
  rational_only,    // Q-irreducible, geometric irreducibility assumed (warning)
  assumed,          // no certificate at all (warning)
};

struct IrreducibilityReport {
  IrreducibilityStatus status = IrreducibilityStatus::assumed;
  mpq_class irreducible_fiber;     // x0 with f(x0, Y) irreducible over Q
  std::vector<mpq_class> fibers;   // fibers whose factor degrees were used
  int degree_gcd = 0;              // gcd of partial degrees and fiber factor degrees
  std::string message;
};

// Throws std::invalid_argument when f has a nonconstant factor in Q[X].
IrreducibilityReport absolute_irreducibility(const QPoly2& f, int trials = 32);

// A Q-conjugacy class of roots alpha of R.
struct Center {
  QPoly minpoly;   // monic irreducible over Q
  int mu = 0;      // ord_alpha R
  int u = 0;       // ord_alpha f_0
};

class PlaneCurveModel {
 public:
  // Divides f by the leading coefficient of f_0.  Requires deg_Y f >= 1.
  static PlaneCurveModel normalize_f0_monic(const QPoly2& f, bool check_irreducibility = true);

  const QPoly2& f() const { return f_; }
  const QPoly2& original() const { return original_; }
  const mpq_class& normalization() const { return normalization_; }  // f = original / normalization
  int m() const { return m_; }
  int n() const { return n_; }
  const QPoly& f0() const { return f_.lead(); }
  const HeightValue& hp() const { return hp_; }
  const HeightValue& ha() const { return ha_; }
  const QPoly& R() const { return R_; }
  const mpq_class& r0() const { return r0_; }
  const QPoly& R_radical() const { return Rhat_; }
  const mpq_class& Delta() const { return Delta_; }
  const std::vector<Center>& centers() const { return centers_; }
  const IrreducibilityReport& irreducibility() const { return irr_; }

 private:
  QPoly2 f_, original_;
  mpq_class normalization_;
  int m_ = 0, n_ = 0;
  HeightValue hp_, ha_;
  QPoly R_, Rhat_;
  mpq_class r0_, Delta_;
  std::vector<Center> centers_;
  IrreducibilityReport irr_;
};

// One audited inequality lhs <= rhs.
struct BoundCheck {
  std::string name;
  std::string provenance;
  HeightValue lhs;
  long double rhs = 0;
  long double slack = 0;  // absolute rounding allowance for floating-point sums
  bool holds() const { return lhs.upper <= rhs + slack; }
};

// Right-hand sides of the resultant bounds.
long double resultant_affine_rhs(int m, int n, long double ha_f);
long double resultant_projective_rhs(int m, int n, long double hp_f);
long double univariate_resultant_rhs(int deg, long double ha_f);

BoundCheck check_resultant_affine(const QPoly2& f);
BoundCheck check_resultant_projective(const QPoly2& f);
BoundCheck check_univariate_resultant(const QPoly& F);
// sum of h_a over the roots of F (with multiplicity) <= h_p(F) + log(deg F + 1)
BoundCheck check_mahler(const QPoly& F);
// h_p(prod f_i) >= sum h_p(f_i) - sum deg f_i, audited as sum h_p(f_i) - sum deg f_i - h_p(prod) <= 0
BoundCheck check_gelfond(const std::vector<QPoly2>& factors);
// h_a(prod f_i) <= sum h_a(f_i) + log(r+1) sum_{i<s} deg f_i with r = 2 variables
BoundCheck check_product_affine(const std::vector<QPoly2>& factors);
// f | g: h_p(f) <= h_p(g) + deg g and h_a(f) <= h_p(g) + h_a(a) + deg g, a a nonzero coefficient of f
std::vector<BoundCheck> check_divisor(const QPoly& f, const QPoly& g);
// h_a(f(X + alpha, Y)) <= h_a(f) + m h_a(alpha) + 2 m log 2
BoundCheck check_translation(const QPoly2& f, const NFElem& alpha);
// h_a(det) <= s h + s(log s + mu log 2) for an s x s matrix of polynomials
BoundCheck check_determinant(const std::vector<std::vector<QPoly>>& M);

struct HeightBoundSuite {
  std::vector<BoundCheck> checks;
  bool all_hold() const;
};
// Resultant bounds for R_f, Mahler for R_f, divisor bounds for the Q-factors of
// R_f, Gelfond for that factorization.
HeightBoundSuite height_bound_suite(const QPoly2& f);

}  // namespace cheval
