#include "cheval/eliminate.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cheval/complex_roots.hpp"
#include "cheval/factor.hpp"
#include "cheval/integer.hpp"

namespace cheval {

QPoly resultant_y(const QPoly2& f) {
  if (f.degree() < 1) throw std::invalid_argument("f is constant in Y");
  return resultant(f, derivative_y(f));
}

QPoly radical(const QPoly& F) {
  if (F.zero()) throw std::invalid_argument("radical of the zero polynomial");
  if (F.degree() == 0) return F;
  QPoly q = F / gcd(F, F.derivative());
  return q.monic().scaled(F.lead());
}

NFPoly2 to_nfpoly2(const QPoly2& f) {
  std::vector<NFPoly> c;
  for (auto& fj : f.coeffs()) c.push_back(to_nfpoly(fj));
  return NFPoly2(c);
}

NFPoly2 translate(const QPoly2& f, const NFElem& alpha) {
  NFPoly shift{alpha, NFElem(1)};
  std::vector<NFPoly> c;
  for (auto& fj : f.coeffs()) c.push_back(to_nfpoly(fj).compose(shift));
  return NFPoly2(c);
}

int total_degree(const QPoly2& f) {
  int d = -1;
  for (int j = 0; j <= f.degree(); ++j)
    if (!f[j].zero()) d = std::max(d, j + f[j].degree());
  return d;
}

namespace {

std::vector<mpq_class> sample_points(int count) {
  std::vector<mpq_class> pts;
  for (long k = 0; static_cast<int>(pts.size()) < count; ++k) {
    if (k == 0) {
      pts.emplace_back(0);
      continue;
    }
    pts.emplace_back(k);
    pts.emplace_back(-k);
    mpq_class h(2 * k - 1, 2);
    h.canonicalize();
    pts.push_back(h);
    pts.push_back(-h);
  }
  pts.resize(count);
  return pts;
}

}  // namespace

IrreducibilityReport absolute_irreducibility(const QPoly2& f, int trials) {
  IrreducibilityReport rep;
  QPoly content;
  for (auto& c : f.coeffs()) content = gcd(content, c);
  if (content.degree() >= 1) throw std::invalid_argument("polynomial has a nonconstant factor in Q[X]");
  if (f.degree() == 1) {
    rep.status = IrreducibilityStatus::certified;
    rep.degree_gcd = 1;
    rep.message = "linear in Y with trivial X-content";
    return rep;
  }
  // Absolute factors of a Q-irreducible f are Galois conjugate, so their number divides
  // both partial degrees and every Q-factor degree of a squarefree fiber in either variable.
  bool irreducible = false;
  int g = std::gcd(f.degree(), deg_x(f));
  QPoly2 swapped = swap_xy(f);
  for (const auto& x0 : sample_points(trials)) {
    if (irreducible && g == 1) break;
    for (int dir = 0; dir < 2; ++dir) {
      const QPoly2& h = dir == 0 ? f : swapped;
      if (h.degree() < 1 || sgn(h.lead().eval(x0)) == 0) continue;
      QPoly F = eval_x(h, x0);
      if (!is_squarefree(F)) continue;
      auto fac = factor_rational_poly(F, std::max(kFactorDegreeCap, F.degree()));
      if (dir == 0 && fac.size() == 1 && !irreducible) {
        irreducible = true;
        rep.irreducible_fiber = x0;
      }
      for (auto& fc : fac) g = std::gcd(g, fc.poly.degree());
      if (dir == 0) rep.fibers.push_back(x0);
    }
  }
  rep.degree_gcd = g;
  if (irreducible && g == 1) {
    rep.status = IrreducibilityStatus::certified;
    rep.message = "irreducible fiber and coprime fiber factor degrees";
  } else if (irreducible) {
    rep.status = IrreducibilityStatus::rational_only;
    rep.message = "warning: irreducible over Q; absolute irreducibility assumed";
  } else {
    rep.status = IrreducibilityStatus::assumed;
    rep.message = "warning: no irreducible fiber found; irreducibility assumed";
  }
  return rep;
}

PlaneCurveModel PlaneCurveModel::normalize_f0_monic(const QPoly2& f, bool check_irreducibility) {
  if (f.degree() < 1) throw std::invalid_argument("f is constant in Y");
  PlaneCurveModel M;
  M.original_ = f;
  M.normalization_ = f.lead().lead();
  mpq_class inv = 1 / M.normalization_;
  std::vector<QPoly> c;
  for (auto& fj : f.coeffs()) c.push_back(fj.scaled(inv));
  M.f_ = QPoly2(c);
  M.m_ = deg_x(M.f_);
  M.n_ = M.f_.degree();
  M.hp_ = projective_height(M.f_);
  M.ha_ = affine_height(M.f_);
  M.R_ = resultant_y(M.f_);
  if (M.R_.zero()) throw std::invalid_argument("Y-resultant vanishes identically");
  M.r0_ = M.R_.lead();
  M.Rhat_ = radical(M.R_);
  M.Delta_ = M.Rhat_.degree() >= 1 ? resultant(M.Rhat_, M.Rhat_.derivative()) : mpq_class(1);
  if (M.R_.degree() >= 1) {
    for (auto& fc : factor_rational_poly(M.R_, std::max(kFactorDegreeCap, M.R_.degree()))) {
      Center C;
      C.minpoly = fc.poly.monic();
      C.mu = fc.multiplicity;
      QPoly g = M.f0();
      while (g.degree() >= C.minpoly.degree()) {
        auto [q, r] = divrem(g, C.minpoly);
        if (!r.zero()) break;
        ++C.u;
        g = q;
      }
      M.centers_.push_back(C);
    }
  }
  if (check_irreducibility) M.irr_ = absolute_irreducibility(M.f_);
  return M;
}

// ---- height inequalities ----

long double resultant_affine_rhs(int m, int n, long double ha) {
  long double k = 2 * n - 1;
  return k * ha + k * (std::log(2.0L * n * n) + m * std::log(2.0L));
}

long double resultant_projective_rhs(int m, int n, long double hp) {
  long double k = 2 * n - 1;
  return k * hp + k * std::log((m + 1.0L) * (n + 1.0L) * std::sqrt(static_cast<long double>(n)));
}

long double univariate_resultant_rhs(int d, long double ha) {
  long double k = 2 * d - 1;
  return k * ha + k * std::log(2.0L * d * d);
}

BoundCheck check_resultant_affine(const QPoly2& f) {
  QPoly R = resultant_y(f);
  return {"resultant affine height", "Y-resultant affine height inequality", affine_height(R),
          resultant_affine_rhs(deg_x(f), f.degree(), affine_height(f).lower)};
}

BoundCheck check_resultant_projective(const QPoly2& f) {
  QPoly R = resultant_y(f);
  return {"resultant projective height", "Y-resultant projective height inequality (Schmidt)", projective_height(R),
          resultant_projective_rhs(deg_x(f), f.degree(), projective_height(f).lower)};
}

BoundCheck check_univariate_resultant(const QPoly& F) {
  mpq_class R = resultant(F, F.derivative());
  return {"univariate resultant affine height", "resultant of a polynomial and its derivative",
          affine_height(std::vector<mpq_class>{R}), univariate_resultant_rhs(F.degree(), affine_height(F).lower)};
}

BoundCheck check_mahler(const QPoly& F) {
  HeightValue sum{0, 0};
  for (auto& fc : factor_rational_poly(F, std::max(kFactorDegreeCap, F.degree()))) {
    QPoly p = fc.poly;
    long double base = log_abs(p.lead());
    HeightValue lm{base, base};
    for (auto& r : isolate_roots(p)) {
      lm.lower += std::max(0.0L, r.ball.log_abs_lower());
      lm.upper += std::max(0.0L, r.ball.log_abs_upper());
    }
    sum = sum + lm.scaled(fc.multiplicity);
  }
  return {"Mahler root heights", "Mahler inequality for the heights of the roots", sum,
          projective_height(F).lower + std::log(F.degree() + 1.0L)};
}

BoundCheck check_gelfond(const std::vector<QPoly2>& factors) {
  QPoly2 prod(QPoly(1L));
  HeightValue s{0, 0};
  long double degs = 0;
  for (auto& f : factors) {
    prod = prod * f;
    s = s + projective_height(f);
    degs += total_degree(f);
  }
  HeightValue lhs{s.lower - degs, s.upper - degs};
  return {"Gelfond product", "Gelfond product inequality", lhs, projective_height(prod).lower};
}

BoundCheck check_product_affine(const std::vector<QPoly2>& factors) {
  QPoly2 prod(QPoly(1L));
  long double rhs = 0;
  for (size_t i = 0; i < factors.size(); ++i) {
    prod = prod * factors[i];
    rhs += affine_height(factors[i]).lower;
    if (i + 1 < factors.size()) rhs += std::log(3.0L) * total_degree(factors[i]);
  }
  return {"affine product", "affine height of a product", affine_height(prod), rhs};
}

std::vector<BoundCheck> check_divisor(const QPoly& f, const QPoly& g) {
  if (!(g % f).zero()) throw std::invalid_argument("f does not divide g");
  long double hg = projective_height(g).lower;
  mpq_class a = f.lead();
  return {{"divisor projective height", "height of a divisor, projective form", projective_height(f), hg + g.degree()},
          {"divisor affine height", "height of a divisor, affine form", affine_height(f),
           hg + affine_height(std::vector<mpq_class>{a}).lower + g.degree()}};
}

BoundCheck check_translation(const QPoly2& f, const NFElem& alpha) {
  int m = deg_x(f);
  NFPoly2 t = translate(f, alpha);
  long double rhs = affine_height(f).lower + m * affine_height(alpha).lower + 2 * m * std::log(2.0L);
  return {"translation", "height of the translated polynomial f(X + alpha, Y)", affine_height(t), rhs};
}

BoundCheck check_determinant(const std::vector<std::vector<QPoly>>& M) {
  size_t s = M.size();
  long double h = 0;
  int mu = 0;
  for (auto& row : M)
    for (auto& e : row) {
      h = std::max(h, affine_height(e).upper);
      mu = std::max(mu, e.degree());
    }
  QPoly det = det_bareiss(M);
  long double rhs = s * h + s * (std::log(static_cast<long double>(s)) + mu * std::log(2.0L));
  return {"determinant", "affine height of a determinant of polynomials", affine_height(det), rhs};
}

bool HeightBoundSuite::all_hold() const {
  for (auto& c : checks)
    if (!c.holds()) return false;
  return true;
}

HeightBoundSuite height_bound_suite(const QPoly2& f) {
  HeightBoundSuite s;
  s.checks.push_back(check_resultant_affine(f));
  s.checks.push_back(check_resultant_projective(f));
  QPoly R = resultant_y(f);
  if (R.degree() >= 1) {
    s.checks.push_back(check_mahler(R));
    std::vector<QPoly2> parts;
    for (auto& fc : factor_rational_poly(R, std::max(kFactorDegreeCap, R.degree()))) {
      for (auto& c : check_divisor(fc.poly, R)) s.checks.push_back(c);
      for (int k = 0; k < fc.multiplicity; ++k) parts.push_back(QPoly2(fc.poly));
    }
    s.checks.push_back(check_gelfond(parts));
  }
  return s;
}

}  // namespace cheval
