#include "cheval/complex_roots.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace cheval {

namespace {

mpf_class eps_of(unsigned prec) {
  mpf_class e(1, prec);
  mpf_div_2exp(e.get_mpf_t(), e.get_mpf_t(), prec > 8 ? prec - 8 : 1);
  return e;
}

mpf_class fabs_(const mpf_class& x) { return abs(x); }

mpf_class hypot_upper(const mpf_class& a, const mpf_class& b) {
  mpf_class s(a * a + b * b, a.get_prec());
  mpf_class r(0, a.get_prec());
  mpf_sqrt(r.get_mpf_t(), s.get_mpf_t());
  return r * (1 + eps_of(a.get_prec()));
}

mpf_class hypot_lower(const mpf_class& a, const mpf_class& b) {
  mpf_class s(a * a + b * b, a.get_prec());
  mpf_class r(0, a.get_prec());
  mpf_sqrt(r.get_mpf_t(), s.get_mpf_t());
  return r * (1 - eps_of(a.get_prec()));
}

long double ld_log(const mpf_class& x) {
  if (sgn(x) <= 0) return -std::numeric_limits<long double>::infinity();
  long e = 0;
  double m = mpf_get_d_2exp(&e, x.get_mpf_t());
  return std::log(static_cast<long double>(m)) + static_cast<long double>(e) * std::log(2.0L);
}

}  // namespace

long double to_ld(const mpf_class& x) {
  long e = 0;
  double m = mpf_get_d_2exp(&e, x.get_mpf_t());
  return std::ldexp(static_cast<long double>(m), static_cast<int>(e));
}

CBall::CBall(unsigned prec) : re_(0, prec), im_(0, prec), rad_(0, prec) {}

CBall::CBall(const mpq_class& x, unsigned prec) : re_(0, prec), im_(0, prec), rad_(0, prec) {
  re_ = x;
  if (x.get_den() != 1) rad_ = fabs_(re_) * eps_of(prec);
}

CBall::CBall(const mpf_class& re, const mpf_class& im, const mpf_class& rad)
    : re_(re, re.get_prec()), im_(im, re.get_prec()), rad_(rad, re.get_prec()) {}

void CBall::add_rounding() {
  mpf_class m = fabs_(re_) + fabs_(im_);
  rad_ = rad_ * (1 + eps_of(prec())) + m * eps_of(prec());
}

mpf_class CBall::abs_mid() const { return hypot_upper(re_, im_); }
mpf_class CBall::abs_upper() const { return hypot_upper(re_, im_) + rad_; }
mpf_class CBall::abs_lower() const {
  mpf_class r = hypot_lower(re_, im_) - rad_;
  if (sgn(r) < 0) r = 0;
  return r;
}
bool CBall::contains_zero() const { return sgn(abs_lower()) <= 0; }

long double CBall::log_abs_lower() const { return ld_log(abs_lower()); }
long double CBall::log_abs_upper() const { return ld_log(abs_upper()); }

CBall CBall::conj() const { return CBall(re_, -im_, rad_); }

CBall CBall::inflated(const mpf_class& extra) const { return CBall(re_, im_, rad_ + extra); }

CBall CBall::inverse() const {
  mpf_class lo = abs_lower();
  if (sgn(lo) <= 0) throw std::domain_error("inverse of a disc containing zero");
  mpf_class n2(re_ * re_ + im_ * im_, prec());
  CBall r(prec());
  r.re_ = re_ / n2;
  r.im_ = -im_ / n2;
  mpf_class m = abs_mid();
  r.rad_ = rad_ / (lo * m) * (1 + eps_of(prec()));
  r.add_rounding();
  return r;
}

CBall operator+(const CBall& a, const CBall& b) {
  CBall r(std::max(a.prec(), b.prec()));
  r.re_ = a.re_ + b.re_;
  r.im_ = a.im_ + b.im_;
  r.rad_ = a.rad_ + b.rad_;
  r.add_rounding();
  return r;
}

CBall operator-(const CBall& a) { return CBall(-a.re_, -a.im_, a.rad_); }
CBall operator-(const CBall& a, const CBall& b) { return a + (-b); }

CBall operator*(const CBall& a, const CBall& b) {
  CBall r(std::max(a.prec(), b.prec()));
  r.re_ = a.re_ * b.re_ - a.im_ * b.im_;
  r.im_ = a.re_ * b.im_ + a.im_ * b.re_;
  r.rad_ = a.abs_mid() * b.rad_ + b.abs_mid() * a.rad_ + a.rad_ * b.rad_;
  r.add_rounding();
  return r;
}

CBall eval(const QPoly& f, const CBall& z) {
  CBall r(z.prec());
  for (int i = f.degree(); i >= 0; --i) r = r * z + CBall(f[i], z.prec());
  return r;
}

namespace {

struct MpC {
  mpf_class re, im;
};
MpC operator+(const MpC& a, const MpC& b) { return {a.re + b.re, a.im + b.im}; }
MpC operator-(const MpC& a, const MpC& b) { return {a.re - b.re, a.im - b.im}; }
MpC operator*(const MpC& a, const MpC& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
MpC operator/(const MpC& a, const MpC& b) {
  mpf_class n = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}
long double norm_ld(const MpC& a) {
  long double r = to_ld(a.re), i = to_ld(a.im);
  return std::sqrt(r * r + i * i);
}
long double norm_ld(const std::complex<long double>& a) { return std::abs(a); }

template <class C>
struct Ops;
template <>
struct Ops<std::complex<long double>> {
  using C = std::complex<long double>;
  unsigned prec;
  C from_q(const mpq_class& q) const { return C(static_cast<long double>(q.get_d()), 0); }
  C zero() const { return C(0, 0); }
  C one() const { return C(1, 0); }
  bool is_zero(const C& c) const { return c == C(0, 0); }
};
template <>
struct Ops<MpC> {
  unsigned prec;
  MpC from_q(const mpq_class& q) const {
    mpf_class r(0, prec);
    r = q;
    return {r, mpf_class(0, prec)};
  }
  MpC zero() const { return {mpf_class(0, prec), mpf_class(0, prec)}; }
  MpC one() const { return {mpf_class(1, prec), mpf_class(0, prec)}; }
  bool is_zero(const MpC& c) const { return sgn(c.re) == 0 && sgn(c.im) == 0; }
};

// Aberth-Ehrlich simultaneous iteration, Gauss-Seidel updates.
template <class C>
void aberth(const std::vector<C>& coef, std::vector<C>& z, const Ops<C>& ops, long double tol, int max_iter) {
  int n = static_cast<int>(coef.size()) - 1;
  std::vector<C> dcoef;
  for (int i = 1; i <= n; ++i) dcoef.push_back(coef[i] * ops.from_q(mpq_class(i)));
  auto horner = [&](const std::vector<C>& c, const C& x) {
    C r = ops.zero();
    for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
  };
  for (int it = 0; it < max_iter; ++it) {
    long double worst = 0;
    for (int i = 0; i < n; ++i) {
      C p = horner(coef, z[i]);
      if (ops.is_zero(p)) continue;
      C dp = horner(dcoef, z[i]);
      C ratio = ops.is_zero(dp) ? ops.one() : p / dp;
      C s = ops.zero();
      for (int j = 0; j < n; ++j)
        if (j != i) {
          C d = z[i] - z[j];
          if (!ops.is_zero(d)) s = s + ops.one() / d;
        }
      C denom = ops.one() - ratio * s;
      C w = ops.is_zero(denom) ? ratio : ratio / denom;
      z[i] = z[i] - w;
      long double rel = norm_ld(w) / (1 + norm_ld(z[i]));
      if (rel > worst) worst = rel;
    }
    if (worst < tol) return;
  }
}

std::vector<std::complex<long double>> initial_guesses(const QPoly& f) {
  int n = f.degree();
  // Fujiwara-type radius bound.
  long double lc = std::fabs(static_cast<long double>(f.lead().get_d()));
  long double R = 0;
  for (int i = 0; i < n; ++i) {
    long double c = std::fabs(static_cast<long double>(f[i].get_d())) / lc;
    if (c > 0) R = std::max(R, 2 * std::pow(c, 1.0L / (n - i)));
  }
  if (R == 0) R = 1;
  std::vector<std::complex<long double>> z(n);
  const long double pi = 3.14159265358979323846264338327950288L;
  for (int k = 0; k < n; ++k) z[k] = std::polar(R * 0.7L, 2 * pi * k / n + 0.4L);
  return z;
}

MpC newton_polish(const QPoly& f, MpC z, unsigned prec) {
  Ops<MpC> ops{prec};
  std::vector<MpC> c, dc;
  for (int i = 0; i <= f.degree(); ++i) c.push_back(ops.from_q(f[i]));
  for (int i = 1; i <= f.degree(); ++i) dc.push_back(ops.from_q(f[i] * i));
  for (int it = 0; it < 2 * static_cast<int>(std::log2(prec)) + 8; ++it) {
    MpC p = ops.zero(), d = ops.zero();
    for (size_t i = c.size(); i-- > 0;) p = p * z + c[i];
    for (size_t i = dc.size(); i-- > 0;) d = d * z + dc[i];
    if (ops.is_zero(p) || ops.is_zero(d)) break;
    MpC w = p / d;
    z = z - w;
    long double rel = norm_ld(w) / (1 + norm_ld(z));
    if (rel == 0 || std::log2(rel) < -static_cast<long double>(prec) + 4) break;
  }
  return z;
}

// Weierstrass-type inclusion: disc around z_i of radius n |f(z_i)| / |lc prod (z_i - z_j)|.
bool certify(const QPoly& f, const std::vector<MpC>& z, unsigned prec, std::vector<RootEnclosure>& out) {
  int n = f.degree();
  std::vector<CBall> pts;
  for (auto& c : z) pts.emplace_back(mpf_class(c.re, prec), mpf_class(c.im, prec), mpf_class(0, prec));
  std::vector<mpf_class> rad(n);
  for (int i = 0; i < n; ++i) {
    CBall v = eval(f, pts[i]);
    mpf_class num = v.abs_upper() * n;
    CBall prod(f.lead(), prec);
    for (int j = 0; j < n; ++j)
      if (j != i) prod = prod * (pts[i] - pts[j]);
    mpf_class den = prod.abs_lower();
    if (sgn(den) <= 0) return false;
    rad[i] = num / den * (1 + eps_of(prec));
  }
  // Required accuracy: radius below 2^-(prec/2) * max(1, |z|).
  mpf_class acc(1, prec);
  mpf_div_2exp(acc.get_mpf_t(), acc.get_mpf_t(), prec / 2);
  for (int i = 0; i < n; ++i) {
    mpf_class scale = pts[i].abs_mid();
    if (scale < 1) scale = 1;
    if (rad[i] > acc * scale) return false;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      mpf_class d = (pts[i] - pts[j]).abs_lower();
      if (!(d > rad[i] + rad[j])) return false;
    }
  out.assign(n, {});
  for (int i = 0; i < n; ++i) {
    out[i].ball = CBall(pts[i].re(), pts[i].im(), rad[i]);
    if (abs(pts[i].im()) > rad[i]) {
      out[i].real = false;
      continue;
    }
    // The mirror disc meets only this disc: the root equals its conjugate.
    CBall mirror = out[i].ball.conj();
    bool alone = true;
    for (int j = 0; j < n && alone; ++j) {
      if (j == i) continue;
      mpf_class d = (mirror - pts[j]).abs_lower();
      if (!(d > rad[i] + rad[j])) alone = false;
    }
    if (!alone) return false;
    out[i].real = true;
    out[i].ball = CBall(pts[i].re(), mpf_class(0, prec), rad[i] + abs(pts[i].im()));
  }
  return true;
}

}  // namespace

std::vector<RootEnclosure> isolate_roots(const QPoly& f, unsigned prec) {
  int n = f.degree();
  if (n < 1) throw std::invalid_argument("isolate_roots: degree must be positive");
  if (prec < 64) prec = 64;
  if (n == 1) {
    mpq_class r = -f[0] / f[1];
    RootEnclosure e;
    e.ball = CBall(r, prec);
    e.real = true;
    return {e};
  }
  QPoly g = f.monic();
  auto z0 = initial_guesses(g);
  {
    Ops<std::complex<long double>> ops{64};
    std::vector<std::complex<long double>> coef;
    for (int i = 0; i <= n; ++i) coef.push_back(ops.from_q(g[i]));
    aberth(coef, z0, ops, 1e-17L, 800);
  }
  std::vector<MpC> z;
  for (auto& c : z0) z.push_back({mpf_class(static_cast<double>(c.real()), prec), mpf_class(static_cast<double>(c.imag()), prec)});
  for (unsigned p = prec; p <= 16384; p *= 2) {
    for (auto& c : z) {
      c.re = mpf_class(c.re, p);
      c.im = mpf_class(c.im, p);
    }
    std::vector<RootEnclosure> out;
    std::vector<MpC> polished;
    for (auto& c : z) polished.push_back(newton_polish(g, c, p));
    if (certify(g, polished, p, out)) return out;
    // Clustered or poorly separated: rerun Aberth at this precision.
    Ops<MpC> ops{p};
    std::vector<MpC> coef;
    for (int i = 0; i <= n; ++i) coef.push_back(ops.from_q(g[i]));
    long double tol = std::pow(2.0L, -static_cast<long double>(p) / 2);
    aberth(coef, z, ops, tol, 400);
    for (auto& c : z) c = newton_polish(g, c, p);
    if (certify(g, z, p, out)) return out;
  }
  throw std::runtime_error("isolate_roots: failed to certify root enclosures");
}

std::vector<RootEnclosure> refine_roots(const QPoly& f, const std::vector<RootEnclosure>& roots, unsigned prec) {
  QPoly g = f.monic();
  for (unsigned p = prec; p <= 32768; p *= 2) {
    std::vector<MpC> z;
    for (auto& r : roots) z.push_back(newton_polish(g, {mpf_class(r.ball.re(), p), mpf_class(r.ball.im(), p)}, p));
    std::vector<RootEnclosure> out;
    if (certify(g, z, p, out)) return out;
  }
  throw std::runtime_error("refine_roots: failed to certify root enclosures");
}

}  // namespace cheval
