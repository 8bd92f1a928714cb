#include "cheval/number_field.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "cheval/factor.hpp"
#include "cheval/integer.hpp"
#include "cheval/linalg.hpp"

namespace cheval {

// ---- NFElem ----

NFElem::NFElem(FieldPtr K, const QPoly& c) : K_(std::move(K)), c_(c) {
  if (K_ && c_.degree() >= K_->degree()) c_ = c_ % K_->minpoly();
}

NFElem NFElem::generator(const FieldPtr& K) { return NFElem(K, QPoly::x()); }

mpq_class NFElem::rational_value() const {
  if (!is_rational()) throw std::logic_error("element is not rational");
  return c_.zero() ? mpq_class(0) : c_[0];
}

QVector NFElem::coords(int d) const {
  QVector v(d);
  for (int i = 0; i <= c_.degree() && i < d; ++i) v[i] = c_[i];
  return v;
}

FieldPtr NFElem::common(const NFElem& a, const NFElem& b) {
  if (a.K_ == b.K_) return a.K_;
  if (a.is_rational()) return b.K_;
  if (b.is_rational()) return a.K_;
  throw std::logic_error("arithmetic between elements of different number fields");
}

NFElem operator+(const NFElem& a, const NFElem& b) {
  NFElem r;
  r.K_ = NFElem::common(a, b);
  r.c_ = a.c_ + b.c_;
  return r;
}

NFElem operator-(const NFElem& a, const NFElem& b) {
  NFElem r;
  r.K_ = NFElem::common(a, b);
  r.c_ = a.c_ - b.c_;
  return r;
}

NFElem operator-(const NFElem& a) {
  NFElem r = a;
  r.c_ = -a.c_;
  return r;
}

NFElem operator*(const NFElem& a, const NFElem& b) {
  FieldPtr K = NFElem::common(a, b);
  if (a.is_rational() || b.is_rational()) {
    NFElem r;
    r.K_ = K;
    r.c_ = a.is_rational() ? b.c_.scaled(a.rational_value()) : a.c_.scaled(b.rational_value());
    return r;
  }
  return NFElem(K, a.c_ * b.c_);
}

bool operator==(const NFElem& a, const NFElem& b) {
  if (a.K_ != b.K_ && !a.is_rational() && !b.is_rational())
    throw std::logic_error("comparison between elements of different number fields");
  return a.c_ == b.c_;
}

NFElem NFElem::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  if (is_rational()) {
    NFElem r(1 / rational_value());
    r.K_ = K_;
    return r;
  }
  auto [g, s, t] = xgcd(c_, K_->minpoly());
  if (g.degree() != 0) throw std::logic_error("non-invertible element: minimal polynomial is reducible");
  return NFElem(K_, s);
}

NFElem NFElem::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  NFElem r(1), b = *this;
  r.K_ = K_;
  while (k) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

namespace {
mpq_class norm_in(const NumberField& K, const NFElem& a) {
  if (a.is_rational()) return qpow(a.rational_value(), K.degree());
  return resultant_field(K.minpoly(), a.poly());
}
}  // namespace

mpq_class NFElem::norm() const {
  if (!K_) return rational_value();
  return norm_in(*K_, *this);
}

mpq_class NFElem::trace() const {
  if (!K_) return rational_value();
  QPoly cp = charpoly();
  return -cp[cp.degree() - 1];
}

QPoly NFElem::charpoly() const {
  if (!K_) return QPoly{-rational_value(), mpq_class(1)};
  int d = K_->degree();
  QMatrix M;
  QPoly b = c_;
  for (int i = 0; i < d; ++i) {
    M.push_back(NFElem(K_, b).coords(d));
    b = (b * QPoly::x()) % K_->minpoly();
  }
  return cheval::charpoly(M);
}

QPoly NFElem::minpoly() const { return squarefree_part(charpoly()); }

std::vector<CBall> NFElem::embeddings(unsigned prec) const {
  if (!K_) {
    unsigned p = prec ? prec : NumberField::kDefaultPrecision;
    return {CBall(rational_value(), p)};
  }
  std::vector<CBall> out;
  auto roots = prec ? K_->roots(prec) : K_->roots();
  for (auto& r : roots) out.push_back(eval(c_, r.ball));
  return out;
}

NFElem NFElem::mapped(const NFElem& generator_image) const {
  if (is_rational()) {
    NFElem r(rational_value());
    return r;
  }
  return c_.eval_as<NFElem>(generator_image);
}

// ---- NumberField ----

FieldPtr NumberField::create(const QPoly& minpoly, bool trusted) {
  if (minpoly.degree() < 1) throw std::invalid_argument("minimal polynomial must have positive degree");
  if (!trusted && !is_irreducible(minpoly, std::max(kFactorDegreeCap, minpoly.degree())))
    throw std::invalid_argument("not irreducible");
  return std::make_shared<const NumberField>(minpoly.monic());
}

FieldPtr NumberField::rationals() {
  static const FieldPtr q = create(QPoly::x(), true);
  return q;
}

const MaximalOrder& NumberField::maximal_order() const {
  std::call_once(order_once_, [this] { order_ = std::make_unique<MaximalOrder>(cheval::maximal_order(g_)); });
  return *order_;
}

const std::vector<PrimeIdeal>& NumberField::primes_above(const mpz_class& p) const {
  const MaximalOrder& O = maximal_order();
  std::lock_guard<std::mutex> lock(primes_mutex_);
  auto it = primes_.find(p);
  if (it != primes_.end()) return it->second;
  return primes_.emplace(p, decompose_prime(O, p)).first->second;
}

const std::vector<RootEnclosure>& NumberField::roots() const {
  std::call_once(roots_once_, [this] { roots_ = isolate_roots(g_, kDefaultPrecision); });
  return roots_;
}

std::vector<RootEnclosure> NumberField::roots(unsigned prec) const {
  if (prec <= kDefaultPrecision) return roots();
  return refine_roots(g_, roots(), prec);
}

int valuation(const NFElem& x, const PrimeIdeal& P) {
  if (x.is_zero()) throw std::domain_error("valuation of zero");
  if (x.is_rational()) return P.e * valuation(x.rational_value(), P.p);
  const MaximalOrder& O = x.field()->maximal_order();
  return valuation(O, P, x.coords(O.degree()));
}

long double log_abs_at(const NFElem& x, const PrimeIdeal& P) {
  return -static_cast<long double>(valuation(x, P)) / P.e * log_abs(P.p);
}

// ---- polynomials over K ----

NFPoly to_nfpoly(const QPoly& f) {
  std::vector<NFElem> c;
  for (auto& x : f.coeffs()) c.emplace_back(x);
  return NFPoly(c);
}

NFPoly gcd_over(const NFPoly& a, const NFPoly& b) { return gcd(a, b); }

namespace {

QPoly interpolate(const std::vector<mpq_class>& xs, const std::vector<mpq_class>& ys) {
  // Newton divided differences
  size_t n = xs.size();
  std::vector<mpq_class> c = ys;
  for (size_t j = 1; j < n; ++j)
    for (size_t i = n - 1; i >= j; --i) {
      c[i] = (c[i] - c[i - 1]) / (xs[i] - xs[i - j]);
      if (i == j) break;
    }
  QPoly r;
  for (size_t i = n; i-- > 0;) r = r * QPoly{-xs[i], mpq_class(1)} + QPoly(c[i]);
  return r;
}

NFPoly shift_by(const NFPoly& A, const NFElem& a) {  // A(Z + a)
  return A.compose(NFPoly{a, NFElem(1)});
}

NFPoly monic_over(const NFPoly& A) { return A.monic(); }

std::vector<NFPoly> factor_squarefree_over(const FieldPtr& K, const NFPoly& A) {
  if (A.degree() <= 1) return {monic_over(A)};
  if (K->degree() == 1) {
    QPoly q;
    for (int i = 0; i <= A.degree(); ++i) q.set_coeff(i, A[i].rational_value());
    std::vector<NFPoly> out;
    for (auto& f : factor_rational_poly(q, std::max(kFactorDegreeCap, q.degree()))) out.push_back(monic_over(to_nfpoly(f.poly)));
    return out;
  }
  NFElem theta = NFElem::generator(K);
  for (long s : {0L, 1L, -1L, 2L, -2L, 3L, -3L, 4L, -4L, 5L, -5L, 6L, 7L, 8L, 9L, 10L}) {
    NFPoly G = s == 0 ? A : shift_by(A, theta * NFElem(-s));
    QPoly N = norm_poly(K, G);
    if (!is_squarefree(N)) continue;
    auto fac = factor_rational_poly(N, std::max(kFactorDegreeCap, N.degree()));
    if (fac.size() == 1) return {monic_over(A)};
    std::vector<NFPoly> out;
    int total = 0;
    for (auto& f : fac) {
      NFPoly H = gcd_over(G, to_nfpoly(f.poly));
      if (H.degree() <= 0) continue;
      NFPoly back = s == 0 ? H : shift_by(H, theta * NFElem(s));
      total += back.degree();
      out.push_back(monic_over(back));
    }
    if (total != A.degree()) throw std::logic_error("factorization over number field lost degree");
    return out;
  }
  throw std::runtime_error("no squarefree norm shift found");
}

}  // namespace

QPoly norm_poly(const FieldPtr& K, const NFPoly& F) {
  if (F.zero()) return QPoly();
  int D = K->degree() * F.degree();
  std::vector<mpq_class> xs, ys;
  for (int i = 0; i <= D; ++i) {
    mpq_class z(i);
    NFElem v = F.eval(NFElem(z));
    xs.push_back(z);
    ys.push_back(norm_in(*K, v));
  }
  return interpolate(xs, ys);
}

std::vector<NFFactor> factor_over(const FieldPtr& K, const NFPoly& F) {
  std::vector<NFFactor> out;
  if (F.degree() <= 0) return out;
  NFPoly a = F.monic();
  NFPoly c = gcd_over(a, a.derivative());
  NFPoly w = a / c;
  int i = 1;
  while (w.degree() > 0) {
    NFPoly y = gcd_over(w, c);
    NFPoly z = w / y;
    if (z.degree() > 0)
      for (auto& f : factor_squarefree_over(K, z)) out.push_back({f, i});
    w = y;
    c = c / y;
    ++i;
  }
  std::stable_sort(out.begin(), out.end(), [](const NFFactor& x, const NFFactor& y) { return x.poly.degree() < y.poly.degree(); });
  return out;
}

Extension extend(const FieldPtr& K, const NFPoly& G_in) {
  NFPoly G = G_in.monic();
  if (G.degree() < 1) throw std::invalid_argument("extension by a constant polynomial");
  if (G.degree() == 1) return {K, NFElem::generator(K), -G[0]};
  if (K->degree() == 1) {
    QPoly q;
    for (int i = 0; i <= G.degree(); ++i) q.set_coeff(i, G[i].rational_value());
    FieldPtr L = NumberField::create(q, true);
    mpq_class base = -K->minpoly()[0];
    return {L, NFElem(base), NFElem::generator(L)};
  }
  NFElem theta = NFElem::generator(K);
  for (long s : {1L, 2L, -1L, -2L, 3L, -3L, 4L, 5L, 6L, 7L, 8L, 9L, 10L, 11L}) {
    QPoly N = norm_poly(K, shift_by(G, theta * NFElem(-s)));
    if (!is_squarefree(N)) continue;
    FieldPtr L = NumberField::create(N, true);
    NFElem gamma = NFElem::generator(L);
    // H(T) = G evaluated with theta -> T and Z -> gamma - s T
    NFPoly lin{gamma, NFElem(-s)};
    NFPoly H, pw{NFElem(1)};
    for (int j = 0; j <= G.degree(); ++j) {
      NFPoly cj = to_nfpoly(G[j].poly());
      H += cj * pw;
      pw = pw * lin;
    }
    NFPoly g = gcd_over(to_nfpoly(K->minpoly()), H);
    if (g.degree() != 1) throw std::logic_error("primitive element recovery failed");
    NFElem base = -g[0];
    return {L, base, gamma - NFElem(s) * base};
  }
  throw std::runtime_error("no primitive element shift found");
}

Subfield generated_subfield(const FieldPtr& L, const std::vector<NFElem>& gens) {
  bool all_rational = true;
  for (auto& g : gens) all_rational = all_rational && g.is_rational();
  if (all_rational) {
    Subfield s{NumberField::rationals(), NFElem(0), {}};
    for (auto& g : gens) s.images.emplace_back(g.rational_value());
    return s;
  }
  int d = L->degree();
  std::mt19937 rng(20240517);
  std::uniform_int_distribution<int> coef(-4, 4);
  size_t best = 0;
  int best_deg = -1;
  for (size_t i = 0; i < gens.size(); ++i) {
    int deg = gens[i].is_rational() ? 1 : gens[i].minpoly().degree();
    if (deg > best_deg) {
      best_deg = deg;
      best = i;
    }
  }
  for (int attempt = 0; attempt < 200; ++attempt) {
    NFElem delta = gens[best];
    if (attempt > 0)
      for (size_t i = 0; i < gens.size(); ++i) {
        int c = (attempt < 10 && i != best) ? attempt : coef(rng);
        if (i != best) delta = delta + NFElem(c) * gens[i];
      }
    if (delta.is_rational()) continue;
    QPoly mp = delta.minpoly();
    int t = mp.degree();
    QMatrix powers;
    NFElem pw(1);
    for (int k = 0; k < t; ++k) {
      powers.push_back(pw.coords(d));
      pw = pw * delta;
    }
    FieldPtr F = NumberField::create(mp, true);
    std::vector<NFElem> images;
    bool ok = true;
    for (auto& g : gens) {
      auto sol = solve_in_row_span(powers, g.coords(d));
      if (!sol) {
        ok = false;
        break;
      }
      images.emplace_back(F, QPoly(std::vector<mpq_class>(*sol)));
    }
    if (ok) return {F, delta, images};
  }
  throw std::runtime_error("no primitive element for subfield found");
}

long double log_discriminant_normalized(const NumberField& L) {
  if (L.degree() == 1) return 0;
  return log_abs(L.discriminant()) / L.degree();
}

}  // namespace cheval
