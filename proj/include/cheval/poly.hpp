#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace cheval {

inline bool is_zero(const mpq_class& x) { return sgn(x) == 0; }
inline bool is_zero(const mpz_class& x) { return sgn(x) == 0; }
inline mpq_class exact_div(const mpq_class& a, const mpq_class& b) { return a / b; }
inline mpz_class exact_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Dense univariate polynomial; coefficient i multiplies x^i.  The zero
// polynomial is the empty coefficient vector and has degree -1.
template <class T>
class Poly {
 public:
  using coeff_type = T;

  Poly() = default;
  Poly(const T& c) {
    if (!is_zero(c)) c_.push_back(c);
  }
  Poly(long v) : Poly(T(v)) {}
  Poly(std::initializer_list<T> c) : c_(c) { trim(); }
  explicit Poly(std::vector<T> c) : c_(std::move(c)) { trim(); }

  static Poly monomial(const T& c, int k) {
    if (is_zero(c)) return Poly();
    std::vector<T> v(static_cast<size_t>(k) + 1);
    v[k] = c;
    Poly p;
    p.c_ = std::move(v);
    return p;
  }
  static Poly x() { return monomial(T(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool zero() const { return c_.empty(); }
  T coeff(int i) const { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : T(); }
  const T& operator[](int i) const { return c_[i]; }
  const T& lead() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
  }
  const std::vector<T>& coeffs() const { return c_; }
  void set_coeff(int i, const T& v) {
    if (i >= static_cast<int>(c_.size())) {
      if (is_zero(v)) return;
      c_.resize(static_cast<size_t>(i) + 1);
    }
    c_[i] = v;
    trim();
  }

  // lowest exponent with a nonzero coefficient; -1 for the zero polynomial
  int order() const {
    for (size_t i = 0; i < c_.size(); ++i)
      if (!is_zero(c_[i])) return static_cast<int>(i);
    return -1;
  }

  Poly& operator+=(const Poly& b) {
    if (b.c_.size() > c_.size()) c_.resize(b.c_.size());
    for (size_t i = 0; i < b.c_.size(); ++i) c_[i] = c_[i] + b.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& b) {
    if (b.c_.size() > c_.size()) c_.resize(b.c_.size());
    for (size_t i = 0; i < b.c_.size(); ++i) c_[i] = c_[i] - b.c_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) {
    for (auto& c : a.c_) c = -c;
    return a;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.zero() || b.zero()) return Poly();
    std::vector<T> r(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (is_zero(a.c_[i])) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r));
  }
  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (size_t i = 0; i < a.c_.size(); ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
  friend bool is_zero(const Poly& p) { return p.zero(); }

  Poly scaled(const T& s) const {
    Poly r = *this;
    for (auto& c : r.c_) c = c * s;
    r.trim();
    return r;
  }
  Poly monic() const { return scaled(T(1) / lead()); }
  Poly shifted(int k) const {  // multiply by x^k, k >= 0
    if (zero()) return Poly();
    Poly r;
    r.c_.assign(static_cast<size_t>(k), T());
    r.c_.insert(r.c_.end(), c_.begin(), c_.end());
    return r;
  }
  Poly truncated(int n) const {  // keep terms of degree < n
    if (static_cast<int>(c_.size()) <= n) return *this;
    return Poly(std::vector<T>(c_.begin(), c_.begin() + std::max(n, 0)));
  }
  Poly derivative() const {
    std::vector<T> r;
    for (size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * T(static_cast<long>(i)));
    return Poly(std::move(r));
  }
  T eval(const T& x) const {
    T r = T();
    for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
  }
  template <class U>
  U eval_as(const U& x) const {
    U r = U();
    for (size_t i = c_.size(); i-- > 0;) r = r * x + U(c_[i]);
    return r;
  }
  // p(q(x))
  Poly compose(const Poly& q) const {
    Poly r;
    for (size_t i = c_.size(); i-- > 0;) r = r * q + Poly(c_[i]);
    return r;
  }
  template <class F>
  auto map(F f) const -> Poly<decltype(f(std::declval<T>()))> {
    using U = decltype(f(std::declval<T>()));
    std::vector<U> r;
    r.reserve(c_.size());
    for (auto& c : c_) r.push_back(f(c));
    return Poly<U>(std::move(r));
  }

 private:
  void trim() {
    while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
  }
  std::vector<T> c_;
};

template <class T>
Poly<T> pow(const Poly<T>& p, unsigned k) {
  Poly<T> r(T(1)), b = p;
  while (k) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

// Division with exact leading-coefficient quotients (works over fields, and
// over domains whenever the division is exact).
template <class T>
std::pair<Poly<T>, Poly<T>> divrem(const Poly<T>& a, const Poly<T>& b) {
  if (b.zero()) throw std::domain_error("polynomial division by zero");
  int db = b.degree();
  std::vector<T> r = a.coeffs();
  if (a.degree() < db) return {Poly<T>(), a};
  std::vector<T> q(static_cast<size_t>(a.degree() - db) + 1);
  const T& lb = b.lead();
  for (int i = a.degree(); i >= db; --i) {
    if (is_zero(r[i])) continue;
    T c = exact_div(r[i], lb);
    q[i - db] = c;
    for (int j = 0; j <= db; ++j) r[i - db + j] = r[i - db + j] - c * b[j];
  }
  r.resize(static_cast<size_t>(db));
  return {Poly<T>(std::move(q)), Poly<T>(std::move(r))};
}

template <class T>
Poly<T> operator/(const Poly<T>& a, const Poly<T>& b) {
  return divrem(a, b).first;
}
template <class T>
Poly<T> operator%(const Poly<T>& a, const Poly<T>& b) {
  return divrem(a, b).second;
}

template <class T>
Poly<T> exact_div(const Poly<T>& a, const Poly<T>& b) {
  auto [q, r] = divrem(a, b);
  if (!r.zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

// lc(b)^(deg a - deg b + 1) * a mod b, computed without divisions.
template <class T>
Poly<T> pseudo_remainder(const Poly<T>& a, const Poly<T>& b) {
  if (b.zero()) throw std::domain_error("pseudo-remainder by zero");
  int db = b.degree();
  if (a.degree() < db) return a;
  std::vector<T> r = a.coeffs();
  const T& lb = b.lead();
  int steps = a.degree() - db + 1;
  for (int i = a.degree(); i >= db; --i) {
    T c = r[i];
    for (auto& x : r) x = x * lb;
    for (int j = 0; j <= db; ++j) r[i - db + j] = r[i - db + j] - c * b[j];
    --steps;
  }
  // remaining factors of lb to reach the fixed exponent
  Poly<T> rem(std::vector<T>(r.begin(), r.begin() + db));
  for (; steps > 0; --steps) rem = rem.scaled(lb);
  return rem;
}

// Monic gcd over a field.
template <class T>
Poly<T> gcd(Poly<T> a, Poly<T> b) {
  while (!b.zero()) {
    Poly<T> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.zero()) return a;
  return a.monic();
}

// Returns (g, s, t) with s*a + t*b = g, g monic (over a field).
template <class T>
std::tuple<Poly<T>, Poly<T>, Poly<T>> xgcd(Poly<T> a, Poly<T> b) {
  Poly<T> s0(T(1)), s1, t0, t1(T(1));
  while (!b.zero()) {
    auto [q, r] = divrem(a, b);
    a = std::move(b);
    b = std::move(r);
    Poly<T> s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (a.zero()) return {a, s0, t0};
  T inv = T(1) / a.lead();
  return {a.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

// Fraction-free Gaussian elimination (Bareiss); exact over any integral domain
// providing exact_div.
template <class T>
T det_bareiss(std::vector<std::vector<T>> m) {
  const size_t n = m.size();
  if (n == 0) return T(1);
  T prev(1);
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (is_zero(m[k][k])) {
      size_t piv = k + 1;
      while (piv < n && is_zero(m[piv][k])) ++piv;
      if (piv == n) return T();
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) m[i][j] = exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
      m[i][k] = T();
    }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : T(-m[n - 1][n - 1]);
}

template <class T>
std::vector<std::vector<T>> sylvester_matrix(const Poly<T>& a, const Poly<T>& b) {
  int da = a.degree(), db = b.degree();
  size_t n = static_cast<size_t>(da + db);
  std::vector<std::vector<T>> s(n, std::vector<T>(n));
  for (int i = 0; i < db; ++i)
    for (int j = 0; j <= da; ++j) s[i][i + j] = a[da - j];
  for (int i = 0; i < da; ++i)
    for (int j = 0; j <= db; ++j) s[db + i][i + j] = b[db - j];
  return s;
}

// Sylvester resultant Res(a, b) = lc(a)^deg b * prod_{a(t)=0} b(t).
template <class T>
T resultant(const Poly<T>& a, const Poly<T>& b) {
  if (a.zero() || b.zero()) return T();
  if (a.degree() == 0 && b.degree() == 0) return T(1);
  if (a.degree() == 0) {
    T r(1);
    for (int i = 0; i < b.degree(); ++i) r = r * a.lead();
    return r;
  }
  if (b.degree() == 0) {
    T r(1);
    for (int i = 0; i < a.degree(); ++i) r = r * b.lead();
    return r;
  }
  return det_bareiss(sylvester_matrix(a, b));
}

// Same value as resultant(), by the Euclidean algorithm; T must be a field.
template <class T>
T resultant_field(Poly<T> a, Poly<T> b) {
  if (a.zero() || b.zero()) return T();
  T acc(1);
  while (true) {
    int da = a.degree(), db = b.degree();
    if (db == 0) {
      T r = acc;
      for (int i = 0; i < da; ++i) r = r * b.lead();
      return r;
    }
    if (da == 0) {
      T r = acc;
      for (int i = 0; i < db; ++i) r = r * a.lead();
      return r;
    }
    if (da < db) {
      if ((da * db) % 2) acc = -acc;
      std::swap(a, b);
      continue;
    }
    Poly<T> r = a % b;
    if (r.zero()) return T();
    // Res(a,b) = (-1)^{da db} lc(b)^{da - dr} Res(b, r)
    if ((da * db) % 2) acc = -acc;
    for (int i = 0; i < da - r.degree(); ++i) acc = acc * b.lead();
    a = std::move(b);
    b = std::move(r);
  }
}

using QPoly = Poly<mpq_class>;
using ZPoly = Poly<mpz_class>;
// Bivariate: polynomial in Y whose coefficients are polynomials in X.
using QPoly2 = Poly<QPoly>;

// ---- rational polynomial helpers (qpoly.cpp) ----

// Positive rational c with p / c primitive with integer coefficients and
// positive leading coefficient.
mpq_class content(const QPoly& p);
QPoly primitive_part(const QPoly& p);
ZPoly to_zpoly(const QPoly& p);  // requires integer coefficients
QPoly to_qpoly(const ZPoly& p);

// Monic gcd over Q with primitive remainder sequence.
QPoly gcd(const QPoly& a, const QPoly& b);
// (F_1, F_2, ...) squarefree, pairwise coprime, monic, with F = c * prod F_i^i.
std::vector<QPoly> squarefree_decomposition(const QPoly& f);
QPoly squarefree_part(const QPoly& f);  // monic
bool is_squarefree(const QPoly& f);
mpq_class discriminant(const QPoly& f);
// f(x + a) and f(c x)
QPoly taylor_shift(const QPoly& f, const mpq_class& a);
QPoly scale_variable(const QPoly& f, const mpq_class& c);
QPoly reverse(const QPoly& f, int deg);
// Horner-free evaluation for rational points
mpq_class eval(const QPoly& f, const mpq_class& x);
// Integer s > 0 such that s^deg f(x/s) / lc is monic integral; returns the
// transformed polynomial in `out`.
mpz_class integral_scaling(const QPoly& f, QPoly& out);

std::string to_string(const QPoly& p, const std::string& var = "X");
std::string to_string(const QPoly2& p, const std::string& x = "X", const std::string& y = "Y");

// Bivariate helpers
int deg_x(const QPoly2& f);
QPoly2 derivative_y(const QPoly2& f);
QPoly eval_x(const QPoly2& f, const mpq_class& x);   // f(x, Y)
QPoly2 swap_xy(const QPoly2& f);
QPoly2 make_qpoly2(const std::vector<std::tuple<int, int, mpq_class>>& terms);  // (i, j, c): c X^i Y^j
std::vector<mpq_class> coefficient_vector(const QPoly2& f);  // nonzero coefficients
std::vector<mpq_class> coefficient_vector(const QPoly& f);

}  // namespace cheval
