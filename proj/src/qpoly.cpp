#include <map>
#include <sstream>

#include "cheval/poly.hpp"
#include "cheval/integer.hpp"

namespace cheval {

mpq_class content(const QPoly& p) {
  if (p.zero()) return 0;
  mpz_class num = 0, den = 1;
  for (auto& c : p.coeffs()) {
    if (sgn(c) == 0) continue;
    num = gcd(num, mpz_class(c.get_num()));
    den = lcm(den, mpz_class(c.get_den()));
  }
  mpq_class r(num, den);
  r.canonicalize();
  if (sgn(p.lead()) < 0) r = -r;
  return r;
}

QPoly primitive_part(const QPoly& p) {
  if (p.zero()) return p;
  return p.scaled(1 / content(p));
}

ZPoly to_zpoly(const QPoly& p) {
  std::vector<mpz_class> v;
  for (auto& c : p.coeffs()) {
    if (c.get_den() != 1) throw std::domain_error("to_zpoly: non-integer coefficient");
    v.push_back(c.get_num());
  }
  return ZPoly(std::move(v));
}

QPoly to_qpoly(const ZPoly& p) {
  std::vector<mpq_class> v;
  for (auto& c : p.coeffs()) v.emplace_back(c);
  return QPoly(std::move(v));
}

QPoly gcd(const QPoly& a_in, const QPoly& b_in) {
  if (a_in.zero()) return b_in.zero() ? b_in : b_in.monic();
  if (b_in.zero()) return a_in.monic();
  QPoly a = primitive_part(a_in), b = primitive_part(b_in);
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.zero()) {
    QPoly r = pseudo_remainder(a, b);
    a = std::move(b);
    b = r.zero() ? r : primitive_part(r);
  }
  return a.monic();
}

std::vector<QPoly> squarefree_decomposition(const QPoly& f) {
  // Yun's algorithm
  std::vector<QPoly> out;
  if (f.degree() <= 0) return out;
  QPoly df = f.derivative();
  QPoly a = gcd(f, df);
  QPoly b = exact_div(f, a);
  QPoly c = exact_div(df, a);
  QPoly d = c - b.derivative();
  while (b.degree() > 0) {
    QPoly g = gcd(b, d);
    out.push_back(g.monic());
    b = exact_div(b, g);
    c = exact_div(d, g);
    d = c - b.derivative();
  }
  while (!out.empty() && out.back().degree() == 0) out.pop_back();
  return out;
}

QPoly squarefree_part(const QPoly& f) {
  if (f.degree() <= 0) return QPoly(mpq_class(1));
  return exact_div(f, gcd(f, f.derivative())).monic();
}

bool is_squarefree(const QPoly& f) { return f.degree() <= 0 || gcd(f, f.derivative()).degree() == 0; }

mpq_class discriminant(const QPoly& f) {
  int n = f.degree();
  if (n < 1) throw std::domain_error("discriminant of constant");
  mpq_class r = resultant_field(f, f.derivative()) / f.lead();
  if ((n * (n - 1) / 2) % 2) r = -r;
  return r;
}

QPoly taylor_shift(const QPoly& f, const mpq_class& a) {
  std::vector<mpq_class> c = f.coeffs();
  int n = static_cast<int>(c.size());
  for (int i = 0; i < n; ++i)
    for (int j = n - 2; j >= i; --j) c[j] += a * c[j + 1];
  return QPoly(std::move(c));
}

QPoly scale_variable(const QPoly& f, const mpq_class& s) {
  std::vector<mpq_class> c = f.coeffs();
  mpq_class p = 1;
  for (auto& x : c) {
    x *= p;
    p *= s;
  }
  return QPoly(std::move(c));
}

QPoly reverse(const QPoly& f, int deg) {
  std::vector<mpq_class> c(static_cast<size_t>(deg) + 1);
  for (int i = 0; i <= f.degree(); ++i) c[deg - i] = f[i];
  return QPoly(std::move(c));
}

mpq_class eval(const QPoly& f, const mpq_class& x) { return f.eval(x); }

mpz_class integral_scaling(const QPoly& f_in, QPoly& out) {
  // g(x) = s^n f(x/s)/lc is monic with integer coefficients for a suitable s.
  QPoly f = f_in.monic();
  int n = f.degree();
  mpz_class s = 1;
  for (int i = 0; i < n; ++i) {
    const mpq_class& c = f[i];
    if (sgn(c) == 0) continue;
    // need s^(n-i) * c integral: for each prime of den(c) with exponent e, s needs ceil(e/(n-i))
    mpz_class den = c.get_den();
    if (den == 1) continue;
    mpz_class t = 1;
    for (auto& [p, e] : factor_integer(den)) {
      int k = (e + (n - i) - 1) / (n - i);
      t *= ipow(p, static_cast<unsigned long>(k));
    }
    s = lcm(s, t);
  }
  std::vector<mpq_class> c(static_cast<size_t>(n) + 1);
  mpz_class pw = 1;
  for (int i = n; i >= 0; --i) {
    c[i] = f[i] * pw;
    pw *= s;
  }
  out = QPoly(std::move(c));
  return s;
}

namespace {
std::string coeff_str(const mpq_class& c) {
  return c.get_str();
}
}  // namespace

std::string to_string(const QPoly& p, const std::string& var) {
  if (p.zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    const mpq_class& c = p[i];
    if (sgn(c) == 0) continue;
    mpq_class a = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = (a == 1);
    if (!unit || i == 0) os << coeff_str(a);
    if (i > 0) {
      if (!unit) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

std::string to_string(const QPoly2& p, const std::string& x, const std::string& y) {
  if (p.zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int j = p.degree(); j >= 0; --j) {
    for (int i = p[j].degree(); i >= 0; --i) {
      const mpq_class& c = p[j][i];
      if (sgn(c) == 0) continue;
      mpq_class a = abs(c);
      if (first) {
        if (sgn(c) < 0) os << "-";
      } else {
        os << (sgn(c) < 0 ? " - " : " + ");
      }
      first = false;
      bool unit = (a == 1);
      std::string mono;
      if (i > 0) mono += x + (i > 1 ? "^" + std::to_string(i) : "");
      if (j > 0) mono += (mono.empty() ? "" : "*") + y + (j > 1 ? "^" + std::to_string(j) : "");
      if (mono.empty()) os << coeff_str(a);
      else if (unit) os << mono;
      else os << coeff_str(a) << "*" << mono;
    }
  }
  return os.str();
}

int deg_x(const QPoly2& f) {
  int d = -1;
  for (auto& c : f.coeffs()) d = std::max(d, c.degree());
  return d;
}

QPoly2 derivative_y(const QPoly2& f) { return f.derivative(); }

QPoly eval_x(const QPoly2& f, const mpq_class& x) {
  std::vector<mpq_class> c;
  for (auto& fj : f.coeffs()) c.push_back(fj.eval(x));
  return QPoly(std::move(c));
}

QPoly2 swap_xy(const QPoly2& f) {
  int m = deg_x(f);
  std::vector<QPoly> out(static_cast<size_t>(std::max(m, -1) + 1));
  for (int j = 0; j <= f.degree(); ++j)
    for (int i = 0; i <= f[j].degree(); ++i)
      if (sgn(f[j][i]) != 0) out[i].set_coeff(j, f[j][i]);
  return QPoly2(std::move(out));
}

QPoly2 make_qpoly2(const std::vector<std::tuple<int, int, mpq_class>>& terms) {
  std::map<int, std::map<int, mpq_class>> acc;
  for (auto& [i, j, c] : terms) {
    if (i < 0 || j < 0) throw std::invalid_argument("negative exponent");
    acc[j][i] += c;
  }
  int n = acc.empty() ? -1 : acc.rbegin()->first;
  std::vector<QPoly> ys(static_cast<size_t>(n + 1));
  for (auto& [j, row] : acc) {
    QPoly q;
    for (auto& [i, c] : row) q.set_coeff(i, c);
    ys[j] = q;
  }
  return QPoly2(std::move(ys));
}

std::vector<mpq_class> coefficient_vector(const QPoly2& f) {
  std::vector<mpq_class> v;
  for (auto& fj : f.coeffs())
    for (auto& c : fj.coeffs())
      if (sgn(c) != 0) v.push_back(c);
  return v;
}

std::vector<mpq_class> coefficient_vector(const QPoly& f) {
  std::vector<mpq_class> v;
  for (auto& c : f.coeffs())
    if (sgn(c) != 0) v.push_back(c);
  return v;
}

}  // namespace cheval
