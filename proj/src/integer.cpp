#include "cheval/integer.hpp"

#include <cmath>
#include <stdexcept>

namespace cheval {

std::vector<long> primes_up_to(long n) {
  std::vector<long> out;
  if (n < 2) return out;
  std::vector<bool> composite(static_cast<size_t>(n) + 1, false);
  for (long i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (long j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

bool is_probable_prime(const mpz_class& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

namespace {

mpz_class pollard_brent(const mpz_class& n, unsigned long seed) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  mpz_class y = seed % n, c = (seed * 7 + 1) % n, m = 64;
  mpz_class g = 1, r = 1, q = 1, x, ys;
  while (g == 1) {
    x = y;
    for (mpz_class i = 0; i < r; ++i) y = (y * y + c) % n;
    mpz_class k = 0;
    while (k < r && g == 1) {
      ys = y;
      mpz_class lim = (m < r - k) ? m : mpz_class(r - k);
      for (mpz_class i = 0; i < lim; ++i) {
        y = (y * y + c) % n;
        mpz_class d = x - y;
        q = (q * abs(d)) % n;
      }
      g = gcd(q, n);
      k += m;
    }
    r *= 2;
    if (r > 1 << 26) return n;
  }
  if (g == n) {
    do {
      ys = (ys * ys + c) % n;
      g = gcd(mpz_class(abs(x - ys)), n);
    } while (g == 1);
  }
  return g;
}

void factor_rec(const mpz_class& n, std::map<mpz_class, int>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    out[n]++;
    return;
  }
  mpz_class root;
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    std::map<mpz_class, int> sub;
    factor_rec(root, sub);
    for (auto& [p, e] : sub) out[p] += 2 * e;
    return;
  }
  for (unsigned long seed = 2;; ++seed) {
    mpz_class d = pollard_brent(n, seed);
    if (d != 1 && d != n) {
      factor_rec(d, out);
      factor_rec(n / d, out);
      return;
    }
    if (seed > 200) throw std::runtime_error("integer factorization failed");
  }
}

}  // namespace

std::map<mpz_class, int> factor_integer(const mpz_class& n_in) {
  if (n_in == 0) throw std::invalid_argument("factor_integer: zero");
  mpz_class n = abs(n_in);
  std::map<mpz_class, int> out;
  for (unsigned long p = 2; p < 20000; p += (p == 2 ? 1 : 2)) {
    if (n == 1) break;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      int e = 0;
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        ++e;
      }
      out[mpz_class(p)] = e;
    }
    if (mpz_class(p) * p > n) break;
  }
  if (n > 1) factor_rec(n, out);
  return out;
}

std::vector<mpz_class> prime_divisors(const mpz_class& n) {
  std::vector<mpz_class> out;
  for (auto& [p, e] : factor_integer(n)) out.push_back(p);
  return out;
}

int valuation(const mpz_class& n, const mpz_class& p) {
  if (n == 0) throw std::invalid_argument("valuation of zero");
  return static_cast<int>(mpz_remove(mpz_class().get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

int valuation(const mpq_class& q, const mpz_class& p) {
  return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

long double log_abs(const mpz_class& x) {
  if (x == 0) throw std::invalid_argument("log of zero");
  long e = 0;
  double d = mpz_get_d_2exp(&e, x.get_mpz_t());
  // d carries 53 bits; refine with the next limb of the mantissa when available
  long double ld = std::fabs(d);
  size_t bits = mpz_sizeinbase(x.get_mpz_t(), 2);
  if (bits > 53) {
    mpz_class a = abs(x);
    long shift = static_cast<long>(bits) - 64;
    mpz_class top;
    if (shift > 0) mpz_fdiv_q_2exp(top.get_mpz_t(), a.get_mpz_t(), shift);
    else mpz_mul_2exp(top.get_mpz_t(), a.get_mpz_t(), -shift);
    long double t = 0;
    size_t n = mpz_size(top.get_mpz_t());
    for (size_t i = n; i-- > 0;) t = t * 18446744073709551616.0L + static_cast<long double>(mpz_getlimbn(top.get_mpz_t(), i));
    return std::log(t) + static_cast<long double>(shift) * std::log(2.0L);
  }
  return std::log(ld) + static_cast<long double>(e) * std::log(2.0L);
}

long double log_abs(const mpq_class& x) { return log_abs(x.get_num()) - log_abs(x.get_den()); }

mpz_class ipow(const mpz_class& b, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

mpq_class qpow(const mpq_class& b, long e) {
  if (e < 0) return qpow(1 / b, -e);
  mpq_class r(ipow(b.get_num(), e), ipow(b.get_den(), e));
  return r;
}

long ext_gcd(long a, long b, long& u, long& v) {
  long u0 = 1, v0 = 0, u1 = 0, v1 = 1;
  while (b != 0) {
    long q = a / b, t = a - q * b;
    a = b;
    b = t;
    t = u0 - q * u1;
    u0 = u1;
    u1 = t;
    t = v0 - q * v1;
    v0 = v1;
    v1 = t;
  }
  if (a < 0) {
    a = -a;
    u0 = -u0;
    v0 = -v0;
  }
  u = u0;
  v = v0;
  return a;
}

}  // namespace cheval
