#include "cheval/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <random>

#include "cheval/integer.hpp"

namespace cheval {

namespace {

// ---------- polynomials over F_p, p < 2^31 ----------
using u64 = std::uint64_t;
using FpPoly = std::vector<u64>;

struct Fp {
  u64 p;
  u64 mul(u64 a, u64 b) const { return (a * b) % p; }
  u64 add(u64 a, u64 b) const { return (a + b) % p; }
  u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    a %= p;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const { return pow(a, p - 2); }

  static void trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  FpPoly mulp(const FpPoly& a, const FpPoly& b) const {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
      if (!a[i]) continue;
      for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    trim(r);
    return r;
  }
  FpPoly subp(FpPoly a, const FpPoly& b) const {
    if (b.size() > a.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] = sub(a[i], b[i]);
    trim(a);
    return a;
  }
  // a = q*b + r
  void divrem(const FpPoly& a, const FpPoly& b, FpPoly* q, FpPoly* r) const {
    FpPoly rem = a;
    int db = static_cast<int>(b.size()) - 1;
    u64 il = inv(b.back());
    FpPoly quo;
    if (static_cast<int>(rem.size()) - 1 >= db) quo.assign(rem.size() - b.size() + 1, 0);
    for (int i = static_cast<int>(rem.size()) - 1; i >= db; --i) {
      u64 c = mul(rem[i], il);
      if (!c) continue;
      quo[i - db] = c;
      for (int j = 0; j <= db; ++j) rem[i - db + j] = sub(rem[i - db + j], mul(c, b[j]));
    }
    rem.resize(std::min(rem.size(), static_cast<size_t>(db)));
    trim(rem);
    trim(quo);
    if (q) *q = std::move(quo);
    if (r) *r = std::move(rem);
  }
  FpPoly mod(const FpPoly& a, const FpPoly& b) const {
    FpPoly r;
    divrem(a, b, nullptr, &r);
    return r;
  }
  FpPoly quo(const FpPoly& a, const FpPoly& b) const {
    FpPoly q;
    divrem(a, b, &q, nullptr);
    return q;
  }
  FpPoly monic(FpPoly a) const {
    if (a.empty()) return a;
    u64 il = inv(a.back());
    for (auto& c : a) c = mul(c, il);
    return a;
  }
  FpPoly gcd(FpPoly a, FpPoly b) const {
    while (!b.empty()) {
      FpPoly r = mod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }
  // s*a + t*b = 1 for coprime a, b
  void xgcd(const FpPoly& a0, const FpPoly& b0, FpPoly& s, FpPoly& t) const {
    FpPoly a = a0, b = b0, s0{1}, s1, t0, t1{1};
    while (!b.empty()) {
      FpPoly q, r;
      divrem(a, b, &q, &r);
      a = std::move(b);
      b = std::move(r);
      FpPoly s2 = subp(s0, mulp(q, s1)), t2 = subp(t0, mulp(q, t1));
      s0 = std::move(s1);
      s1 = std::move(s2);
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    u64 il = inv(a.back());
    for (auto& c : s0) c = mul(c, il);
    for (auto& c : t0) c = mul(c, il);
    s = s0;
    t = t0;
  }
  FpPoly powmod(FpPoly base, u64 e, const FpPoly& m) const {
    FpPoly r{1};
    base = mod(base, m);
    while (e) {
      if (e & 1) r = mod(mulp(r, base), m);
      e >>= 1;
      if (e) base = mod(mulp(base, base), m);
    }
    return r;
  }
  FpPoly derivative(const FpPoly& a) const {
    FpPoly r;
    for (size_t i = 1; i < a.size(); ++i) r.push_back(mul(a[i], i % p));
    trim(r);
    return r;
  }
};

FpPoly reduce(const ZPoly& f, u64 p) {
  FpPoly r;
  mpz_class pp(static_cast<unsigned long>(p));
  for (auto& c : f.coeffs()) {
    mpz_class m = c % pp;
    if (m < 0) m += pp;
    r.push_back(m.get_ui());
  }
  Fp::trim(r);
  return r;
}

// distinct-degree factorization of a monic squarefree polynomial
std::vector<std::pair<FpPoly, int>> ddf(const Fp& F, FpPoly g) {
  std::vector<std::pair<FpPoly, int>> out;
  FpPoly x{0, 1};
  FpPoly h = x;
  int i = 1;
  while (2 * i <= static_cast<int>(g.size()) - 1) {
    h = F.powmod(h, F.p, g);
    FpPoly d = F.gcd(g, F.subp(h, x));
    if (d.size() > 1) {
      out.push_back({d, i});
      g = F.quo(g, d);
      h = F.mod(h, g);
    }
    ++i;
  }
  if (g.size() > 1) out.push_back({g, static_cast<int>(g.size()) - 1});
  return out;
}

void edf(const Fp& F, const FpPoly& g, int i, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  int d = static_cast<int>(g.size()) - 1;
  if (d == i) {
    out.push_back(g);
    return;
  }
  std::uniform_int_distribution<u64> dist(0, F.p - 1);
  while (true) {
    FpPoly a(static_cast<size_t>(d));
    for (auto& c : a) c = dist(rng);
    Fp::trim(a);
    if (a.size() < 2) continue;
    FpPoly t = F.mod(a, g), pw = t;
    for (int j = 1; j < i; ++j) {
      pw = F.powmod(pw, F.p, g);
      t = F.mod(F.mulp(t, pw), g);
    }
    FpPoly b = F.powmod(t, (F.p - 1) / 2, g);
    FpPoly bm1 = F.subp(b, FpPoly{1});
    FpPoly dd = F.gcd(g, bm1);
    int ddeg = static_cast<int>(dd.size()) - 1;
    if (ddeg > 0 && ddeg < d) {
      edf(F, dd, i, rng, out);
      edf(F, F.quo(g, dd), i, rng, out);
      return;
    }
  }
}

std::vector<FpPoly> factor_mod_p(const Fp& F, const FpPoly& f_monic) {
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ F.p);
  std::vector<FpPoly> out;
  for (auto& [g, i] : ddf(F, f_monic)) edf(F, g, i, rng, out);
  return out;
}

int count_factors_mod_p(const Fp& F, const FpPoly& f_monic) {
  int n = 0;
  for (auto& [g, i] : ddf(F, f_monic)) n += (static_cast<int>(g.size()) - 1) / i;
  return n;
}

// ---------- integer polynomials modulo p^k ----------
using ZVec = std::vector<mpz_class>;

ZVec zmod(ZVec a, const mpz_class& m) {
  for (auto& c : a) {
    c %= m;
    if (c < 0) c += m;
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}
ZVec zmul(const ZVec& a, const ZVec& b, const mpz_class& m) {
  if (a.empty() || b.empty()) return {};
  ZVec r(a.size() + b.size() - 1, mpz_class(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return zmod(std::move(r), m);
}
ZVec from_fp(const FpPoly& a) {
  ZVec r;
  for (auto c : a) r.emplace_back(static_cast<unsigned long>(c));
  return r;
}
FpPoly to_fp(const ZVec& a, u64 p) {
  FpPoly r;
  mpz_class pp(static_cast<unsigned long>(p));
  for (auto& c : a) {
    mpz_class m = c % pp;
    if (m < 0) m += pp;
    r.push_back(m.get_ui());
  }
  Fp::trim(r);
  return r;
}

// Lift f = A*B (mod p), A monic, lc(B) = lc(f), to modulus p^k.
void hensel_two(const Fp& F, const ZVec& f, ZVec& A, ZVec& B, int k) {
  mpz_class p(static_cast<unsigned long>(F.p));
  FpPoly a1 = to_fp(A, F.p), b1 = to_fp(B, F.p), s, t;
  F.xgcd(a1, b1, s, t);
  mpz_class q = p;
  for (int j = 1; j < k; ++j) {
    mpz_class q1 = q * p;
    ZVec prod = zmul(A, B, q1);
    ZVec diff = f;
    if (prod.size() > diff.size()) diff.resize(prod.size(), mpz_class(0));
    for (size_t i = 0; i < prod.size(); ++i) diff[i] -= prod[i];
    diff = zmod(diff, q1);
    FpPoly e;
    for (auto& c : diff) {
      mpz_class v = c / q;
      e.push_back(mpz_class(v % p).get_ui());
    }
    Fp::trim(e);
    if (!e.empty()) {
      FpPoly te = F.mulp(t, e);
      FpPoly a = F.mod(te, a1);
      FpPoly b = F.quo(F.subp(e, F.mulp(a, b1)), a1);
      ZVec az = from_fp(a), bz = from_fp(b);
      if (az.size() > A.size()) A.resize(az.size(), mpz_class(0));
      for (size_t i = 0; i < az.size(); ++i) A[i] += q * az[i];
      if (bz.size() > B.size()) B.resize(bz.size(), mpz_class(0));
      for (size_t i = 0; i < bz.size(); ++i) B[i] += q * bz[i];
      A = zmod(A, q1);
      B = zmod(B, q1);
    }
    q = q1;
  }
}

// Lift the factorization f = lc(f) * prod hs (mod p) to modulus p^k; returns
// monic factors modulo p^k.
std::vector<ZVec> hensel_multi(const Fp& F, const ZVec& f, const std::vector<FpPoly>& hs, int k,
                               const mpz_class& pk) {
  if (hs.size() == 1) {
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), f.back().get_mpz_t(), pk.get_mpz_t());
    ZVec r = f;
    for (auto& c : r) c *= inv;
    return {zmod(r, pk)};
  }
  size_t half = hs.size() / 2;
  std::vector<FpPoly> h1(hs.begin(), hs.begin() + half), h2(hs.begin() + half, hs.end());
  FpPoly a{1}, b{1};
  for (auto& h : h1) a = F.mulp(a, h);
  for (auto& h : h2) b = F.mulp(b, h);
  u64 lc = to_fp(ZVec{f.back()}, F.p).empty() ? 0 : to_fp(ZVec{f.back()}, F.p)[0];
  for (auto& c : b) c = F.mul(c, lc);
  ZVec A = from_fp(a), B = from_fp(b);
  B.back() = f.back();
  B = zmod(B, pk);
  A = zmod(A, pk);
  hensel_two(F, zmod(f, pk), A, B, k);
  auto r1 = hensel_multi(F, A, h1, k, pk);
  auto r2 = hensel_multi(F, B, h2, k, pk);
  r1.insert(r1.end(), r2.begin(), r2.end());
  return r1;
}

ZVec symmetric(ZVec a, const mpz_class& m) {
  mpz_class half = m / 2;
  for (auto& c : a) {
    c %= m;
    if (c < 0) c += m;
    if (c > half) c -= m;
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

ZPoly zvec_poly(const ZVec& v) { return ZPoly(v); }

bool divides_exactly(const ZPoly& g, const ZPoly& f, ZPoly& quotient) {
  // trailing and leading coefficient screens
  if (f.lead() % g.lead() != 0) return false;
  if (g[0] != 0 && f[0] % g[0] != 0) return false;
  auto [q, r] = divrem(to_qpoly(f), to_qpoly(g));
  if (!r.zero()) return false;
  for (auto& c : q.coeffs())
    if (c.get_den() != 1) return false;
  quotient = to_zpoly(q);
  return true;
}

ZPoly zprimitive(const ZPoly& g) { return to_zpoly(primitive_part(to_qpoly(g))); }

}  // namespace

std::vector<ZPoly> factor_squarefree_integer(const ZPoly& f_in, int degree_cap) {
  ZPoly f = f_in;
  int d = f.degree();
  if (d <= 0) return {};
  if (d == 1) return {f};
  if (d > degree_cap) throw std::runtime_error("factorization degree cap exceeded (degree " + std::to_string(d) + ")");

  // choose a good prime
  std::vector<long> candidates = primes_up_to(20000);
  u64 best_p = 0;
  int best_count = 1 << 30;
  int good = 0;
  for (long pl : candidates) {
    if (pl < 101) continue;
    u64 p = static_cast<u64>(pl);
    if (mpz_divisible_ui_p(f.lead().get_mpz_t(), p)) continue;
    Fp F{p};
    FpPoly fp = F.monic(reduce(f, p));
    if (F.gcd(fp, F.derivative(fp)).size() != 1) continue;
    int c = count_factors_mod_p(F, fp);
    if (c < best_count) {
      best_count = c;
      best_p = p;
    }
    if (best_count == 1 || ++good >= 6) break;
  }
  if (best_p == 0) throw std::runtime_error("no suitable prime for factorization");
  if (best_count == 1) return {f};

  Fp F{best_p};
  std::vector<FpPoly> hs = factor_mod_p(F, F.monic(reduce(f, best_p)));

  // coefficient bound for lc(f) * (factor / lc(factor))
  mpz_class norm2 = 0;
  for (auto& c : f.coeffs()) norm2 += c * c;
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), norm2.get_mpz_t());
  root += 1;
  mpz_class bound = abs(f.lead()) * ipow(2, static_cast<unsigned long>(d)) * root * 2;
  mpz_class p(static_cast<unsigned long>(best_p)), pk = p;
  int k = 1;
  while (pk <= bound) {
    pk *= p;
    ++k;
  }
  ZVec fz(f.coeffs().begin(), f.coeffs().end());
  std::vector<ZVec> lifted = hensel_multi(F, fz, hs, k, pk);

  std::vector<ZPoly> out;
  ZPoly rest = f;
  std::vector<ZVec> pool = lifted;
  size_t s = 1;
  while (2 * s <= pool.size()) {
    bool found = false;
    std::vector<size_t> idx(s);
    for (size_t i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      ZVec g{rest.lead()};
      for (size_t i : idx) g = zmul(g, pool[i], pk);
      ZPoly cand = zprimitive(zvec_poly(symmetric(g, pk)));
      ZPoly quotient;
      if (cand.degree() > 0 && divides_exactly(cand, rest, quotient)) {
        out.push_back(cand);
        rest = quotient;
        std::vector<ZVec> np;
        for (size_t i = 0; i < pool.size(); ++i)
          if (std::find(idx.begin(), idx.end(), i) == idx.end()) np.push_back(pool[i]);
        pool = std::move(np);
        found = true;
        break;
      }
      // next combination
      int pos = static_cast<int>(s) - 1;
      while (pos >= 0 && idx[pos] == pool.size() - s + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (size_t j = pos + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (rest.degree() > 0) out.push_back(zprimitive(rest));
  return out;
}

std::vector<Factor> factor_rational_poly(const QPoly& F, int degree_cap) {
  if (F.zero()) throw std::invalid_argument("factor_rational_poly: zero polynomial");
  std::vector<Factor> out;
  if (F.degree() <= 0) return out;
  auto sqf = squarefree_decomposition(F);
  for (size_t i = 0; i < sqf.size(); ++i) {
    if (sqf[i].degree() <= 0) continue;
    QPoly g = primitive_part(sqf[i]);
    int mult = static_cast<int>(i) + 1;
    if (sgn(g[0]) == 0) {
      out.push_back({QPoly{0, 1}, mult});
      g = exact_div(g, QPoly{0, 1});
      if (g.degree() <= 0) continue;
    }
    for (auto& h : factor_squarefree_integer(to_zpoly(g), degree_cap)) out.push_back({to_qpoly(h), mult});
  }
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) {
    if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
    for (int i = a.poly.degree(); i >= 0; --i)
      if (a.poly[i] != b.poly[i]) return a.poly[i] < b.poly[i];
    return a.multiplicity < b.multiplicity;
  });
  return out;
}

bool is_irreducible(const QPoly& F, int degree_cap) {
  if (F.degree() <= 0) return false;
  auto fs = factor_rational_poly(F, degree_cap);
  return fs.size() == 1 && fs[0].multiplicity == 1;
}

}  // namespace cheval
