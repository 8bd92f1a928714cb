#include "cheval/maximal_order.hpp"

#include <random>
#include <stdexcept>

#include "cheval/factor.hpp"
#include "cheval/integer.hpp"

namespace cheval {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using UVec = std::vector<u64>;

u64 mulm(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }
u64 addm(u64 a, u64 b, u64 p) { return (a + b) % p; }
u64 subm(u64 a, u64 b, u64 p) { return (a + p - b) % p; }
u64 powm(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  while (e) {
    if (e & 1) r = mulm(r, a, p);
    a = mulm(a, a, p);
    e >>= 1;
  }
  return r;
}
u64 invm(u64 a, u64 p) { return powm(a, p - 2, p); }

u64 to_u64_mod(const mpz_class& x, u64 p) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), mpz_class(static_cast<unsigned long>(p)).get_mpz_t());
  return r.get_ui();
}

u64 small_prime(const mpz_class& p) {
  if (p > mpz_class(1) << 62 || p < 2) throw std::runtime_error("prime too large for residue arithmetic");
  return p.get_ui();
}

QVector pad(const QPoly& a, int d) {
  QVector v(d);
  for (int i = 0; i <= a.degree() && i < d; ++i) v[i] = a[i];
  return v;
}
QPoly from_coords(const QVector& v) { return QPoly(std::vector<mpq_class>(v)); }

QVector mul_power(const QPoly& g, const QVector& a, const QVector& b) {
  return pad((from_coords(a) * from_coords(b)) % g, g.degree());
}

std::vector<std::vector<ZVector>> structure_constants(const QPoly& g, const QMatrix& B, const QMatrix& Binv) {
  int d = g.degree();
  std::vector<std::vector<ZVector>> C(d, std::vector<ZVector>(d));
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      QVector c = row_times(mul_power(g, B[i], B[j]), Binv);
      ZVector z(d);
      for (int k = 0; k < d; ++k) {
        if (c[k].get_den() != 1) throw std::logic_error("order basis not closed under multiplication");
        z[k] = c[k].get_num();
      }
      C[i][j] = z;
      C[j][i] = z;
    }
  return C;
}

struct ModP {
  u64 p;
  int d;
  std::vector<std::vector<UVec>> C;
  ModP(const std::vector<std::vector<ZVector>>& Cz, u64 p_) : p(p_), d(static_cast<int>(Cz.size())) {
    C.assign(d, std::vector<UVec>(d, UVec(d)));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) C[i][j][k] = to_u64_mod(Cz[i][j][k], p);
  }
  UVec mul(const UVec& x, const UVec& y) const {
    UVec r(d, 0);
    for (int i = 0; i < d; ++i) {
      if (!x[i]) continue;
      for (int j = 0; j < d; ++j) {
        if (!y[j]) continue;
        u64 t = mulm(x[i], y[j], p);
        for (int k = 0; k < d; ++k)
          if (C[i][j][k]) r[k] = addm(r[k], mulm(t, C[i][j][k], p), p);
      }
    }
    return r;
  }
  UVec pow(UVec x, u64 e, const UVec& one) const {
    UVec r = one;
    while (e) {
      if (e & 1) r = mul(r, x);
      e >>= 1;
      if (e) x = mul(x, x);
    }
    return r;
  }
};

UVec unit(int d, int i) {
  UVec v(d, 0);
  v[i] = 1;
  return v;
}

ZMatrix with_p_rows(const std::vector<UVec>& rows, int d, u64 p) {
  ZMatrix m;
  for (int i = 0; i < d; ++i) {
    ZVector v(d);
    v[i] = static_cast<unsigned long>(p);
    m.push_back(v);
  }
  for (auto& r : rows) {
    ZVector v(d);
    for (int k = 0; k < d; ++k) v[k] = static_cast<unsigned long>(r[k]);
    m.push_back(v);
  }
  return hermite_normal_form(m);
}

UVec one_coords(const MaximalOrder& O, u64 p) {
  QVector e(O.degree());
  e[0] = 1;
  QVector c = O.to_order_coords(e);
  UVec r(O.degree());
  for (int k = 0; k < O.degree(); ++k) r[k] = to_u64_mod(c[k].get_num(), p);
  return r;
}

// Radical of pO as an HNF basis in order coordinates.
ZMatrix radical(const ModP& M, const UVec& one) {
  int d = M.d;
  u64 p = M.p;
  std::vector<UVec> rows;
  if (p > static_cast<u64>(d)) {
    UVec tr(d, 0);
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i) tr[k] = addm(tr[k], M.C[k][i][i], p);
    std::vector<UVec> T(d, UVec(d, 0));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) T[i][j] = addm(T[i][j], mulm(M.C[i][j][k], tr[k], p), p);
    rows = left_kernel_mod_p(T, p);
  } else {
    u64 q = p;
    while (q < static_cast<u64>(d)) q *= p;
    std::vector<UVec> F;
    for (int i = 0; i < d; ++i) F.push_back(M.pow(unit(d, i), q, one));
    rows = left_kernel_mod_p(F, p);
  }
  return with_p_rows(rows, d, p);
}

ZVector mul_int(const std::vector<std::vector<ZVector>>& C, const ZVector& a, const ZVector& b) {
  int d = static_cast<int>(a.size());
  ZVector r(d);
  for (int i = 0; i < d; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (int j = 0; j < d; ++j) {
      if (sgn(b[j]) == 0) continue;
      mpz_class t = a[i] * b[j];
      for (int k = 0; k < d; ++k)
        if (sgn(C[i][j][k])) r[k] += t * C[i][j][k];
    }
  }
  return r;
}

QMatrix to_q(const ZMatrix& m) {
  QMatrix r;
  for (auto& row : m) {
    QVector v;
    for (auto& x : row) v.push_back(mpq_class(x));
    r.push_back(v);
  }
  return r;
}

// One enlargement step of Round 2 at p; returns false when O is p-maximal.
bool enlarge(const QPoly& g, QMatrix& B, QMatrix& Binv, u64 p) {
  int d = g.degree();
  auto Cz = structure_constants(g, B, Binv);
  ModP M(Cz, p);
  QVector e0(d);
  e0[0] = 1;
  QVector onec = row_times(e0, Binv);
  UVec one(d);
  for (int k = 0; k < d; ++k) one[k] = to_u64_mod(onec[k].get_num(), p);
  ZMatrix I = radical(M, one);
  auto Iinv = inverse(to_q(I));
  if (!Iinv) throw std::logic_error("radical is not of full rank");
  std::vector<UVec> rows(d, UVec(static_cast<size_t>(d) * d));
  for (int i = 0; i < d; ++i) {
    ZVector ei(d);
    ei[i] = 1;
    for (int j = 0; j < d; ++j) {
      ZVector prod = mul_int(Cz, ei, I[j]);
      QVector pq;
      for (auto& x : prod) pq.push_back(mpq_class(x));
      QVector c = row_times(pq, *Iinv);
      for (int k = 0; k < d; ++k) {
        if (c[k].get_den() != 1) throw std::logic_error("radical is not an ideal");
        rows[i][static_cast<size_t>(j) * d + k] = to_u64_mod(c[k].get_num(), p);
      }
    }
  }
  auto ker = left_kernel_mod_p(rows, p);
  if (ker.empty()) return false;
  ZMatrix H = with_p_rows(ker, d, p);
  QMatrix Hq = to_q(H);
  for (auto& r : Hq)
    for (auto& x : r) x /= static_cast<unsigned long>(p);
  B = multiply(Hq, B);
  Binv = *inverse(B);
  return true;
}

// ---- F_p polynomial helpers for root finding ----
using PP = UVec;  // coefficients low to high
void ptrim(PP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
PP pmod(PP a, const PP& b, u64 p) {
  ptrim(a);
  u64 inv = invm(b.back(), p);
  while (a.size() >= b.size()) {
    u64 c = mulm(a.back(), inv, p);
    size_t s = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[s + i] = subm(a[s + i], mulm(c, b[i], p), p);
    ptrim(a);
  }
  return a;
}
PP pmulmod(const PP& a, const PP& b, const PP& m, u64 p) {
  if (a.empty() || b.empty()) return {};
  PP r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = addm(r[i + j], mulm(a[i], b[j], p), p);
  return pmod(r, m, p);
}
PP ppowmod(PP b, u64 e, const PP& m, u64 p) {
  PP r{1};
  b = pmod(b, m, p);
  while (e) {
    if (e & 1) r = pmulmod(r, b, m, p);
    e >>= 1;
    if (e) b = pmulmod(b, b, m, p);
  }
  return r;
}
PP pgcd(PP a, PP b, u64 p) {
  ptrim(a);
  ptrim(b);
  while (!b.empty()) {
    PP r = pmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    u64 inv = invm(a.back(), p);
    for (auto& x : a) x = mulm(x, inv, p);
  }
  return a;
}
PP pdiv(PP a, const PP& b, u64 p) {
  ptrim(a);
  PP q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  u64 inv = invm(b.back(), p);
  while (a.size() >= b.size()) {
    u64 c = mulm(a.back(), inv, p);
    size_t s = a.size() - b.size();
    q[s] = c;
    for (size_t i = 0; i < b.size(); ++i) a[s + i] = subm(a[s + i], mulm(c, b[i], p), p);
    ptrim(a);
  }
  return q;
}

// Roots of a monic polynomial over F_p that splits into distinct linear factors.
void split_roots(const PP& f, u64 p, std::mt19937_64& rng, std::vector<u64>& out) {
  size_t deg = f.size() - 1;
  if (deg == 0) return;
  if (deg == 1) {
    out.push_back(subm(0, f[0], p));
    return;
  }
  if (p == 2) {
    for (u64 c = 0; c < 2; ++c) {
      u64 v = 0;
      for (size_t i = f.size(); i-- > 0;) v = addm(mulm(v, c, p), f[i], p);
      if (v == 0) out.push_back(c);
    }
    return;
  }
  while (true) {
    u64 a = rng() % p;
    PP g = ppowmod(PP{a, 1}, (p - 1) / 2, f, p);
    if (g.empty()) g = {p - 1};
    else g[0] = subm(g[0], 1, p);
    PP h = pgcd(f, g, p);
    if (h.size() > 1 && h.size() < f.size()) {
      split_roots(h, p, rng, out);
      split_roots(pdiv(f, h, p), p, rng, out);
      return;
    }
  }
}

}  // namespace

QVector MaximalOrder::to_order_coords(const QVector& power_coords) const { return row_times(power_coords, basis_inv); }
QVector MaximalOrder::to_power_coords(const QVector& order_coords) const { return row_times(order_coords, basis); }
ZVector MaximalOrder::multiply(const ZVector& a, const ZVector& b) const { return mul_int(mult, a, b); }

MaximalOrder maximal_order(const QPoly& minpoly_in) {
  if (minpoly_in.degree() < 1) throw std::invalid_argument("not irreducible");
  if (!is_irreducible(minpoly_in, std::max(kFactorDegreeCap, minpoly_in.degree())))
    throw std::invalid_argument("not irreducible");
  MaximalOrder O;
  O.minpoly = minpoly_in.monic();
  int d = O.minpoly.degree();
  O.scale = integral_scaling(O.minpoly, O.integral_minpoly);
  QMatrix B(d, QVector(d));
  mpq_class s = 1;
  for (int i = 0; i < d; ++i) {
    B[i][i] = s;
    s *= O.scale;
  }
  QMatrix Binv = *inverse(B);
  mpz_class dphi = discriminant(O.integral_minpoly).get_num();
  auto fac = factor_integer(dphi);
  for (auto& [p, k] : fac) {
    if (k < 2) continue;
    u64 pu = small_prime(p);
    while (enlarge(O.minpoly, B, Binv, pu)) {
    }
  }
  O.basis = B;
  O.basis_inv = Binv;
  O.mult = structure_constants(O.minpoly, B, Binv);
  // det of the basis in t-coordinates = det(B) / scale^(d(d-1)/2)
  mpq_class det = determinant(B) / mpq_class(ipow(O.scale, static_cast<unsigned long>(d) * (d - 1) / 2));
  mpq_class idx = 1 / abs(det);
  if (idx.get_den() != 1) throw std::logic_error("order index is not integral");
  O.index = idx.get_num();
  O.discriminant = dphi / (O.index * O.index);
  for (auto& [p, k] : fac)
    if (valuation(O.discriminant, p) > 0) O.ramified_primes.push_back(p);
  return O;
}

std::vector<PrimeIdeal> decompose_prime(const MaximalOrder& O, const mpz_class& pz) {
  u64 p = small_prime(pz);
  int d = O.degree();
  ModP M(O.mult, p);
  UVec one = one_coords(O, p);
  std::mt19937_64 rng(0x5eed ^ p);
  std::vector<ZMatrix> work{radical(M, one)}, primes;
  while (!work.empty()) {
    ZMatrix J = work.back();
    work.pop_back();
    std::vector<int> qpos;
    for (int i = 0; i < d; ++i)
      if (J[i][i] != 1) qpos.push_back(i);
    auto reduce = [&](UVec v) {
      for (int i = 0; i < d; ++i) {
        if (J[i][i] != 1 || v[i] == 0) continue;
        u64 c = v[i];
        for (int k = i; k < d; ++k) v[k] = subm(v[k], mulm(c, to_u64_mod(J[i][k], p), p), p);
      }
      return v;
    };
    auto restrict_q = [&](const UVec& v) {
      UVec r;
      for (int i : qpos) r.push_back(v[i]);
      return r;
    };
    std::vector<UVec> F;
    for (int i : qpos) {
      UVec v = restrict_q(reduce(M.pow(unit(d, i), p, one)));
      UVec ei = restrict_q(unit(d, i));
      for (size_t k = 0; k < v.size(); ++k) v[k] = subm(v[k], ei[k], p);
      F.push_back(v);
    }
    auto ker = left_kernel_mod_p(F, p);
    if (ker.size() <= 1) {
      primes.push_back(J);
      continue;
    }
    UVec oneq = restrict_q(reduce(one));
    UVec x;
    for (auto& kv : ker) {
      // skip multiples of 1
      size_t piv = 0;
      while (piv < oneq.size() && oneq[piv] == 0) ++piv;
      u64 c = mulm(kv[piv], invm(oneq[piv], p), p);
      bool multiple = true;
      for (size_t k = 0; k < kv.size(); ++k)
        if (kv[k] != mulm(c, oneq[k], p)) multiple = false;
      if (!multiple) {
        x.assign(d, 0);
        for (size_t k = 0; k < qpos.size(); ++k) x[qpos[k]] = kv[k];
        break;
      }
    }
    // minimal polynomial of x in O/J
    std::vector<UVec> pw{restrict_q(reduce(one))};
    PP minp;
    UVec cur = one;
    while (true) {
      cur = reduce(M.mul(cur, x));
      UVec target = restrict_q(cur);
      // solve sum c_i pw_i = target over F_p via kernel of [pw; target]
      std::vector<UVec> rows = pw;
      rows.push_back(target);
      auto k2 = left_kernel_mod_p(rows, p);
      if (!k2.empty()) {
        const UVec& kv = k2[0];
        u64 lead = kv.back();
        u64 il = invm(lead, p);
        minp.assign(kv.size(), 0);
        for (size_t i = 0; i < kv.size(); ++i) minp[i] = mulm(kv[i], il, p);
        break;
      }
      pw.push_back(target);
    }
    std::vector<u64> roots;
    split_roots(minp, p, rng, roots);
    for (u64 c : roots) {
      std::vector<UVec> gens;
      UVec xc = x;
      for (int k = 0; k < d; ++k) xc[k] = subm(xc[k], mulm(c, one[k], p), p);
      for (int i = 0; i < d; ++i) gens.push_back(M.mul(xc, unit(d, i)));
      for (int i = 0; i < d; ++i) {
        if (J[i][i] != 1) continue;
        UVec r(d);
        for (int k = 0; k < d; ++k) r[k] = to_u64_mod(J[i][k], p);
        gens.push_back(r);
      }
      work.push_back(with_p_rows(gens, d, p));
    }
  }
  std::vector<PrimeIdeal> out;
  for (auto& J : primes) {
    PrimeIdeal P;
    P.p = pz;
    P.hnf = J;
    P.f = 0;
    for (int i = 0; i < d; ++i)
      if (J[i][i] != 1) ++P.f;
    // anti-uniformizer: y with y * P subset of pO, y not in pO
    std::vector<UVec> rows(d, UVec(static_cast<size_t>(d) * d));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        UVec pj(d);
        for (int k = 0; k < d; ++k) pj[k] = to_u64_mod(J[j][k], p);
        UVec prod = M.mul(unit(d, i), pj);
        for (int k = 0; k < d; ++k) rows[i][static_cast<size_t>(j) * d + k] = prod[k];
      }
    auto ker = left_kernel_mod_p(rows, p);
    if (ker.empty()) throw std::logic_error("no anti-uniformizer found");
    P.anti.assign(d, 0);
    for (int k = 0; k < d; ++k) P.anti[k] = static_cast<unsigned long>(ker[0][k]);
    out.push_back(P);
  }
  for (auto& P : out) {
    QVector pc(d);
    pc[0] = pz;
    P.e = valuation(O, P, pc);
  }
  int total = 0;
  for (auto& P : out) total += P.e * P.f;
  if (total != d) throw std::logic_error("prime decomposition does not satisfy sum e f = degree");
  return out;
}

int valuation(const MaximalOrder& O, const PrimeIdeal& P, const QVector& power_coords) {
  QVector c = O.to_order_coords(power_coords);
  mpz_class D = 1;
  bool nonzero = false;
  for (auto& x : c) {
    mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), x.get_den_mpz_t());
    if (sgn(x)) nonzero = true;
  }
  if (!nonzero) throw std::domain_error("valuation of zero");
  ZVector y;
  for (auto& x : c) y.push_back(mpq_class(x * D).get_num());
  int k = 0;
  while (true) {
    ZVector z = O.multiply(y, P.anti);
    bool divisible = true;
    for (auto& t : z)
      if (!mpz_divisible_p(t.get_mpz_t(), P.p.get_mpz_t())) {
        divisible = false;
        break;
      }
    if (!divisible) break;
    for (auto& t : z) mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), P.p.get_mpz_t());
    y = std::move(z);
    ++k;
  }
  int vD = sgn(D) ? valuation(D, P.p) : 0;
  return k - P.e * vD;
}

mpq_class ideal_norm(const MaximalOrder& O, const std::vector<QVector>& gens) {
  int d = O.degree();
  std::vector<QVector> oc;
  mpz_class D = 1;
  for (auto& g : gens) {
    QVector c = O.to_order_coords(g);
    for (auto& x : c) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), x.get_den_mpz_t());
    oc.push_back(c);
  }
  ZMatrix rows;
  for (auto& c : oc) {
    ZVector y;
    for (auto& x : c) y.push_back(mpq_class(x * D).get_num());
    for (int i = 0; i < d; ++i) {
      ZVector ei(d);
      ei[i] = 1;
      rows.push_back(O.multiply(y, ei));
    }
  }
  ZMatrix H = hermite_normal_form(rows);
  if (static_cast<int>(H.size()) != d) throw std::domain_error("ideal generated by zero");
  mpz_class det = 1;
  for (int i = 0; i < d; ++i) det *= H[i][i];
  return mpq_class(det) / mpq_class(ipow(D, d));
}

}  // namespace cheval
