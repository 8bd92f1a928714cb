#include "cheval/puiseux.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "cheval/cw_bounds.hpp"
#include "cheval/integer.hpp"

namespace cheval {

// ---- centers ----

CenterPoint CenterPoint::rational(const mpq_class& a) { return {NumberField::rationals(), NFElem(a)}; }

CenterPoint CenterPoint::algebraic(const QPoly& minpoly) {
  if (minpoly.degree() < 1) throw std::invalid_argument("center minimal polynomial is constant");
  if (minpoly.degree() == 1) {
    QPoly g = minpoly.monic();
    return rational(-g[0]);
  }
  FieldPtr K = NumberField::create(minpoly);
  return {K, NFElem::generator(K)};
}

QPoly CenterPoint::minpoly() const {
  if (alpha.is_rational()) return QPoly{-alpha.rational_value(), mpq_class(1)};
  return alpha.minpoly();
}

namespace {

int multiplicity_of(QPoly F, const QPoly& g) {
  int k = 0;
  while (!F.zero() && F.degree() >= g.degree()) {
    auto [q, r] = divrem(F, g);
    if (!r.zero()) break;
    ++k;
    F = q;
  }
  return k;
}

}  // namespace

std::pair<int, int> center_orders(const PlaneCurveModel& M, const CenterPoint& c) {
  QPoly g = c.minpoly();
  return {multiplicity_of(M.f0(), g), multiplicity_of(M.R(), g)};
}

int default_truncation(const PlaneCurveModel& M, const CenterPoint& c) {
  int mu = center_orders(M, c).second;
  return std::max(M.n() * mu, 2 * mu) + 4;
}

NFElem PuiseuxBranch::coeff(int k) const {
  if (k < -k0 || k > N) return NFElem();
  return a[static_cast<size_t>(k + k0)];
}

// ---- truncated series arithmetic over a number field ----

namespace {

NFPoly truncate(const NFPoly& p, int D) { return D < 0 ? p : p.truncated(D); }

NFPoly mul_trunc(const NFPoly& a, const NFPoly& b, int D) {
  if (a.zero() || b.zero()) return NFPoly();
  int da = a.degree(), db = b.degree();
  int top = da + db;
  if (D >= 0) top = std::min(top, D - 1);
  if (top < 0) return NFPoly();
  std::vector<NFElem> r(static_cast<size_t>(top) + 1);
  for (int i = 0; i <= da && i <= top; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j <= db && i + j <= top; ++j)
      if (!b[j].is_zero()) r[i + j] = r[i + j] + a[i] * b[j];
  }
  return NFPoly(std::move(r));
}

NFPoly ramify(const NFPoly& p, int q) {
  if (q == 1 || p.zero()) return p;
  std::vector<NFElem> r(static_cast<size_t>(p.degree()) * q + 1);
  for (int i = 0; i <= p.degree(); ++i) r[static_cast<size_t>(i) * q] = p[i];
  return NFPoly(std::move(r));
}

NFPoly map_poly(const NFPoly& p, const NFElem& g) {
  return p.map([&](const NFElem& c) { return c.mapped(g); });
}

NFPoly2 map_poly2(const NFPoly2& H, const NFElem& g) {
  return H.map([&](const NFPoly& c) { return map_poly(c, g); });
}

NFPoly2 ramify2(const NFPoly2& H, int q) {
  return H.map([&](const NFPoly& c) { return ramify(c, q); });
}

// H(T, Z + s) modulo T^D (no truncation for D < 0).
NFPoly2 shift_z(const NFPoly2& H, const NFPoly& s, int D) {
  std::vector<NFPoly> R;
  for (int j = H.degree(); j >= 0; --j) {
    std::vector<NFPoly> next(R.size() + 1);
    for (size_t i = 0; i < R.size(); ++i) {
      next[i + 1] = next[i + 1] + R[i];
      next[i] = next[i] + mul_trunc(R[i], s, D);
    }
    next[0] = next[0] + truncate(H[j], D);
    R = std::move(next);
  }
  return NFPoly2(std::move(R));
}

struct Node {
  FieldPtr L;
  NFElem alpha;
  int e = 1;
  NFPoly2 H;  // W = P + Z, H(T, Z) = 0
  NFPoly P;
  mpq_class w_prev;
  int cycles = 1;
};

struct Expander {
  int n, u, N, cap;
  std::vector<Node> done;

  void check_cap(const FieldPtr& L) const {
    if (L->degree() > cap) throw std::runtime_error("field tower too large");
  }

  static void remap(Node& nd, const Extension& E) {
    nd.L = E.L;
    nd.alpha = nd.alpha.mapped(E.base_generator);
    nd.H = map_poly2(nd.H, E.base_generator);
    nd.P = map_poly(nd.P, E.base_generator);
  }

  // Extends nd.L by a root of G (irreducible over nd.L) and returns the root.
  NFElem adjoin(Node& nd, const NFPoly& G) const {
    if (G.degree() == 1) return -G[0] / G[1];
    Extension E = extend(nd.L, G);
    check_cap(E.L);
    NFElem r = E.root;
    remap(nd, E);
    return r;
  }

  void run(Node nd, bool regular) {
    if (regular) {
      finish(std::move(nd));
      return;
    }
    const NFPoly2& H = nd.H;
    int jmin = 0;
    while (jmin <= H.degree() && H[jmin].zero()) ++jmin;
    if (jmin > 1) throw std::logic_error("repeated root in the Puiseux recursion");
    if (jmin == 1) finish(nd);  // Z = 0 is an exact root
    // lower convex hull of (j, ord H_j)
    std::vector<std::pair<int, int>> pts;
    for (int j = jmin; j <= H.degree(); ++j)
      if (!H[j].zero()) pts.emplace_back(j, H[j].order());
    std::vector<std::pair<int, int>> hull;
    for (auto& pt : pts) {
      while (hull.size() >= 2) {
        auto& a = hull[hull.size() - 2];
        auto& b = hull.back();
        // drop b if it lies on or above segment a -> pt
        long cross = static_cast<long>(b.first - a.first) * (pt.second - a.second) -
                     static_cast<long>(b.second - a.second) * (pt.first - a.first);
        if (cross <= 0) hull.pop_back();
        else break;
      }
      hull.push_back(pt);
    }
    for (size_t s = 0; s + 1 < hull.size(); ++s) {
      auto [j1, v1] = hull[s];
      auto [j2, v2] = hull[s + 1];
      mpq_class w(v1 - v2, j2 - j1);
      w.canonicalize();
      if (w <= nd.w_prev) continue;
      int p = static_cast<int>(w.get_num().get_si());
      int q = static_cast<int>(w.get_den().get_si());
      // psi(z) = sum over edge points of lc(H_j) z^{(j - j1)/q}
      std::vector<NFElem> psi(static_cast<size_t>((j2 - j1) / q) + 1);
      for (int j = j1; j <= j2; ++j) {
        if (H[j].zero()) continue;
        mpq_class lhs = mpq_class(H[j].order()) + w * j;
        if (lhs != mpq_class(v1) + w * j1) continue;
        psi[static_cast<size_t>((j - j1) / q)] = H[j][H[j].order()];
      }
      NFPoly Psi(psi);
      for (auto& fac : factor_over(nd.L, Psi)) {
        Node child = nd;
        NFElem z = adjoin(child, fac.poly);
        NFElem c = z;
        if (q > 1) {
          std::vector<NFElem> g(static_cast<size_t>(q) + 1);
          g[0] = -z;
          g[static_cast<size_t>(q)] = NFElem(1);
          auto roots = factor_over(child.L, NFPoly(g));
          c = adjoin(child, roots.front().poly);
        }
        child.e = nd.e * q;
        child.H = shift_z(ramify2(child.H, q), NFPoly::monomial(c, p), -1);
        child.P = ramify(child.P, q) + NFPoly::monomial(c, p);
        child.w_prev = p;
        child.cycles = nd.cycles * fac.poly.degree();
        run(std::move(child), fac.multiplicity == 1);
      }
    }
  }

  // One root of H has valuation above w_prev and the rest lie at or below it.
  void finish(Node nd) {
    int W_max = N + u * nd.e;
    if (nd.H.degree() < 1 || nd.H[1].zero()) throw std::logic_error("regular Puiseux node without a linear term");
    int v1 = nd.H[1].order();
    int D = v1 + W_max + 1;
    nd.H = nd.H.map([&](const NFPoly& c) { return truncate(c, D); });
    for (;;) {
      const NFPoly& H0 = nd.H.coeff(0);
      if (H0.zero()) break;
      int v0 = H0.order();
      int w = v0 - v1;
      if (mpq_class(w) <= nd.w_prev) throw std::logic_error("Puiseux exponent did not increase");
      if (w > W_max) break;
      NFElem c = -H0[v0] / nd.H[1][v1];
      nd.P = nd.P + NFPoly::monomial(c, w);
      nd.H = shift_z(nd.H, NFPoly::monomial(c, w), D);
      nd.w_prev = w;
      if (nd.H[1].order() != v1) throw std::logic_error("linear coefficient order changed");
    }
    done.push_back(std::move(nd));
  }
};

}  // namespace

std::vector<PuiseuxBranch> puiseux_expand(const PlaneCurveModel& M, const CenterPoint& c, int N, int degree_cap) {
  auto [u, mu] = center_orders(M, c);
  if (N < 0) N = default_truncation(M, c);
  if (N < 1) throw std::invalid_argument("truncation order must be positive");
  int n = M.n();
  NFPoly2 F = translate(M.f(), c.alpha);
  // W = T^u y has no poles: H_j = F_j(T) T^{u (n - j)}
  std::vector<NFPoly> cols;
  for (int j = 0; j <= n; ++j) cols.push_back(F.coeff(j).shifted(u * (n - j)));
  Node root;
  root.L = c.K;
  root.alpha = c.alpha;
  root.H = NFPoly2(cols);
  root.w_prev = -1;
  Expander ex{n, u, N, degree_cap, {}};
  ex.check_cap(c.K);
  ex.run(root, false);

  std::vector<PuiseuxBranch> out;
  for (auto& nd : ex.done) {
    PuiseuxBranch b;
    b.base = c.K;
    b.field = nd.L;
    b.alpha = nd.alpha;
    b.e = nd.e;
    b.N = N;
    b.u = u;
    b.mu = mu;
    b.cycles = nd.cycles;
    int shift = u * nd.e;
    int ord = nd.P.order();
    b.k0 = ord < 0 ? 0 : std::max(0, shift - ord);
    for (int k = -b.k0; k <= N; ++k) b.a.push_back(nd.P.coeff(k + shift));
    out.push_back(std::move(b));
  }
  return out;
}

ResidualReport residual_check(const PlaneCurveModel& M, const PuiseuxBranch& b) {
  int n = M.n(), k0 = b.k0, N = b.N;
  int B = 2 * (N + 1) + n * k0 + 2;
  NFPoly2 F = translate(M.f(), b.alpha);
  // t^{k0} y_N(t)
  std::vector<NFElem> yc;
  for (int k = -k0; k <= N; ++k) yc.push_back(b.coeff(k));
  NFPoly Y(yc);
  NFPoly G, Gd;
  NFPoly Yp(NFElem(1));  // Y^j
  NFPoly Ypm;            // Y^{j-1}
  for (int j = 0; j <= n; ++j) {
    NFPoly fj = ramify(F.coeff(j), b.e).shifted(k0 * (n - j));
    fj = truncate(fj, B);
    G = G + mul_trunc(fj, Yp, B);
    if (j >= 1) Gd = Gd + mul_trunc(fj, Ypm, B).scaled(NFElem(j));
    Ypm = Yp;
    Yp = mul_trunc(Yp, Y, B);
  }
  ResidualReport r;
  r.residual_order = (G.zero() ? B : G.order()) - n * k0;
  int s = (Gd.zero() ? B : Gd.order()) - (n - 1) * k0;
  r.derivative_order = s;
  int second = 2 * (N + 1) - (n - 2) * k0;
  int s_eff = std::min(s, N + 1 - (n - 2) * k0);
  r.required = std::min(N + 1 + s_eff, second);
  return r;
}

// ---- Eisenstein constants ----

std::string PlaceConstants::label() const {
  if (archimedean) return "inf[" + std::to_string(index) + "]";
  return p.get_str() + "[" + std::to_string(index) + "]";
}

const PlaceConstants* EisensteinData::finite(const mpz_class& p, int index) const {
  for (auto& pc : places)
    if (!pc.archimedean && pc.p == p && pc.index == index) return &pc;
  return nullptr;
}

const PlaceConstants* EisensteinData::archimedean(int index) const {
  for (auto& pc : places)
    if (pc.archimedean && pc.index == index) return &pc;
  return nullptr;
}

bool EisensteinData::all_hold() const {
  for (auto& c : checks)
    if (!c.holds()) return false;
  return true;
}

namespace {

std::vector<NFElem> coefficients_of(const NFPoly2& f) {
  std::vector<NFElem> v;
  for (auto& col : f.coeffs())
    for (auto& c : col.coeffs())
      if (!c.is_zero()) v.push_back(c);
  return v;
}

void add_den_primes(std::set<mpz_class>& s, const std::vector<NFElem>& v) {
  PlaceSet den = denominator_places(v);
  s.insert(den.primes().begin(), den.primes().end());
}

// log|x| at embedding i of x's field (rational elements embed identically).
long double log_abs_embedding(const NFElem& x, int i, bool upper) {
  auto em = x.embeddings();
  const CBall& b = em.size() == 1 ? em[0] : em[static_cast<size_t>(i)];
  return upper ? b.log_abs_upper() : b.log_abs_lower();
}

}  // namespace

EisensteinData eisenstein_data(const PlaneCurveModel& M, const CenterPoint& c) {
  EisensteinData D;
  D.center = c;
  auto [u, mu] = center_orders(M, c);
  D.u = u;
  D.mu = mu;
  D.n = M.n();
  D.m = M.m();
  int n = D.n;
  NFPoly2 F = translate(M.f(), c.alpha);
  NFElem lam = F.lead().coeff(u);
  if (lam.is_zero()) throw std::logic_error("f_0 order mismatch at the center");
  NFElem inv = lam.inverse();
  D.f = F.map([&](const NFPoly& col) { return col.scaled(inv); });
  D.hp = projective_height(D.f);

  NFPoly Rs = to_nfpoly(M.R()).compose(NFPoly{c.alpha, NFElem(1)});
  std::vector<NFElem> rc(Rs.coeffs().begin() + mu, Rs.coeffs().end());
  NFElem r0inv = rc.front().inverse();
  for (auto& x : rc) x = x * r0inv;
  D.R_star = NFPoly(rc);

  const FieldPtr& K = c.K;
  int d = K->degree();
  auto fc = coefficients_of(D.f);

  // archimedean places
  const auto& kroots = K->roots();
  QPoly Rrad = squarefree_part(M.R());
  std::vector<RootEnclosure> gam;
  if (Rrad.degree() >= 1) gam = isolate_roots(Rrad, NumberField::kDefaultPrecision);
  auto aemb = c.alpha.embeddings();
  for (int i = 0; i < static_cast<int>(kroots.size()); ++i) {
    bool real = kroots[static_cast<size_t>(i)].real;
    if (!real && sgn(kroots[static_cast<size_t>(i)].ball.im()) < 0) continue;
    PlaceConstants pc;
    pc.archimedean = true;
    pc.index = i;
    pc.local_degree = real ? 1 : 2;
    const CBall& ai = aemb.size() == 1 ? aemb[0] : aemb[static_cast<size_t>(i)];
    // roots of R* under this embedding are gamma - alpha, gamma != alpha
    long double best = 1e300L;
    int skip = -1;
    if (mu > 0) {
      long double closest = 1e300L;
      for (int g = 0; g < static_cast<int>(gam.size()); ++g) {
        long double dist = to_ld((gam[static_cast<size_t>(g)].ball - ai).abs_mid());
        if (dist < closest) closest = dist, skip = g;
      }
    }
    for (int g = 0; g < static_cast<int>(gam.size()); ++g) {
      if (g == skip) continue;
      CBall diff = gam[static_cast<size_t>(g)].ball - ai;
      best = std::min(best, (diff.log_abs_lower() + diff.log_abs_upper()) / 2);
    }
    pc.log_inv_sigma = std::max(0.0L, -best);
    long double lf = 0;
    for (auto& x : fc) lf = std::max(lf, log_abs_embedding(x, i, true));
    pc.log_A = n * std::log(2.0L) + pc.log_inv_sigma;
    pc.log_B = std::log(2.0L * n) + lf;
    D.places.push_back(pc);
  }

  // finite support
  std::set<mpz_class> cand;
  for (long p : primes_up_to(n)) cand.insert(mpz_class(p));
  add_den_primes(cand, fc);
  add_den_primes(cand, D.R_star.coeffs());
  for (auto& p : cand) {
    const auto& ideals = K->primes_above(p);
    for (int idx = 0; idx < static_cast<int>(ideals.size()); ++idx) {
      const PrimeIdeal& P = ideals[static_cast<size_t>(idx)];
      PlaceConstants pc;
      pc.p = p;
      pc.index = idx;
      pc.local_degree = P.e * P.f;
      long double lp = log_abs(p);
      pc.log_norm = P.f * lp;
      // log(1/sigma) from the first Newton polygon slope of R*
      mpq_class s_rat = 0;
      for (int i = 1; i <= D.R_star.degree(); ++i) {
        const NFElem& ci = D.R_star[i];
        if (ci.is_zero()) continue;
        mpq_class r(-valuation(ci, P), i);
        r.canonicalize();
        s_rat = std::max(s_rat, r);
      }
      pc.log_inv_sigma = static_cast<long double>(mpq_class(s_rat / P.e).get_d()) * lp;
      long double lf = 0;
      for (auto& x : fc) lf = std::max(lf, log_abs_at(x, P));
      pc.log_B = lf;
      bool small = p <= n;
      pc.log_A = pc.log_inv_sigma;
      mpq_class ratio = s_rat;
      bool rational_ratio = true;
      if (small) {
        pc.log_A += n * (std::log(static_cast<long double>(n)) + lp / (p.get_si() - 1));
        // e n (log n / log p + 1/(p-1)) is rational only for n a power of p
        long nn = n, a = 0;
        while (nn % p.get_si() == 0) nn /= p.get_si(), ++a;
        if (nn != 1) rational_ratio = false;
        else ratio += mpq_class(P.e * n) * (mpq_class(a) + mpq_class(1, p.get_si() - 1));
      }
      ratio.canonicalize();
      pc.A_ratio_integral = rational_ratio && ratio.get_den() == 1;
      if (pc.log_A > 0 || pc.log_B > 0) D.places.push_back(pc);
    }
  }

  for (auto& pc : D.places) {
    D.sum_log_A += pc.local_degree * pc.log_A;
    D.sum_log_B += pc.local_degree * pc.log_B;
    D.sum_log_inv_sigma += pc.local_degree * pc.log_inv_sigma;
    if (!pc.archimedean && !pc.A_ratio_integral) D.nonintegral_height += pc.log_norm;
  }
  D.sum_log_A /= d;
  D.sum_log_B /= d;
  D.sum_log_inv_sigma /= d;
  D.nonintegral_height /= d;

  EisensteinAggregateBounds rhs = eisenstein_aggregate_bounds(D.m, n, D.hp.lower, D.u, D.mu, 1, 1);
  long double bad_height = 0;
  for (auto& pc : D.places)
    if (!pc.archimedean) bad_height += pc.log_norm;
  bad_height /= d;
  D.checks.push_back({"Eisenstein A sum", "sum of log A_v over the places of K", HeightValue::exact(D.sum_log_A),
                      rhs.A_sum});
  D.checks.push_back({"Eisenstein B sum", "sum of log B_v over the places of K", HeightValue::exact(D.sum_log_B),
                      rhs.B_sum});
  D.checks.push_back({"non-integral A places", "height of the places where d_v log A_v / log N v is not integral",
                      HeightValue::exact(D.nonintegral_height), rhs.nonintegral});
  D.checks.push_back({"sigma sum", "Schmidt bound for the distance to the other roots of the resultant",
                      HeightValue::exact(D.sum_log_inv_sigma), rhs.sigma_sum});
  D.checks.push_back({"Eisenstein bad places", "height of the places with A_v > 1 or B_v > 1",
                      HeightValue::exact(bad_height), rhs.bad_places});
  for (auto& ch : D.checks) ch.slack = kSumSlack;
  return D;
}

// ---- growth of the coefficients ----

namespace {

// Index of the embedding of K that the embedding i of L restricts to.
int restrict_embedding(const EisensteinData& data, const std::vector<CBall>& alpha_in_L, int i) {
  const FieldPtr& K = data.center.K;
  if (K->degree() == 1) return 0;
  const CBall& z = alpha_in_L.size() == 1 ? alpha_in_L[0] : alpha_in_L[static_cast<size_t>(i)];
  const auto& kr = K->roots();
  int best = -1;
  long double bd = 1e300L;
  for (int j = 0; j < static_cast<int>(kr.size()); ++j) {
    long double dist = to_ld((kr[static_cast<size_t>(j)].ball - z).abs_mid());
    if (dist < bd) bd = dist, best = j;
  }
  // places are stored by the embedding with nonnegative imaginary part
  if (!kr[static_cast<size_t>(best)].real && sgn(kr[static_cast<size_t>(best)].ball.im()) < 0) {
    CBall cj = kr[static_cast<size_t>(best)].ball.conj();
    long double cd = 1e300L;
    int mate = best;
    for (int j = 0; j < static_cast<int>(kr.size()); ++j) {
      long double dist = to_ld((kr[static_cast<size_t>(j)].ball - cj).abs_mid());
      if (dist < cd) cd = dist, mate = j;
    }
    best = mate;
  }
  return best;
}

// Index of the prime of K below the prime P of L.
int prime_below(const EisensteinData& data, const NFElem& alpha_in_L, const mpz_class& p, const PrimeIdeal& P) {
  const FieldPtr& K = data.center.K;
  const auto& ideals = K->primes_above(p);
  if (ideals.size() == 1) return 0;
  const MaximalOrder& O = K->maximal_order();
  for (int idx = 0; idx < static_cast<int>(ideals.size()); ++idx) {
    bool contained = true;
    for (auto& row : ideals[static_cast<size_t>(idx)].hnf) {
      QVector pc = O.to_power_coords(QVector(row.begin(), row.end()));
      std::vector<mpq_class> v(pc.begin(), pc.end());
      NFElem x = NFElem(K, QPoly(v)).mapped(alpha_in_L);
      if (!x.is_zero() && valuation(x, P) <= 0) {
        contained = false;
        break;
      }
    }
    if (contained) return idx;
  }
  throw std::logic_error("no prime of K below a prime of L");
}

}  // namespace

GrowthReport eisenstein_growth_check(const PuiseuxBranch& b, const EisensteinData& data) {
  GrowthReport rep;
  const FieldPtr& L = b.field;
  auto consider = [&](long double lhs, const PlaceConstants* pc, int k, const std::string& where) {
    long double la = pc ? pc->log_A : 0, lb = pc ? pc->log_B : 0;
    long double rhs = lb + (b.u + static_cast<long double>(k) / b.e) * la;
    long double margin = lhs - rhs;
    ++rep.checked;
    if (margin > rep.worst_margin) {
      rep.worst_margin = margin;
      rep.worst_k = k;
      rep.worst_place = where;
    }
    if (margin > kGrowthSlack) rep.holds = false;
  };
  // archimedean
  auto aL = b.alpha.embeddings();
  int dL = L->degree();
  for (int i = 0; i < dL; ++i) {
    int j = restrict_embedding(data, aL, i);
    const PlaceConstants* pc = data.archimedean(j);
    for (int k = -b.k0; k <= b.N; ++k) {
      const NFElem& a = b.coeff(k);
      if (a.is_zero()) continue;
      consider(log_abs_embedding(a, i, true), pc, k, "inf[" + std::to_string(j) + "]");
    }
  }
  // finite
  std::set<mpz_class> cand;
  for (auto& pc : data.places)
    if (!pc.archimedean) cand.insert(pc.p);
  add_den_primes(cand, b.a);
  for (auto& p : cand) {
    for (auto& P : L->primes_above(p)) {
      int idx = prime_below(data, b.alpha, p, P);
      const PlaceConstants* pc = data.finite(p, idx);
      for (int k = -b.k0; k <= b.N; ++k) {
        const NFElem& a = b.coeff(k);
        if (a.is_zero()) continue;
        consider(log_abs_at(a, P), pc, k, p.get_str() + "[" + std::to_string(idx) + "]");
      }
    }
  }
  return rep;
}

// ---- essential coefficients and coefficient fields ----

EssentialReport essential_coefficients(const PuiseuxBranch& b, const EisensteinData& data) {
  int nu = b.relative_degree();
  if (static_cast<long>(b.N) * nu < static_cast<long>(b.e) * b.mu) throw std::runtime_error("increase truncation");
  EssentialReport rep;
  HeightValue sum{0, 0};
  for (auto& qz : prime_divisors(mpz_class(b.e))) {
    int q = static_cast<int>(qz.get_si());
    EssentialCoefficient ec;
    ec.q = q;
    bool found = false;
    for (int k = -b.k0; k <= b.N && !found; ++k) {
      if (k % q == 0 || b.coeff(k).is_zero()) continue;
      ec.kappa = k;
      ec.a = b.coeff(k);
      found = true;
    }
    if (!found) throw std::runtime_error("increase truncation");
    ec.height = affine_height(ec.a);
    ec.kappa_bound = static_cast<long double>(b.e) * b.mu / (static_cast<long double>(nu) * (q - 1)) - 1;
    sum = sum + ec.height;
    rep.items.push_back(ec);
  }
  long double rhs = eisenstein_aggregate_bounds(data.m, data.n, data.hp.lower, b.u, b.mu, nu, b.e).essential;
  rep.height_sum = {"essential coefficient heights", "height of the q-essential coefficients", sum, rhs};
  return rep;
}

CoefficientFieldReport coefficient_field(const PuiseuxBranch& b, const EisensteinData& data) {
  CoefficientFieldReport rep;
  rep.nu = b.relative_degree();
  int kappa = std::min(b.N, static_cast<int>(static_cast<long>(b.e) * b.mu / rep.nu));
  std::vector<NFElem> prefix{b.alpha}, all{b.alpha};
  for (int k = -b.k0; k <= b.N; ++k) {
    all.push_back(b.coeff(k));
    if (k <= kappa) prefix.push_back(b.coeff(k));
  }
  rep.prefix_length = kappa + b.k0 + 1;
  Subfield whole = generated_subfield(b.field, all);
  if (whole.F->degree() != b.field->degree()) throw std::logic_error("coefficients do not generate the branch field");
  rep.generated_by_prefix = generated_subfield(b.field, prefix).F->degree() == b.field->degree();
  rep.field = b.field;
  rep.alpha = b.alpha;
  const FieldPtr& K = data.center.K;
  rep.discriminant = K->degree() == 1 ? normalized_log_discriminant(*b.field)
                                      : normalized_log_discriminant(*b.field, *K, b.alpha);
  long double rhs = eisenstein_aggregate_bounds(data.m, data.n, data.hp.lower, b.u, b.mu, rep.nu, b.e).field;
  rep.bound = {"coefficient field discriminant", "discriminant of the field generated by the Puiseux coefficients",
               rep.discriminant, rhs};
  return rep;
}

BoundCheck coefficient_field_aggregate(const std::vector<PuiseuxBranch>& branches,
                                       const std::vector<CoefficientFieldReport>& fields, const EisensteinData& data) {
  HeightValue s{0, 0};
  for (size_t i = 0; i < branches.size(); ++i) s = s + fields[i].discriminant.scaled(branches[i].e * branches[i].cycles);
  long double rhs = eisenstein_aggregate_bounds(data.m, data.n, data.hp.lower, data.u, data.mu, 1, 1).field_all;
  return {"aggregate coefficient field discriminants", "sum of the coefficient field discriminants over all series", s,
          rhs};
}

BoundCheck essential_aggregate(const std::vector<PuiseuxBranch>& branches, const std::vector<EssentialReport>& reports,
                               const EisensteinData& data) {
  HeightValue s{0, 0};
  for (size_t i = 0; i < branches.size(); ++i)
    for (auto& ec : reports[i].items) s = s + ec.height.scaled(branches[i].e * branches[i].cycles);
  long double rhs = eisenstein_aggregate_bounds(data.m, data.n, data.hp.lower, data.u, data.mu, 1, 1).essential_all;
  return {"aggregate essential coefficient heights", "sum of the q-essential coefficient heights over all series", s,
          rhs};
}

// ---- one center ----

CenterAnalysis analyze_center(const PlaneCurveModel& M, const Center& c, int N) {
  CenterAnalysis A;
  A.center = c;
  A.point = CenterPoint::algebraic(c.minpoly);
  A.branches = puiseux_expand(M, A.point, N);
  A.eisenstein = eisenstein_data(M, A.point);
  for (auto& b : A.branches) {
    A.residuals.push_back(residual_check(M, b));
    A.growth.push_back(eisenstein_growth_check(b, A.eisenstein));
    A.essential.push_back(essential_coefficients(b, A.eisenstein));
    A.fields.push_back(coefficient_field(b, A.eisenstein));
    A.ramification_sum += b.e * b.cycles;
  }
  A.field_aggregate = coefficient_field_aggregate(A.branches, A.fields, A.eisenstein);
  A.essential_aggregate = essential_aggregate(A.branches, A.essential, A.eisenstein);
  return A;
}

std::vector<BoundCheck> CenterAnalysis::checks() const {
  std::vector<BoundCheck> r = eisenstein.checks;
  for (auto& f : fields) r.push_back(f.bound);
  for (auto& e : essential) r.push_back(e.height_sum);
  r.push_back(field_aggregate);
  r.push_back(essential_aggregate);
  return r;
}

bool CenterAnalysis::all_hold() const {
  for (auto& c : checks())
    if (!c.holds()) return false;
  for (auto& r : residuals)
    if (!r.ok()) return false;
  for (auto& g : growth)
    if (!g.holds) return false;
  return ramification_sum == eisenstein.n;
}

}  // namespace cheval
