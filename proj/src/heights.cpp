#include "cheval/heights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cheval/integer.hpp"

namespace cheval {

namespace {
constexpr long double kRelSlack = 4e-17L;
long double slack(long double v) { return kRelSlack * (1 + std::fabs(v)); }
// heights are nonnegative, so the enclosure can be clipped at 0
HeightValue clip(HeightValue h) { return {std::max(h.lower, 0.0L), std::max(h.upper, 0.0L)}; }
}  // namespace

HeightValue HeightValue::exact(long double v) { return {v - slack(v), v + slack(v)}; }

HeightValue HeightValue::scaled(long double c) const { return {lower * c, upper * c}; }

// ---- PlaceSet ----

PlaceSet::PlaceSet(std::initializer_list<long> primes, bool infinite) : infinite_(infinite) {
  for (long p : primes) primes_.insert(mpz_class(p));
}

void PlaceSet::insert_all(const PlaceSet& o) {
  primes_.insert(o.primes_.begin(), o.primes_.end());
  infinite_ = infinite_ || o.infinite_;
}

bool PlaceSet::subset_of(const PlaceSet& o) const {
  if (infinite_ && !o.infinite_) return false;
  return std::includes(o.primes_.begin(), o.primes_.end(), primes_.begin(), primes_.end());
}

PlaceSet PlaceSet::united(const PlaceSet& o) const {
  PlaceSet r = *this;
  r.insert_all(o);
  return r;
}

HeightValue PlaceSet::height() const {
  if (primes_.empty()) return {0, 0};
  long double s = 0;
  for (auto& p : primes_) s += log_abs(p);
  return HeightValue::exact(s);
}

std::string PlaceSet::to_string() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  if (infinite_) {
    os << "inf";
    first = false;
  }
  for (auto& p : primes_) {
    if (!first) os << ",";
    os << p.get_str();
    first = false;
  }
  os << "}";
  return os.str();
}

HeightValue place_set_height(const PlaceSet& S) { return S.height(); }

HeightValue lifted_place_set_height(const PlaceSet& S, const NumberField& L) {
  long double s = 0;
  for (auto& p : S.primes()) {
    long double lp = log_abs(p);
    for (auto& P : L.primes_above(p)) s += P.f * lp;
  }
  return HeightValue::exact(s / L.degree());
}

// ---- heights of vectors ----

HeightValue projective_height(const std::vector<mpq_class>& v) {
  mpz_class L = 1, G = 0;
  bool any = false;
  for (auto& x : v) {
    if (sgn(x) == 0) continue;
    any = true;
    mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), x.get_den_mpz_t());
  }
  if (!any) throw std::invalid_argument("projective height of the zero vector");
  std::vector<mpz_class> n;
  for (auto& x : v) {
    if (sgn(x) == 0) continue;
    mpz_class t = x.get_num() * (L / x.get_den());
    mpz_gcd(G.get_mpz_t(), G.get_mpz_t(), t.get_mpz_t());
    n.push_back(abs(t));
  }
  mpz_class mx = *std::max_element(n.begin(), n.end());
  if (mx == G) return {0, 0};
  return clip(HeightValue::exact(log_abs(mx) - log_abs(G)));
}

HeightValue affine_height(const std::vector<mpq_class>& v) {
  std::vector<mpq_class> w{mpq_class(1)};
  w.insert(w.end(), v.begin(), v.end());
  return projective_height(w);
}

namespace {

FieldPtr field_of(const std::vector<NFElem>& v) {
  FieldPtr K;
  for (auto& x : v) {
    if (x.is_rational()) continue;
    if (K && K != x.field()) throw std::logic_error("coordinates lie in different number fields");
    K = x.field();
  }
  return K;
}

HeightValue archimedean_part(const std::vector<NFElem>& nz, int d) {
  for (unsigned prec : {0u, 512u, 1024u, 2048u, 4096u}) {
    std::vector<std::vector<CBall>> emb;
    for (auto& x : nz) {
      auto e = x.embeddings(prec);
      if (static_cast<int>(e.size()) != d) e.assign(d, e.front());  // rational constant
      emb.push_back(std::move(e));
    }
    long double lo = 0, hi = 0;
    bool decided = true;
    for (int j = 0; j < d; ++j) {
      long double l = -std::numeric_limits<long double>::infinity(), h = l;
      for (auto& e : emb) {
        l = std::max(l, e[j].log_abs_lower());
        h = std::max(h, e[j].log_abs_upper());
      }
      if (!std::isfinite(l)) decided = false;
      lo += l;
      hi += h;
    }
    if (decided) return {lo, hi};
  }
  throw std::runtime_error("archimedean height not decided at maximal precision");
}

}  // namespace

HeightValue projective_height(const std::vector<NFElem>& v) {
  FieldPtr K = field_of(v);
  if (!K || K->degree() == 1) {
    std::vector<mpq_class> r;
    for (auto& x : v) r.push_back(x.is_rational() ? x.rational_value() : x.poly().eval(-K->minpoly()[0]));
    return projective_height(r);
  }
  std::vector<NFElem> nz;
  for (auto& x : v)
    if (!x.is_zero()) nz.push_back(x);
  if (nz.empty()) throw std::invalid_argument("projective height of the zero vector");
  int d = K->degree();
  const MaximalOrder& O = K->maximal_order();
  std::vector<QVector> gens;
  for (auto& x : nz) gens.push_back(x.coords(d));
  mpq_class N = ideal_norm(O, gens);
  long double logN = log_abs(N);
  HeightValue arch = archimedean_part(nz, d);
  long double lo = (arch.lower - logN) / d, hi = (arch.upper - logN) / d;
  return clip({lo - slack(lo), hi + slack(hi)});
}

HeightValue affine_height(const std::vector<NFElem>& v) {
  std::vector<NFElem> w{NFElem(1)};
  w.insert(w.end(), v.begin(), v.end());
  return projective_height(w);
}

HeightValue affine_height(const NFElem& a) { return affine_height(std::vector<NFElem>{a}); }

HeightValue projective_height(const QPoly& f) { return projective_height(coefficient_vector(f)); }
HeightValue affine_height(const QPoly& f) { return affine_height(coefficient_vector(f)); }
HeightValue projective_height(const QPoly2& f) { return projective_height(coefficient_vector(f)); }
HeightValue affine_height(const QPoly2& f) { return affine_height(coefficient_vector(f)); }

namespace {
std::vector<NFElem> flat(const NFPoly& f) { return f.coeffs(); }
std::vector<NFElem> flat(const NFPoly2& f) {
  std::vector<NFElem> r;
  for (auto& c : f.coeffs())
    for (auto& x : c.coeffs()) r.push_back(x);
  return r;
}
}  // namespace

HeightValue projective_height(const NFPoly& f) { return projective_height(flat(f)); }
HeightValue affine_height(const NFPoly& f) { return affine_height(flat(f)); }
HeightValue projective_height(const NFPoly2& f) { return projective_height(flat(f)); }
HeightValue affine_height(const NFPoly2& f) { return affine_height(flat(f)); }

// ---- denominators and numerators ----

DenNum denominator_numerator_places(const std::vector<mpq_class>& v) {
  DenNum r;
  mpz_class g = 0;
  bool any = false;
  for (auto& x : v) {
    if (sgn(x) == 0) continue;
    any = true;
    for (auto& p : prime_divisors(x.get_den())) r.den.insert(p);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
  }
  if (any && g != 1)
    for (auto& p : prime_divisors(g)) r.num.insert(p);
  if (!any) throw std::invalid_argument("numerator places of the zero vector");
  return r;
}

DenNum denominator_numerator_places(const std::vector<NFElem>& v) {
  FieldPtr K = field_of(v);
  if (!K || K->degree() == 1) {
    std::vector<mpq_class> r;
    for (auto& x : v) r.push_back(x.is_rational() ? x.rational_value() : x.poly().eval(-K->minpoly()[0]));
    return denominator_numerator_places(r);
  }
  std::vector<NFElem> nz;
  for (auto& x : v)
    if (!x.is_zero()) nz.push_back(x);
  if (nz.empty()) throw std::invalid_argument("numerator places of the zero vector");
  int d = K->degree();
  const MaximalOrder& O = K->maximal_order();
  mpz_class D = 1;
  for (auto& x : nz)
    for (auto& c : O.to_order_coords(x.coords(d))) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), c.get_den_mpz_t());
  std::set<mpz_class> cand;
  for (auto& p : prime_divisors(D)) cand.insert(p);
  mpz_class best = 0;
  for (auto& x : nz) {
    mpz_class n = abs((x * NFElem(mpq_class(D))).norm().get_num());
    if (best == 0 || n < best) best = n;
  }
  if (best > 1)
    for (auto& p : prime_divisors(best)) cand.insert(p);
  DenNum r;
  for (auto& p : cand)
    for (auto& P : K->primes_above(p)) {
      int m = std::numeric_limits<int>::max();
      for (auto& x : nz) m = std::min(m, valuation(x, P));
      if (m < 0) r.den.insert(p);
      if (m > 0) r.num.insert(p);
    }
  return r;
}

PlaceSet denominator_places(const std::vector<NFElem>& v) {
  std::vector<NFElem> nz;
  for (auto& x : v)
    if (!x.is_zero()) nz.push_back(x);
  if (nz.empty()) return PlaceSet();
  FieldPtr K = field_of(nz);
  if (!K || K->degree() == 1) return denominator_numerator_places(nz).den;
  int d = K->degree();
  const MaximalOrder& O = K->maximal_order();
  mpz_class D = 1;
  for (auto& x : nz)
    for (auto& c : O.to_order_coords(x.coords(d))) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), c.get_den_mpz_t());
  PlaceSet r;
  for (auto& p : prime_divisors(D))
    for (auto& P : K->primes_above(p)) {
      bool neg = false;
      for (auto& x : nz) neg = neg || valuation(x, P) < 0;
      if (neg) {
        r.insert(p);
        break;
      }
    }
  return r;
}

// ---- discriminants ----

HeightValue normalized_log_discriminant(const NumberField& L) {
  return HeightValue::exact(log_discriminant_normalized(L));
}

HeightValue normalized_log_discriminant(const NumberField& L, const NumberField& K, const NFElem& witness) {
  if (L.degree() % K.degree() != 0) throw std::invalid_argument("no embedding witness: degree does not divide");
  if (!witness.is_rational() && witness.field().get() != &L)
    throw std::invalid_argument("no embedding witness: element not in L");
  if (!K.minpoly().eval_as<NFElem>(witness).is_zero())
    throw std::invalid_argument("no embedding witness: not a root of the minimal polynomial");
  return HeightValue::exact(log_discriminant_normalized(L) - log_discriminant_normalized(K));
}

// ---- prime sums ----

PrimeSumRecord prime_sum_checks(long x) {
  if (x < 2) throw std::invalid_argument("prime sums require x >= 2");
  PrimeSumRecord r;
  r.x = x;
  for (long p : primes_up_to(x)) {
    long double lp = std::log(static_cast<long double>(p));
    ++r.prime_count;
    r.theta += lp;
    r.mertens += lp / (p - 1);
  }
  long double lx = std::log(static_cast<long double>(x));
  r.prime_count_bound = 1.26L * x / lx;
  r.theta_bound = 1.02L * x;
  r.mertens_bound = 2 * lx;
  r.prime_count_ok = r.prime_count <= r.prime_count_bound;
  r.theta_ok = r.theta <= r.theta_bound;
  r.mertens_ok = r.mertens <= r.mertens_bound;
  return r;
}

namespace {

struct Running {
  long count = 0;
  long double theta = 0, mertens = 0;
};

void check_range(const std::vector<char>& is_prime, long a, long b, Running run, PrimeSumSweep& out) {
  for (long x = a; x < b; ++x) {
    if (is_prime[x]) {
      long double lp = std::log(static_cast<long double>(x));
      ++run.count;
      run.theta += lp;
      run.mertens += lp / (x - 1);
    }
    long double lx = std::log(static_cast<long double>(x));
    long double r1 = run.count / (1.26L * x / lx), r2 = run.theta / (1.02L * x), r3 = run.mertens / (2 * lx);
    out.worst_prime_count = std::max(out.worst_prime_count, r1);
    out.worst_theta = std::max(out.worst_theta, r2);
    out.worst_mertens = std::max(out.worst_mertens, r3);
    ++out.checked;
    if (r1 > 1 || r2 > 1 || r3 > 1) {
      if (out.violations == 0 || x < out.first_violation) out.first_violation = x;
      ++out.violations;
    }
  }
}

std::vector<char> sieve_flags(long n) {
  std::vector<char> f(static_cast<size_t>(n) + 1, 1);
  f[0] = 0;
  if (n >= 1) f[1] = 0;
  for (long i = 2; i * i <= n; ++i)
    if (f[i])
      for (long j = i * i; j <= n; j += i) f[j] = 0;
  return f;
}

}  // namespace

PrimeSumSweep prime_sum_sweep_serial(long max_x) {
  PrimeSumSweep out;
  out.max_x = max_x;
  if (max_x < 2) return out;
  auto flags = sieve_flags(max_x);
  check_range(flags, 2, max_x + 1, Running{}, out);
  return out;
}

PrimeSumSweep prime_sum_sweep_parallel(long max_x, int threads) {
  PrimeSumSweep out;
  out.max_x = max_x;
  if (max_x < 2) return out;
#ifdef _OPENMP
  int nt = threads > 0 ? threads : omp_get_max_threads();
#else
  int nt = 1;
  (void)threads;
#endif
  // Segmented sieve: base primes serially, segments in parallel.
  long root = static_cast<long>(std::sqrt(static_cast<long double>(max_x))) + 1;
  std::vector<long> base = primes_up_to(root);
  std::vector<char> flags(static_cast<size_t>(max_x) + 1, 1);
  flags[0] = 0;
  flags[1] = 0;
  long chunks = std::max<long>(nt * 8L, 1);
  long span = (max_x + chunks) / chunks + 1;
#pragma omp parallel for schedule(dynamic) num_threads(nt)
  for (long c = 0; c < chunks; ++c) {
    long lo = std::max(2L, c * span), hi = std::min(max_x + 1, (c + 1) * span);
    for (long p : base) {
      long start = std::max(p * p, ((lo + p - 1) / p) * p);
      for (long j = start; j < hi; j += p) flags[j] = 0;
    }
  }
  // Per-chunk totals, exclusive scan, then per-chunk checks.
  std::vector<Running> totals(chunks), prefix(chunks);
#pragma omp parallel for schedule(dynamic) num_threads(nt)
  for (long c = 0; c < chunks; ++c) {
    long lo = std::max(2L, c * span), hi = std::min(max_x + 1, (c + 1) * span);
    Running r;
    for (long x = lo; x < hi; ++x)
      if (flags[x]) {
        long double lp = std::log(static_cast<long double>(x));
        ++r.count;
        r.theta += lp;
        r.mertens += lp / (x - 1);
      }
    totals[c] = r;
  }
  Running acc;
  for (long c = 0; c < chunks; ++c) {
    prefix[c] = acc;
    acc.count += totals[c].count;
    acc.theta += totals[c].theta;
    acc.mertens += totals[c].mertens;
  }
  std::vector<PrimeSumSweep> parts(chunks);
#pragma omp parallel for schedule(dynamic) num_threads(nt)
  for (long c = 0; c < chunks; ++c) {
    long lo = std::max(2L, c * span), hi = std::min(max_x + 1, (c + 1) * span);
    if (lo < hi) check_range(flags, lo, hi, prefix[c], parts[c]);
  }
  for (auto& p : parts) {
    out.checked += p.checked;
    if (p.violations) {
      if (out.violations == 0 || p.first_violation < out.first_violation) out.first_violation = p.first_violation;
      out.violations += p.violations;
    }
    out.worst_prime_count = std::max(out.worst_prime_count, p.worst_prime_count);
    out.worst_theta = std::max(out.worst_theta, p.worst_theta);
    out.worst_mertens = std::max(out.worst_mertens, p.worst_mertens);
  }
  return out;
}

}  // namespace cheval
