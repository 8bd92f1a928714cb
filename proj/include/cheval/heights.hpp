#pragma once

#include <gmpxx.h>

#include <set>
#include <string>
#include <vector>

#include "cheval/number_field.hpp"
#include "cheval/poly.hpp"

namespace cheval {

// Certified enclosure [lower, upper] of a real quantity.
struct HeightValue {
  long double lower = 0;
  long double upper = 0;

  static HeightValue exact(long double v);  // v up to long double rounding
  long double mid() const { return (lower + upper) / 2; }
  long double width() const { return upper - lower; }
  bool overlaps(const HeightValue& o) const { return lower <= o.upper && o.lower <= upper; }
  // value <= bound, certified: upper endpoint against the bound
  bool certainly_le(long double bound) const { return upper <= bound; }

  friend HeightValue operator+(const HeightValue& a, const HeightValue& b) { return {a.lower + b.lower, a.upper + b.upper}; }
  friend HeightValue operator-(const HeightValue& a, const HeightValue& b) { return {a.lower - b.upper, a.upper - b.lower}; }
  HeightValue scaled(long double c) const;  // c >= 0
};

// Finite set of rational primes, optionally with the infinite place.
class PlaceSet {
 public:
  PlaceSet() = default;
  PlaceSet(std::initializer_list<long> primes, bool infinite = false);
  explicit PlaceSet(const std::set<mpz_class>& primes, bool infinite = false) : primes_(primes), infinite_(infinite) {}

  void insert(const mpz_class& p) { primes_.insert(p); }
  void insert_infinite() { infinite_ = true; }
  void insert_all(const PlaceSet& o);
  bool contains(const mpz_class& p) const { return primes_.count(p) > 0; }
  bool has_infinite() const { return infinite_; }
  bool empty() const { return primes_.empty() && !infinite_; }
  const std::set<mpz_class>& primes() const { return primes_; }
  bool subset_of(const PlaceSet& o) const;
  PlaceSet united(const PlaceSet& o) const;

  HeightValue height() const;  // sum of log p; the infinite place has norm 1
  std::string to_string() const;
  friend bool operator==(const PlaceSet& a, const PlaceSet& b) { return a.primes_ == b.primes_ && a.infinite_ == b.infinite_; }

 private:
  std::set<mpz_class> primes_;
  bool infinite_ = false;
};

HeightValue place_set_height(const PlaceSet& S);
// Height of the set of places of L above the primes of S, normalized by [L:Q].
HeightValue lifted_place_set_height(const PlaceSet& S, const NumberField& L);

// Heights of vectors; all non-rational coordinates must share one field.
HeightValue projective_height(const std::vector<NFElem>& v);
HeightValue affine_height(const std::vector<NFElem>& v);
HeightValue projective_height(const std::vector<mpq_class>& v);
HeightValue affine_height(const std::vector<mpq_class>& v);
// Heights of polynomials are heights of their coefficient vectors.
HeightValue projective_height(const QPoly& f);
HeightValue affine_height(const QPoly& f);
HeightValue projective_height(const QPoly2& f);
HeightValue affine_height(const QPoly2& f);
HeightValue projective_height(const NFPoly& f);
HeightValue affine_height(const NFPoly& f);
HeightValue projective_height(const NFPoly2& f);
HeightValue affine_height(const NFPoly2& f);
HeightValue affine_height(const NFElem& a);

struct DenNum {
  PlaceSet den;
  PlaceSet num;
};
DenNum denominator_numerator_places(const std::vector<mpq_class>& v);
DenNum denominator_numerator_places(const std::vector<NFElem>& v);
// Den places only; skips the norm factorization needed for the numerator places.
PlaceSet denominator_places(const std::vector<NFElem>& v);

// (log |Nm D_{L/K}|) / [L:Q].  K = Q when `K` is null; otherwise the witness
// must be a root of K's minimal polynomial in L.
HeightValue normalized_log_discriminant(const NumberField& L);
HeightValue normalized_log_discriminant(const NumberField& L, const NumberField& K, const NFElem& witness);

struct PrimeSumRecord {
  long x = 0;
  long prime_count = 0;       // sum_{p <= x} 1
  long double theta = 0;      // sum_{p <= x} log p
  long double mertens = 0;    // sum_{p <= x} log p / (p - 1)
  long double prime_count_bound = 0, theta_bound = 0, mertens_bound = 0;
  bool prime_count_ok = false, theta_ok = false, mertens_ok = false;
  bool all_ok() const { return prime_count_ok && theta_ok && mertens_ok; }
};
PrimeSumRecord prime_sum_checks(long x);

struct PrimeSumSweep {
  long max_x = 0;
  long checked = 0;
  long violations = 0;
  long first_violation = 0;  // 0 when none
  // largest observed ratio lhs / rhs for each inequality
  long double worst_prime_count = 0, worst_theta = 0, worst_mertens = 0;
};
// Checks every integer 2 <= x <= max_x.
PrimeSumSweep prime_sum_sweep_serial(long max_x);
PrimeSumSweep prime_sum_sweep_parallel(long max_x, int threads = 0);

}  // namespace cheval
