#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "cheval/complex_roots.hpp"
#include "cheval/maximal_order.hpp"
#include "cheval/poly.hpp"

namespace cheval {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

// Element of Q(theta), stored as a polynomial in theta reduced modulo the
// minimal polynomial.  A null field denotes a rational constant, which mixes
// freely with elements of any field.
class NFElem {
 public:
  NFElem() = default;
  NFElem(long v) : c_(mpq_class(v)) {}
  NFElem(const mpq_class& q) : c_(q) {}
  NFElem(FieldPtr K, const QPoly& c);
  static NFElem generator(const FieldPtr& K);

  const FieldPtr& field() const { return K_; }
  const QPoly& poly() const { return c_; }
  bool is_zero() const { return c_.zero(); }
  bool is_rational() const { return c_.degree() <= 0; }
  mpq_class rational_value() const;  // requires is_rational()
  QVector coords(int d) const;       // power-basis coordinates, length d

  NFElem inverse() const;
  NFElem pow(long k) const;
  mpq_class norm() const;   // relative to Q, over field() (or the rational itself)
  mpq_class trace() const;
  QPoly charpoly() const;   // over Q, degree [field():Q]
  QPoly minpoly() const;    // monic, over Q
  // Images under the embeddings of field(), in the order of field()->roots().
  std::vector<CBall> embeddings(unsigned prec = 0) const;
  // Same element viewed in L, given the image of this field's generator in L.
  NFElem mapped(const NFElem& generator_image) const;

  friend NFElem operator+(const NFElem& a, const NFElem& b);
  friend NFElem operator-(const NFElem& a, const NFElem& b);
  friend NFElem operator-(const NFElem& a);
  friend NFElem operator*(const NFElem& a, const NFElem& b);
  friend NFElem operator/(const NFElem& a, const NFElem& b) { return a * b.inverse(); }
  friend bool operator==(const NFElem& a, const NFElem& b);
  friend bool operator!=(const NFElem& a, const NFElem& b) { return !(a == b); }

 private:
  FieldPtr K_;
  QPoly c_;
  static FieldPtr common(const NFElem& a, const NFElem& b);
};

inline bool is_zero(const NFElem& x) { return x.is_zero(); }
inline NFElem exact_div(const NFElem& a, const NFElem& b) { return a / b; }

using NFPoly = Poly<NFElem>;
// Bivariate over a number field: polynomial in Y with coefficients in K[X].
using NFPoly2 = Poly<NFPoly>;

class NumberField : public std::enable_shared_from_this<NumberField> {
 public:
  // minpoly: irreducible over Q (checked unless `trusted`); made monic.
  static FieldPtr create(const QPoly& minpoly, bool trusted = false);
  static FieldPtr rationals();

  const QPoly& minpoly() const { return g_; }
  int degree() const { return g_.degree(); }
  bool is_rational_field() const { return g_.degree() == 1; }

  const MaximalOrder& maximal_order() const;
  const mpz_class& discriminant() const { return maximal_order().discriminant; }
  const std::vector<mpz_class>& ramified_primes() const { return maximal_order().ramified_primes; }
  const std::vector<PrimeIdeal>& primes_above(const mpz_class& p) const;

  // Certified enclosures of the conjugates of the generator, default precision.
  const std::vector<RootEnclosure>& roots() const;
  std::vector<RootEnclosure> roots(unsigned prec) const;
  static constexpr unsigned kDefaultPrecision = 256;

  NumberField(const NumberField&) = delete;
  NumberField& operator=(const NumberField&) = delete;
  explicit NumberField(QPoly g) : g_(std::move(g)) {}

 private:
  QPoly g_;
  mutable std::once_flag order_once_, roots_once_;
  mutable std::unique_ptr<MaximalOrder> order_;
  mutable std::vector<RootEnclosure> roots_;
  mutable std::mutex primes_mutex_;
  mutable std::map<mpz_class, std::vector<PrimeIdeal>> primes_;
};

// v_P(x) and log|x|_P (normalized so that |p|_P = 1/p).
int valuation(const NFElem& x, const PrimeIdeal& P);
long double log_abs_at(const NFElem& x, const PrimeIdeal& P);

// Norm to Q[Z] of F in K[Z]: Res_theta(minpoly(theta), F(theta, Z)).
QPoly norm_poly(const FieldPtr& K, const NFPoly& F);

NFPoly to_nfpoly(const QPoly& f);
NFPoly gcd_over(const NFPoly& a, const NFPoly& b);  // monic

struct NFFactor {
  NFPoly poly;  // monic irreducible over K
  int multiplicity;
};
// Trager's algorithm.  Factors sorted by degree.
std::vector<NFFactor> factor_over(const FieldPtr& K, const NFPoly& F);

// L = K(z) for a root z of G irreducible over K, as an absolute field.
struct Extension {
  FieldPtr L;
  NFElem base_generator;  // image of K's generator in L
  NFElem root;            // z in L
};
Extension extend(const FieldPtr& K, const NFPoly& G);

// Q(gens) inside L as an absolute field F, with each generator written in F
// and the image of F's generator in L.
struct Subfield {
  FieldPtr F;
  NFElem generator_in_parent;
  std::vector<NFElem> images;
};
Subfield generated_subfield(const FieldPtr& L, const std::vector<NFElem>& gens);

// Normalized logarithmic discriminant (log |d_L|) / [L:Q].
long double log_discriminant_normalized(const NumberField& L);

}  // namespace cheval
