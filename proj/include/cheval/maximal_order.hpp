#pragma once

#include <gmpxx.h>

#include <vector>

#include "cheval/linalg.hpp"
#include "cheval/poly.hpp"

namespace cheval {

// Ring of integers of Q(theta), theta a root of a monic irreducible rational
// polynomial.  Coordinates of field elements are taken in the power basis
// 1, theta, ..., theta^(d-1).
struct MaximalOrder {
  QPoly minpoly;                 // monic, rational
  mpz_class scale;               // t = scale * theta has a monic integral minimal polynomial
  QPoly integral_minpoly;        // minimal polynomial of t
  QMatrix basis;                 // rows: integral basis in power-basis coordinates of theta
  QMatrix basis_inv;             // power-basis coordinates -> integral-basis coordinates
  mpz_class discriminant;        // field discriminant
  mpz_class index;               // [O_K : Z[t]]
  std::vector<mpz_class> ramified_primes;
  // mult[i][j][k]: coefficient of w_k in w_i * w_j
  std::vector<std::vector<ZVector>> mult;

  int degree() const { return static_cast<int>(basis.size()); }
  QVector to_order_coords(const QVector& power_coords) const;
  QVector to_power_coords(const QVector& order_coords) const;
  ZVector multiply(const ZVector& a, const ZVector& b) const;
};

// Round 2 (Pohst-Zassenhaus).  Throws std::invalid_argument("not irreducible")
// when the input is reducible.
MaximalOrder maximal_order(const QPoly& minpoly);

// Prime ideal of O_K above p, given by a Z-basis in integral-basis coordinates.
struct PrimeIdeal {
  mpz_class p;
  int e = 1;        // ramification index
  int f = 1;        // residue degree
  ZMatrix hnf;      // Hermite basis, d x d
  ZVector anti;     // b in O_K with b/p of valuation -1 here and >= 0 at the other primes above p
};

std::vector<PrimeIdeal> decompose_prime(const MaximalOrder& order, const mpz_class& p);

// v_P(x) for nonzero x given in power-basis coordinates.
int valuation(const MaximalOrder& order, const PrimeIdeal& P, const QVector& power_coords);

// Norm of the fractional ideal generated by the given elements (power-basis
// coordinates), as a positive rational.  At least one element is nonzero.
mpq_class ideal_norm(const MaximalOrder& order, const std::vector<QVector>& generators);

}  // namespace cheval
