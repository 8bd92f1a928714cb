#pragma once

#include <utility>
#include <vector>

#include "cheval/poly.hpp"

namespace cheval {

// Default degree ceiling for the squarefree parts handed to Zassenhaus
// recombination.  Internal norm computations raise it explicitly.
constexpr int kFactorDegreeCap = 24;

struct Factor {
  QPoly poly;  // primitive, integer coefficients, positive leading coefficient
  int multiplicity;
};

// Irreducible factorization over Q.  The product of the factors raised to
// their multiplicities equals F up to a rational constant.
std::vector<Factor> factor_rational_poly(const QPoly& F, int degree_cap = kFactorDegreeCap);

// Factors a squarefree primitive integer polynomial (positive leading coefficient).
std::vector<ZPoly> factor_squarefree_integer(const ZPoly& f, int degree_cap = kFactorDegreeCap);

bool is_irreducible(const QPoly& F, int degree_cap = kFactorDegreeCap);

}  // namespace cheval
