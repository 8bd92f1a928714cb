#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "cheval/poly.hpp"

namespace cheval {

using QVector = std::vector<mpq_class>;
using QMatrix = std::vector<QVector>;
using ZVector = std::vector<mpz_class>;
using ZMatrix = std::vector<ZVector>;

mpq_class determinant(QMatrix m);
std::optional<QMatrix> inverse(const QMatrix& m);
QMatrix multiply(const QMatrix& a, const QMatrix& b);
QVector row_times(const QVector& x, const QMatrix& m);  // x * m

// Coefficients c with sum_i c_i rows[i] = target, if the target lies in the row span.
std::optional<QVector> solve_in_row_span(const QMatrix& rows, const QVector& target);
int rank(QMatrix m);

// Row Hermite normal form of an integer matrix: upper triangular, positive
// pivots, entries above a pivot reduced into [0, pivot).  Zero rows dropped.
ZMatrix hermite_normal_form(ZMatrix m);

// Basis of {x : x * M = 0 (mod p)} for an r x c matrix M with entries in [0, p).
std::vector<std::vector<std::uint64_t>> left_kernel_mod_p(std::vector<std::vector<std::uint64_t>> m,
                                                          std::uint64_t p);

// Characteristic polynomial det(x I - M), monic, by Hessenberg reduction.
QPoly charpoly(QMatrix m);

}  // namespace cheval
