#pragma once

#include <gmpxx.h>

#include <vector>

#include "cheval/poly.hpp"

namespace cheval {

// Complex disc {z : |z - (re + i im)| <= rad} in multiprecision floating point.
// Arithmetic inflates the radius to cover truncation in mpf operations.
class CBall {
 public:
  CBall() : CBall(128) {}
  explicit CBall(unsigned prec);
  CBall(const mpq_class& x, unsigned prec);
  CBall(const mpf_class& re, const mpf_class& im, const mpf_class& rad);

  const mpf_class& re() const { return re_; }
  const mpf_class& im() const { return im_; }
  const mpf_class& rad() const { return rad_; }
  unsigned prec() const { return static_cast<unsigned>(re_.get_prec()); }

  mpf_class abs_mid() const;
  mpf_class abs_upper() const;
  mpf_class abs_lower() const;  // 0 when the disc contains 0
  bool contains_zero() const;
  // Enclosure [lo, hi] of log|z|; lo = -inf when the disc contains 0.
  long double log_abs_lower() const;
  long double log_abs_upper() const;

  CBall conj() const;
  CBall inverse() const;  // throws if the disc contains 0
  CBall inflated(const mpf_class& extra) const;

  friend CBall operator+(const CBall& a, const CBall& b);
  friend CBall operator-(const CBall& a, const CBall& b);
  friend CBall operator-(const CBall& a);
  friend CBall operator*(const CBall& a, const CBall& b);
  friend CBall operator/(const CBall& a, const CBall& b) { return a * b.inverse(); }

 private:
  mpf_class re_, im_, rad_;
  void add_rounding();
};

CBall eval(const QPoly& f, const CBall& z);

struct RootEnclosure {
  CBall ball;  // contains exactly one root; discs of distinct roots are disjoint
  bool real = false;
};

// Certified isolation of the roots of a squarefree f of positive degree.
// Each disc has radius below 2^-(prec/2) relative to max(1, |root|).
std::vector<RootEnclosure> isolate_roots(const QPoly& f, unsigned prec = 192);

// Refine the enclosures of `roots` (an earlier isolate_roots(f) result) to at
// least `prec` bits; order is preserved.
std::vector<RootEnclosure> refine_roots(const QPoly& f, const std::vector<RootEnclosure>& roots, unsigned prec);

long double to_ld(const mpf_class& x);

}  // namespace cheval
