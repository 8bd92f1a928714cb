#pragma once

#include <gmpxx.h>

#include <map>
#include <vector>

namespace cheval {

// Sieve of Eratosthenes; primes p <= n.
std::vector<long> primes_up_to(long n);

bool is_probable_prime(const mpz_class& n);

// Prime factorization of |n|, n != 0.  Trial division followed by Pollard-Brent.
std::map<mpz_class, int> factor_integer(const mpz_class& n);
std::vector<mpz_class> prime_divisors(const mpz_class& n);

// p-adic valuation; argument must be nonzero.
int valuation(const mpz_class& n, const mpz_class& p);
int valuation(const mpq_class& q, const mpz_class& p);

// Natural log of |x| for arbitrarily large x (x != 0), ~1e-18 relative accuracy.
long double log_abs(const mpz_class& x);
long double log_abs(const mpq_class& x);

mpz_class ipow(const mpz_class& b, unsigned long e);
mpq_class qpow(const mpq_class& b, long e);

// Extended gcd on machine integers: returns g and sets u, v with a*u + b*v = g.
long ext_gcd(long a, long b, long& u, long& v);

}  // namespace cheval
