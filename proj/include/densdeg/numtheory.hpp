#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace densdeg {

// Kronecker symbol (a|n) with the usual 2-adic convention (a|2) = 0 for
// even a, +1 for a = ±1 mod 8, -1 for a = ±3 mod 8.
int kronecker(const mpz_class& a, const mpz_class& n);

// Prime factorization by trial division, as (prime, exponent) pairs in
// increasing order.  factor_integer(1) is empty.
std::vector<std::pair<mpz_class, unsigned>> factor_integer(const mpz_class& n);

bool is_prime(uint64_t n);

// p-adic valuation of a nonzero integer or rational.  Returns a large
// sentinel for zero.
constexpr long kInfiniteValuation = 1L << 40;
long valuation(const mpz_class& n, const mpz_class& p);
long valuation(const mpq_class& q, const mpz_class& p);

bool is_squarefree(const mpz_class& n);

// Distinct prime divisors of n.
std::vector<mpz_class> prime_support(const mpz_class& n);

// floor(sqrt(n)) for n >= 0.
mpz_class isqrt(const mpz_class& n);

// Positive residue of a mod m.
mpz_class mod_positive(const mpz_class& a, const mpz_class& m);

}  // namespace densdeg
