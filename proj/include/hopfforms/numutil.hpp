#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace hopfforms {

// Small-integer number theory helpers.  All arguments are expected to be
// positive and small (group orders, conductors, split primes); these are not
// general-purpose big-number routines.

long gcd_long(long a, long b);
long lcm_long(long a, long b);

// Prime factorization as (prime, exponent) pairs, ascending primes.
std::vector<std::pair<long, long>> factorize(long n);

bool is_prime(long n);

// Euler phi.
long euler_phi(long n);

// a^e mod m with m > 1, e >= 0.
long mod_pow(long a, long e, long m);

// Inverse of a modulo m (gcd(a, m) = 1), in [0, m).
long mod_inv(long a, long m);

// Multiplicative order of a modulo m, gcd(a, m) = 1.
long mult_order(long a, long m);

// Smallest primitive root modulo an odd prime ell.
long primitive_root(long ell);

// Smallest prime ell with ell = 1 (mod e) and ell > lower.
long split_prime_above(long e, long lower);

}  // namespace hopfforms
