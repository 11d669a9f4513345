#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gsp4 {

using Z = mpz_class;
using Q = mpq_class;

// Sentinel valuation of zero; large enough to dominate any precision budget.
inline constexpr int VAL_INF = 1 << 20;

// p-adic valuation, exact; VAL_INF for zero.
int valp(const Z& a, long p);
int valp(const Q& a, long p);

// a / p^valp(a); requires a != 0.
Q unit_part(const Q& a, long p);

// Denominator prime to p.
bool p_integral(const Q& a, long p);

// b^e with overflow check (throws std::overflow_error).
long long ipow(long long b, unsigned e);

// Representative of a in [0, m); m > 0.
long long mod_reduce(const Z& a, long long m);
long long mod_reduce(long long a, long long m);

// Reduction of a p-integral rational mod m = p^r.
long long mod_reduce_q(const Q& a, long long m, long p);

// Inverse of a unit mod m; throws std::domain_error if gcd(a, m) != 1.
long long inv_mod(long long a, long long m);

long long mul_mod(long long a, long long b, long long m);
long long pow_mod(long long a, long long e, long long m);

}  // namespace gsp4
