#pragma once

#include <gmpxx.h>

#include <climits>
#include <string>
#include <vector>

namespace orbint {

using Integer = mpz_class;
using Rational = mpq_class;

// Valuations are plain longs; zero has valuation kInfVal.
constexpr long kInfVal = LONG_MAX;

long valuation(const Integer& x, long p);
long valuation(const Rational& x, long p);

Integer ipow(const Integer& base, unsigned long e);
Rational rpow(const Rational& base, long e);  // e may be negative
Integer p_pow(long p, long k);                // k >= 0
Rational p_pow_q(long p, long k);             // any sign

// Canonical representative in Z[1/p] of x modulo p^k Z_p: the unique
// r = m / p^e with 0 <= m < p^{k+e} and r congruent to x. Requires x in Z_(p)[1/p].
Rational modrep(const Rational& x, long p, long k);

// True iff x lies in p^k Z_p.
bool in_pk(const Rational& x, long p, long k);

// Unit part x / p^{v(x)} reduced modulo p (an integer in [1,p)).
long unit_residue(const Rational& x, long p);

long legendre(const Integer& a, long p);
bool is_prime(long n);
long mod_inverse(long a, long m);

Rational parse_rational(const std::string& s);
std::string to_string(const Rational& x);

std::vector<Rational> parse_rationals(const std::vector<std::string>& v);

}  // namespace orbint
