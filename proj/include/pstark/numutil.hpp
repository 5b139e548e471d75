#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pstark/errors.hpp"

namespace pstark {

using Int = mpz_class;
using Rat = mpq_class;

// floor(sqrt(n)), n >= 0
Int isqrt(const Int& n);
bool is_square(const Int& n);

// floor/ceil of an exact rational
Int rfloor(const Rat& q);
Int rceil(const Rat& q);

inline Int fdiv(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}
inline Int fmod(const Int& a, const Int& b) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Int pow_int(const Int& base, unsigned long e);
Int pow_mod(const Int& base, const Int& e, const Int& m);
// inverse of a mod m; throws non_unit_divisor if gcd(a,m) != 1
Int inv_mod(const Int& a, const Int& m);

int kronecker(const Int& a, const Int& n);
bool is_prime(const Int& n);
// primes < bound, by trial sieve (desk scale)
std::vector<long> primes_below(long bound);

// p-adic valuation; v_p(0) throws
long valuation(Int n, const Int& p);
long valuation(const Rat& q, const Int& p);

// square root of a mod odd prime p (a a residue); returns the smaller root
Int sqrt_mod_prime(const Int& a, const Int& p);

// trial-division factorization, smallest factors first
std::vector<std::pair<Int, unsigned>> factor(Int n);

Int binomial(const Int& n, unsigned long k);
unsigned long euler_phi(unsigned long n);

// ---- exact decimal strings ----------------------------------------------
// parse "-1.4859..." or "0.35" or "12" into an exact rational
Rat parse_decimal(const std::string& s);
// value rounded to `digits` places after the point (round half away from zero;
// exact ties cannot occur for the irrational quantities we print)
std::string format_decimal(const Rat& v, int digits);

// mixed-radix index helpers for finite abelian groups given as invariant factors
std::vector<long> unrank_mixed(unsigned long idx, const std::vector<long>& orders);
unsigned long rank_mixed(const std::vector<long>& exps, const std::vector<long>& orders);

} // namespace pstark
