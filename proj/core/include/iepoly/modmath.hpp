/* Exact integer and modular arithmetic: residues, CRT with non-coprime
   moduli, multiplicative orders, primitive-root tests, discrete logarithms
   modulo prime powers (Pohlig-Hellman + baby-step/giant-step), primality,
   and the Legendre symbol of -2.  Everything runs on GMP integers. */

#ifndef IEPOLY_MODMATH_HPP
#define IEPOLY_MODMATH_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "iepoly/errors.hpp"

namespace iepoly {

using Int = mpz_class;

/* Least nonnegative residue of n mod m.  Correct for negative n; m >= 1. */
Int lnr(const Int& n, const Int& m);

/* base^exp mod m, exp >= 0. */
Int pow_mod(const Int& base, const Int& exp, const Int& m);

/* Multiplicative inverse of a mod m; throws validation_error if gcd != 1. */
Int inv_mod(const Int& a, const Int& m);

/* Deterministic Miller-Rabin below 2^64 (fixed witness set); above that the
   same fixed witnesses plus 2^-128-bounded extra rounds, still deterministic
   as a function of n. */
bool is_prime(const Int& n);

/* Prime factorization by trial division and Pollard rho (Brent cycle).
   Returns (prime, exponent) pairs sorted by prime. */
std::vector<std::pair<Int, unsigned>> factorize(const Int& n);

Int euler_phi(const Int& n);

/* Smallest k >= 1 with g^k = 1 mod m.  Computed by factoring the group
   order and stripping primes, never by iteration.  gcd(g,m) must be 1. */
Int mult_order(const Int& g, const Int& m);

/* A modulus known to be p^k for prime p; value and totient are derived. */
struct PrimePowerModulus {
    Int prime;
    unsigned exponent = 1;
    Int value;
    Int totient;

    static PrimePowerModulus make(const Int& prime, unsigned exponent);
};

/* True iff mult_order(g, m.value) == m.totient.  Odd primes only. */
bool is_primitive_root(const Int& g, const PrimePowerModulus& m);

/* Number of primitive roots modulo p^2 for an odd prime p: (p-1)*phi(p-1). */
Int primitive_root_count_mod_p2(const Int& p);

/* One discrete-log solution plus the order of the base, so the full
   solution set is exponent + order*Z. */
struct DlogAnswer {
    Int exponent; // 0 <= exponent < order
    Int order;    // multiplicative order of the base
};

/* Solve base^x = target in (Z/m)* for a prime-power modulus m.
   nullopt when target lies outside the subgroup generated by base. */
std::optional<DlogAnswer> dlog_prime_power(const Int& base, const Int& target,
                                           const PrimePowerModulus& m);

/* Composite-modulus wrapper: solve per prime-power factor, combine the
   exponent congruences with crt_general. */
std::optional<DlogAnswer> dlog_mod(const Int& base, const Int& target, const Int& modulus);

struct CrtSolution {
    Int residue; // 0 <= residue < modulus
    Int modulus; // lcm of the input moduli
};

/* Simultaneous x = r1 (mod m1), x = r2 (mod m2) for arbitrary moduli >= 1.
   Soluble iff gcd(m1,m2) divides r1-r2; nullopt otherwise. */
std::optional<CrtSolution> crt_general(const Int& r1, const Int& m1,
                                       const Int& r2, const Int& m2);

/* (-2|p) = (-1)^((p-1)/2 + (p^2-1)/8) for an odd prime p: +1 or -1. */
int legendre_minus_two(const Int& p);

} // namespace iepoly

#endif
