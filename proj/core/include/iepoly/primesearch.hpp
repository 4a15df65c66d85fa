/* Bounded search for prime triples meeting the construction hypotheses,
   driven by the arithmetic-progression conditions on q and r rather than
   by testing every triple. */

#ifndef IEPOLY_PRIMESEARCH_HPP
#define IEPOLY_PRIMESEARCH_HPP

#include <vector>

#include "iepoly/modmath.hpp"

namespace iepoly {

struct TripleCandidate {
    Int p, q, r;
    // congruence trace, recomputable from (p, q, r)
    Int q_mod8;
    Int q_mod_half_p1; // q mod (p-1)/2
    Int q_mod_p2;
    Int r_mod_p2;
    Int r_mod_q2;
    bool q_primitive_p2 = false;
    bool r_primitive_p2 = false;
    bool r_primitive_q2 = false;
};

/* Primes q <= qmax, q > p, with q = p (mod 8), gcd(q-1, p-1) = 2, and q a
   primitive root mod p^2.  p must be 3 or 7 mod 8. */
std::vector<Int> find_q_candidates(const Int& p, const Int& qmax);

/* Primes r <= rmax, distinct from p and q, primitive roots mod p^2 and
   q^2.  (p, q) must already satisfy the full precheck. */
std::vector<Int> find_r_candidates(const Int& p, const Int& q, const Int& rmax);

/* Composition over all eligible p <= pmax; every emitted candidate passes
   the cross-module precheck. */
std::vector<TripleCandidate> find_triples(const Int& pmax, const Int& qmax, const Int& rmax);

/* One candidate as a JSON line. */
std::string candidate_json(const TripleCandidate& c);

} // namespace iepoly

#endif
