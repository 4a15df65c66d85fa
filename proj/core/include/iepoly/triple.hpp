/* The index object of a ternary inclusion-exclusion polynomial: an
   unordered pairwise-coprime triple {p,q,r} with its base parameters, the
   unique bounded representation of integers it induces, and the O(p)
   coefficient point-query built on window sums. */

#ifndef IEPOLY_TRIPLE_HPP
#define IEPOLY_TRIPLE_HPP

#include <cstdint>

#include "iepoly/modmath.hpp"

namespace iepoly {

/* n = x*qr + y*pr + z*pq + delta*pqr with 0 <= x < p, 0 <= y < q,
   0 <= z < r; unique for every integer n. */
struct Representation {
    Int x, y, z, delta;
};

struct Triple {
    // p is the smallest element; q and r keep the caller's order otherwise.
    Int p, q, r;
    Int pq, qr, pr, pqr;
    Int u, v, w;     // coordinates of n = 1, each in [0, element)
    Int delta1;      // completes u*qr + v*pr + w*pq + delta1*pqr = 1
    Int r_star;      // inverse of r mod pq
    Int f_deg;       // (p-1)(q-1)(r-1)

    /* Word-size mirror used on hot paths when everything fits. */
    struct Fast {
        bool ok = false;
        uint64_t p, q, r, pq, u, v;
        int64_t f_deg;
    } fast;
};

/* Validates (> 2, pairwise coprime), moves the smallest element into the
   p slot, derives the base parameters. */
Triple make_triple(const Int& e1, const Int& e2, const Int& e3);

Representation decompose(const Triple& t, const Int& n);

/* f(n) = x_n*q + y_n*p. */
Int f_val(const Triple& t, const Int& n);

/* 1 iff delta_n = 0.  For 0 <= n <= f_deg uses the f(n) <= floor(n/r)
   characterization; negative n are never representable. */
int chi(const Triple& t, const Int& n);

/* S(m): number of representable integers in the window (m-p, m]. */
Int window_sum(const Triple& t, const Int& m);

/* Coefficient of x^m, 0 <= m <= f_deg, in O(p) chi evaluations. */
int64_t coeff_at(const Triple& t, const Int& m);

} // namespace iepoly

#endif
