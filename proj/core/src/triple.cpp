#include "iepoly/triple.hpp"

#include <string>

namespace iepoly {

Triple make_triple(const Int& e1, const Int& e2, const Int& e3) {
    const Int* elems[3] = {&e1, &e2, &e3};
    for (int i = 0; i < 3; ++i)
        if (*elems[i] <= 2)
            throw validation_error("make_triple: element " + elems[i]->get_str() +
                                   " must exceed 2");
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (gcd(*elems[i], *elems[j]) != 1)
                throw validation_error("make_triple: elements " + elems[i]->get_str() + " and " +
                                       elems[j]->get_str() + " are not coprime");

    // rotate the smallest element into the p slot, keep the others' order
    int smallest = 0;
    for (int i = 1; i < 3; ++i)
        if (*elems[i] < *elems[smallest])
            smallest = i;

    Triple t;
    t.p = *elems[smallest];
    const Int* rest[2];
    int k = 0;
    for (int i = 0; i < 3; ++i)
        if (i != smallest)
            rest[k++] = elems[i];
    t.q = *rest[0];
    t.r = *rest[1];

    t.pq = t.p * t.q;
    t.qr = t.q * t.r;
    t.pr = t.p * t.r;
    t.pqr = t.pq * t.r;
    t.u = inv_mod(t.qr, t.p);
    t.v = inv_mod(t.pr, t.q);
    t.w = inv_mod(t.pq, t.r);
    Int rem = 1 - t.u * t.qr - t.v * t.pr - t.w * t.pq;
    t.delta1 = rem / t.pqr;
    if (t.delta1 * t.pqr != rem)
        throw internal_error("make_triple: base identity failed to close");
    t.r_star = inv_mod(t.r, t.pq);
    t.f_deg = (t.p - 1) * (t.q - 1) * (t.r - 1);

    if (t.p.fits_ulong_p() && t.q.fits_ulong_p() && t.r.fits_ulong_p() &&
        t.pqr < Int(1) << 62) {
        t.fast.ok = true;
        t.fast.p = t.p.get_ui();
        t.fast.q = t.q.get_ui();
        t.fast.r = t.r.get_ui();
        t.fast.pq = t.pq.get_ui();
        t.fast.u = t.u.get_ui();
        t.fast.v = t.v.get_ui();
        t.fast.f_deg = int64_t(mpz_get_ui(t.f_deg.get_mpz_t()));
    }
    return t;
}

Representation decompose(const Triple& t, const Int& n) {
    Representation rep;
    rep.x = lnr(t.u * n, t.p);
    rep.y = lnr(t.v * n, t.q);
    rep.z = lnr(t.w * n, t.r);
    Int rem = n - rep.x * t.qr - rep.y * t.pr - rep.z * t.pq;
    rep.delta = rem / t.pqr;
    if (rep.delta * t.pqr != rem)
        throw internal_error("decompose: representation failed to close");
    return rep;
}

Int f_val(const Triple& t, const Int& n) {
    return lnr(t.u * n, t.p) * t.q + lnr(t.v * n, t.q) * t.p;
}

namespace {

/* chi for 0 <= n <= f_deg with everything in machine words. */
inline int chi_fast(const Triple::Fast& f, uint64_t n) {
    uint64_t x = (f.u * (n % f.p)) % f.p;
    uint64_t y = (f.v * (n % f.q)) % f.q;
    return x * f.q + y * f.p <= n / f.r ? 1 : 0;
}

} // namespace

int chi(const Triple& t, const Int& n) {
    if (n < 0)
        return 0; // the bounded coordinates force delta <= -1
    if (n <= t.f_deg) {
        if (t.fast.ok)
            return chi_fast(t.fast, mpz_get_ui(n.get_mpz_t()));
        Int cap;
        mpz_fdiv_q(cap.get_mpz_t(), n.get_mpz_t(), t.r.get_mpz_t());
        return f_val(t, n) <= cap ? 1 : 0;
    }
    return decompose(t, n).delta == 0 ? 1 : 0;
}

Int window_sum(const Triple& t, const Int& m) {
    if (m < 0)
        return 0; // whole window below zero
    if (t.fast.ok && m <= t.f_deg && mpz_fits_slong_p(m.get_mpz_t())) {
        int64_t top = mpz_get_si(m.get_mpz_t());
        int64_t count = 0;
        for (int64_t n = top - int64_t(t.fast.p) + 1; n <= top; ++n)
            if (n >= 0)
                count += chi_fast(t.fast, uint64_t(n));
        return count;
    }
    if (!t.p.fits_ulong_p())
        throw resource_error("window_sum: smallest element too large to iterate");
    unsigned long width = t.p.get_ui();
    Int count = 0;
    Int n = m - long(width) + 1;
    for (unsigned long i = 0; i < width; ++i, ++n)
        count += chi(t, n);
    return count;
}

int64_t coeff_at(const Triple& t, const Int& m) {
    if (m < 0 || m > t.f_deg)
        throw validation_error("coeff_at: index outside [0, degree]");
    Int a = window_sum(t, m) - window_sum(t, m - t.q) - window_sum(t, m - t.r) +
            window_sum(t, m - t.q - t.r);
    return mpz_get_si(a.get_mpz_t());
}

} // namespace iepoly
