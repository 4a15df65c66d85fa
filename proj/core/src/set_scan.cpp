/* Window-scan coefficient-set engine.

   For a triple with largest element r and the other two p <= q, split
   [0, f_deg] into blocks of length r.  Inside a block, chi(n) depends only
   on n mod pq and on the block index k (chi(n) = 1 iff f(n) <= k), so each
   of the four windows entering a coefficient is a table lookup
   G_k(s) = #{ j < p : f((s-j) mod pq) <= k } as long as the window stays
   inside one block.  Windows that straddle a block boundary only occur for
   offsets j in [0, p-2] or [q, q+p-2] within a block; those coefficients
   are evaluated directly.  Every distinct coefficient value in [0, f_deg]
   is visited exactly by this split, so the collected value set is exact. */

#include "iepoly/coeffs.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace iepoly {

namespace {

struct SortedRoles {
    Int a, b, c; // a <= b < c
};

SortedRoles sorted_roles(const Triple& t) {
    Int e[3] = {t.p, t.q, t.r};
    std::sort(e, e + 3);
    return {e[0], e[1], e[2]};
}

} // namespace

bool scan_applicable(const Triple& t) {
    SortedRoles s = sorted_roles(t);
    Int pq = s.a * s.b;
    if (s.c < pq + s.a + s.b)
        return false; // blocks too short for the periodic region
    if (pq > 65536)
        return false;
    Int kmax = (s.a - 1) * (s.b - 1); // upper bound for f_deg / r
    Int ops = kmax * (2 * pq + 16 * s.a * s.a);
    return ops <= Int(uint64_t(1) << 32);
}

CoeffResult coeff_set_scan(const Triple& input) {
    if (!scan_applicable(input))
        throw resource_error("coeff_set_scan: triple outside the scan's applicability range");
    SortedRoles roles = sorted_roles(input);
    Triple t = make_triple(roles.a, roles.b, roles.c);

    const uint64_t p = t.p.get_ui();
    const uint64_t q = t.q.get_ui();
    const uint64_t pq = p * q;
    const uint64_t u = t.u.get_ui();
    const uint64_t v = t.v.get_ui();
    const uint64_t rmod = mpz_fdiv_ui(t.r.get_mpz_t(), pq);

    // f over one period of n mod pq
    std::vector<uint32_t> F(pq);
    for (uint64_t s = 0; s < pq; ++s)
        F[s] = uint32_t((u * (s % p)) % p * q + (v * (s % q)) % q * p);

    // activation order: position s enters the G table when k reaches F[s]
    std::vector<uint32_t> order(pq);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](uint32_t lhs, uint32_t rhs) { return F[lhs] < F[rhs]; });

    Int kmax_z, jtop_z;
    mpz_fdiv_qr(kmax_z.get_mpz_t(), jtop_z.get_mpz_t(), t.f_deg.get_mpz_t(), t.r.get_mpz_t());
    const uint64_t kmax = kmax_z.get_ui(); // < (p-1)(q-1)

    std::vector<int32_t> g_cur(pq, 0), g_prev(pq, 0), g_prev2(pq, 0);
    size_t activated = 0;

    std::set<int64_t> values;
    auto collect = [&values](int64_t val) { values.insert(val); };

    const int64_t q_off = int64_t(q % pq);
    const int64_t r_off = int64_t(rmod);

    for (uint64_t k = 0; k <= kmax; ++k) {
        // roll tables and activate this block's chi positions
        std::swap(g_prev2, g_prev);
        std::swap(g_prev, g_cur);
        g_cur = g_prev;
        while (activated < pq && F[order[activated]] == k) {
            uint64_t s = order[activated++];
            for (uint64_t j = 0; j < p; ++j)
                ++g_cur[(s + j) % pq];
        }

        Int block_base = Int(k) * t.r;
        bool top = (k == kmax);
        uint64_t s_block = mpz_fdiv_ui(block_base.get_mpz_t(), pq);

        auto table_at = [&](const std::vector<int32_t>& g, int64_t idx) {
            int64_t m = idx % int64_t(pq);
            if (m < 0)
                m += pq;
            return int64_t(g[size_t(m)]);
        };
        // block indices per window: (k, k-kappa, k-1, k-1-kappa)
        auto generic_value = [&](uint64_t s, bool kappa) {
            const auto& gk = g_cur;
            const auto& gk1 = g_prev;
            int64_t val = table_at(gk, int64_t(s));
            val -= table_at(kappa ? gk1 : gk, int64_t(s) - q_off);
            val -= table_at(gk1, int64_t(s) - r_off);
            val += table_at(kappa ? g_prev2 : gk1, int64_t(s) - q_off - r_off);
            return val;
        };

        // straddling offsets: evaluate directly
        auto direct = [&](uint64_t j) {
            Int m = block_base + j;
            if (m <= t.f_deg)
                collect(coeff_at(t, m));
        };
        for (uint64_t j = 0; j + 1 < p; ++j)
            direct(j);
        for (uint64_t j = q; j < q + p - 1; ++j)
            direct(j);

        // kappa = 1 region: j in [p-1, q-1]
        {
            uint64_t j_end = q - 1;
            if (top && jtop_z < Int(j_end))
                j_end = jtop_z.get_ui();
            for (uint64_t j = p - 1; j <= j_end; ++j)
                collect(generic_value((s_block + j) % pq, true));
        }

        // kappa = 0 region: j in [q+p-1, r-1]; covers every residue mod pq
        // in a full block, so one pass over s suffices
        {
            Int len = (top ? jtop_z : t.r - 1) - (q + p - 1) + 1;
            if (len >= Int(pq)) {
                for (uint64_t s = 0; s < pq; ++s)
                    collect(generic_value(s, false));
            } else if (len > 0) {
                uint64_t count = len.get_ui();
                uint64_t s0 = (s_block + (q + p - 1)) % pq;
                for (uint64_t i = 0; i < count; ++i)
                    collect(generic_value((s0 + i) % pq, false));
            }
        }
    }

    CoeffResult res;
    res.degree = t.f_deg;
    res.values.assign(values.begin(), values.end());
    res.set_min = res.values.front();
    res.set_max = res.values.back();
    res.diameter = res.set_max - res.set_min;
    return res;
}

} // namespace iepoly
