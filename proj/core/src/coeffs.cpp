#include "iepoly/coeffs.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <sstream>

namespace iepoly {

namespace {

constexpr int64_t kOverflowGuard = int64_t(1) << 62;

uint64_t to_u64(const Int& n) { return mpz_get_ui(n.get_mpz_t()); }

void summarize(CoeffResult& res) {
    const auto& c = *res.coefficients;
    int32_t lo = c[0], hi = c[0];
    for (int32_t v : c) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    // second pass only collects the (tiny) set of distinct values
    std::vector<char> present(size_t(hi - lo) + 1, 0);
    for (int32_t v : c)
        present[size_t(v - lo)] = 1;
    res.set_min = lo;
    res.set_max = hi;
    res.diameter = int64_t(hi) - lo;
    res.values.clear();
    for (size_t i = 0; i < present.size(); ++i)
        if (present[i])
            res.values.push_back(lo + int64_t(i));
}

void check_structure(const Triple& t, const CoeffResult& res, const char* engine) {
    const auto& c = *res.coefficients;
    if (c.front() != 1 || c.back() != 1)
        throw internal_error(std::string(engine) + ": constant or leading coefficient != 1");
    int64_t sum = 0;
    for (int32_t v : c)
        sum += v;
    if (sum != 1)
        throw internal_error(std::string(engine) + ": coefficient sum != 1");
    if (Int(res.diameter) > std::min(t.p, std::min(t.q, t.r)))
        throw internal_error(std::string(engine) + ": diameter bound violated");
}

/* Exact division oracle.  Builds the product of the four numerator
   binomials in one int64 array, then divides by each denominator binomial
   in place; dividing by (x^s - 1) is the ascending recurrence
   b[i] = b[i-s] - a[i], and the s trailing entries must come out equal to
   the adjacent quotient values (zero remainder). */
CoeffResult oracle_engine(const Triple& t, std::size_t max_cells) {
    Int num_deg_z = t.pqr + t.p + t.q + t.r;
    if (num_deg_z + 1 > Int(max_cells))
        throw resource_error("coeff_vector: degree exceeds cell cap, use coeff_at");
    size_t num_deg = size_t(to_u64(num_deg_z));
    size_t pqr = size_t(to_u64(t.pqr));
    std::vector<int64_t> buf(num_deg + 1, 0);

    buf[0] = -1;
    buf[pqr] = 1;
    size_t deg = pqr;
    for (const Int& sz : {t.p, t.q, t.r}) {
        size_t s = size_t(to_u64(sz));
        for (size_t i = deg + s + 1; i-- > 0;) {
            int64_t shifted = i >= s ? buf[i - s] : 0;
            buf[i] = shifted - buf[i];
        }
        deg += s;
    }
    for (const Int& sz : {t.pq, t.qr, t.pr, Int(1)}) {
        size_t s = size_t(to_u64(sz));
        size_t new_deg = deg - s;
        for (size_t i = 0; i <= new_deg; ++i) {
            int64_t shifted = i >= s ? buf[i - s] : 0;
            int64_t q = shifted - buf[i];
            if (q >= kOverflowGuard || q <= -kOverflowGuard)
                throw internal_error("oracle: intermediate coefficient overflow");
            buf[i] = q;
        }
        for (size_t i = new_deg + 1; i <= deg; ++i)
            if (buf[i] != buf[i - s])
                throw internal_error("oracle: nonzero remainder");
        deg = new_deg;
    }
    if (Int(deg) != t.f_deg)
        throw internal_error("oracle: quotient degree mismatch");

    CoeffResult res;
    res.degree = t.f_deg;
    std::vector<int32_t> coeffs(deg + 1);
    for (size_t i = 0; i <= deg; ++i) {
        if (buf[i] > std::numeric_limits<int32_t>::max() ||
            buf[i] < std::numeric_limits<int32_t>::min())
            throw internal_error("oracle: coefficient exceeds 32 bits");
        coeffs[i] = int32_t(buf[i]);
    }
    res.coefficients = std::move(coeffs);
    summarize(res);
    check_structure(t, res, "oracle");
    return res;
}

/* Truncated-product engine: mark the representable integers by direct
   lattice enumeration (each value hit at most once, by uniqueness of the
   bounded representation), run a width-p sliding window, then the
   four-term combination. */
CoeffResult truncated_engine(const Triple& t, std::size_t max_cells) {
    if (t.f_deg + 1 > Int(max_cells))
        throw resource_error("coeff_vector: degree exceeds cell cap, use coeff_at");
    size_t deg = size_t(to_u64(t.f_deg));
    uint64_t p = to_u64(t.p), q = to_u64(t.q), r = to_u64(t.r);
    uint64_t qr = to_u64(t.qr), pr = to_u64(t.pr), pq = to_u64(t.pq);

    std::vector<int32_t> cells(deg + 1, 0);
    for (uint64_t i = 0; i < p; ++i) {
        uint64_t base_i = i * qr;
        if (base_i > deg)
            break;
        for (uint64_t j = 0; j < q; ++j) {
            uint64_t base_ij = base_i + j * pr;
            if (base_ij > deg)
                break;
            uint64_t kmax = std::min(r - 1, (deg - base_ij) / pq);
            for (uint64_t k = 0; k <= kmax; ++k)
                ++cells[base_ij + k * pq];
        }
    }

    // sliding window of width p over chi, with a ring of displaced values
    std::vector<int32_t> ring(p, 0);
    int64_t acc = 0;
    for (size_t m = 0; m <= deg; ++m) {
        int32_t entering = cells[m];
        size_t slot = m % p;
        acc += entering - ring[slot];
        ring[slot] = entering;
        if (acc > std::numeric_limits<int32_t>::max())
            throw internal_error("truncated: window sum overflow");
        cells[m] = int32_t(acc);
    }

    // a_m = W[m] - W[m-q] - W[m-r] + W[m-q-r], in place from the top
    for (size_t m = deg + 1; m-- > 0;) {
        int64_t val = cells[m];
        if (m >= q)
            val -= cells[m - q];
        if (m >= r)
            val -= cells[m - r];
        if (m >= q + r)
            val += cells[m - q - r];
        cells[m] = int32_t(val);
    }

    CoeffResult res;
    res.degree = t.f_deg;
    res.coefficients = std::move(cells);
    summarize(res);
    check_structure(t, res, "truncated");
    return res;
}

} // namespace

CoeffResult coeff_vector(const Triple& t, Engine engine, std::size_t max_cells) {
    if (!t.fast.ok)
        throw resource_error("coeff_vector: triple too large for dense engines, use coeff_at");
    return engine == Engine::oracle ? oracle_engine(t, max_cells)
                                    : truncated_engine(t, max_cells);
}

CoeffResult coeff_set(const Triple& t, std::size_t max_cells) {
    CoeffResult res;
    if (t.fast.ok && t.f_deg + 1 <= Int(max_cells)) {
        res = coeff_vector(t, Engine::truncated, max_cells);
        res.coefficients.reset();
    } else if (scan_applicable(t)) {
        res = coeff_set_scan(t);
    } else {
        throw resource_error("coeff_set: degree exceeds cell cap and the window scan "
                             "does not apply; use coeff_at");
    }
    if (int64_t(res.values.size()) != res.diameter + 1)
        throw internal_error("coeff_set: coefficient set is not contiguous");
    return res;
}

void write_csv(std::ostream& os, const CoeffResult& result) {
    if (!result.coefficients)
        throw validation_error("write_csv: no dense coefficients present");
    os << "m,a_m\n";
    const auto& c = *result.coefficients;
    for (size_t m = 0; m < c.size(); ++m)
        os << m << ',' << c[m] << '\n';
}

std::string summary_json(const Triple& t, const CoeffResult& result) {
    std::ostringstream os;
    os << "{\"p\":\"" << t.p.get_str() << "\",\"q\":\"" << t.q.get_str() << "\",\"r\":\""
       << t.r.get_str() << "\",\"degree\":\"" << result.degree.get_str()
       << "\",\"min\":" << result.set_min << ",\"max\":" << result.set_max
       << ",\"diameter\":" << result.diameter << "}";
    return os.str();
}

} // namespace iepoly
