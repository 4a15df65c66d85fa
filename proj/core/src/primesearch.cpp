#include "iepoly/primesearch.hpp"

#include <sstream>

#include "iepoly/theorems.hpp"

namespace iepoly {

namespace {

std::vector<Int> primes_up_to(const Int& bound) {
    std::vector<Int> out;
    for (Int n = 2; n <= bound; ++n)
        if (is_prime(n))
            out.push_back(n);
    return out;
}

} // namespace

std::vector<Int> find_q_candidates(const Int& p, const Int& qmax) {
    if (!is_prime(p))
        throw validation_error("find_q_candidates: p must be prime");
    Int p8 = lnr(p, 8);
    if (p8 != 3 && p8 != 7)
        throw validation_error("find_q_candidates: p must be 3 or 7 (mod 8)");
    auto p2 = PrimePowerModulus::make(p, 2);
    std::vector<Int> out;
    for (const Int& q : primes_up_to(qmax)) {
        if (q <= p)
            continue;
        if (lnr(q, 8) != p8)
            continue;
        if (gcd(Int(q - 1), Int(p - 1)) != 2)
            continue; // vacuous for p = 3: gcd is always 2 there
        if (!is_primitive_root(q, p2))
            continue;
        out.push_back(q);
    }
    return out;
}

std::vector<Int> find_r_candidates(const Int& p, const Int& q, const Int& rmax) {
    if (!is_prime(p) || !is_prime(q) || p >= q)
        throw validation_error("find_r_candidates: p and q must be primes with p < q");
    auto p2 = PrimePowerModulus::make(p, 2);
    auto q2 = PrimePowerModulus::make(q, 2);
    Int p8 = lnr(p, 8), q8 = lnr(q, 8);
    bool pq_ok = p8 == q8 && (p8 == 3 || p8 == 7) && gcd(Int(p - 1), Int(q - 1)) == 2 &&
                 is_primitive_root(q, p2);
    if (!pq_ok)
        throw validation_error("find_r_candidates: (p, q) fail the hypothesis conditions");
    std::vector<Int> out;
    for (const Int& r : primes_up_to(rmax)) {
        if (r == p || r == q)
            continue;
        if (!is_primitive_root(r, p2) || !is_primitive_root(r, q2))
            continue;
        out.push_back(r);
    }
    return out;
}

std::vector<TripleCandidate> find_triples(const Int& pmax, const Int& qmax, const Int& rmax) {
    std::vector<TripleCandidate> out;
    for (const Int& p : primes_up_to(pmax)) {
        Int p8 = lnr(p, 8);
        if (p8 != 3 && p8 != 7)
            continue;
        auto p2 = PrimePowerModulus::make(p, 2);
        for (const Int& q : find_q_candidates(p, qmax)) {
            auto q2 = PrimePowerModulus::make(q, 2);
            for (const Int& r : find_r_candidates(p, q, rmax)) {
                TripleCandidate cand;
                cand.p = p;
                cand.q = q;
                cand.r = r;
                cand.q_mod8 = lnr(q, 8);
                cand.q_mod_half_p1 = lnr(q, std::max(Int(1), Int((p - 1) / 2)));
                cand.q_mod_p2 = lnr(q, p2.value);
                cand.r_mod_p2 = lnr(r, p2.value);
                cand.r_mod_q2 = lnr(r, q2.value);
                cand.q_primitive_p2 = true;
                cand.r_primitive_p2 = true;
                cand.r_primitive_q2 = true;
                if (!thm3_precheck(p, q, r).all())
                    throw internal_error("find_triples: emitted candidate fails the precheck");
                out.push_back(cand);
            }
        }
    }
    return out;
}

std::string candidate_json(const TripleCandidate& c) {
    std::ostringstream os;
    os << "{\"p\":\"" << c.p.get_str() << "\",\"q\":\"" << c.q.get_str() << "\",\"r\":\""
       << c.r.get_str() << "\",\"q_mod8\":\"" << c.q_mod8.get_str()
       << "\",\"q_mod_half_p1\":\"" << c.q_mod_half_p1.get_str() << "\",\"q_mod_p2\":\""
       << c.q_mod_p2.get_str() << "\",\"r_mod_p2\":\"" << c.r_mod_p2.get_str()
       << "\",\"r_mod_q2\":\"" << c.r_mod_q2.get_str() << "\",\"q_primitive_p2\":"
       << (c.q_primitive_p2 ? "true" : "false")
       << ",\"r_primitive_p2\":" << (c.r_primitive_p2 ? "true" : "false")
       << ",\"r_primitive_q2\":" << (c.r_primitive_q2 ? "true" : "false") << "}";
    return os.str();
}

} // namespace iepoly
