#include "iepoly/theorems.hpp"

#include <algorithm>
#include <sstream>

namespace iepoly {

namespace {

Int ipow(const Int& base, unsigned long e) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

unsigned long to_ulong_checked(const Int& n, const char* what) {
    if (!n.fits_ulong_p())
        throw resource_error(std::string(what) + ": value too large");
    return n.get_ui();
}

/* r^c > bound without materializing r^c. */
bool pow_exceeds(const Int& r, const Int& c, const Int& bound) {
    if (r < 2)
        return false;
    size_t bound_bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
    if (c >= Int(bound_bits))
        return true; // r^c >= 2^c >= 2^bits > bound
    Int small = ipow(r, to_ulong_checked(c, "pow_exceeds"));
    return small > bound;
}

/* x > (1/4 - eps) * P, exactly. */
bool beyond_margin(const Int& x, const Int& P, const Rational& eps) {
    return 4 * eps.den * x > (eps.den - 4 * eps.num) * P;
}

void validate_epsilon(const Rational& eps) {
    if (eps.den <= 0 || eps.num <= 0 || 4 * eps.num >= eps.den)
        throw validation_error("epsilon must lie strictly between 0 and 1/4");
}

constexpr size_t kMaterializeBitsCap = 1u << 26; // ~20M decimal digits

Int materialize_pow(const Int& r, const Int& c, const char* what) {
    size_t rbits = mpz_sizeinbase(r.get_mpz_t(), 2);
    if (Int(rbits) * c > Int(kMaterializeBitsCap))
        throw resource_error(std::string(what) + ": power too large to materialize");
    return ipow(r, to_ulong_checked(c, what));
}

} // namespace

/* ---- Rational ---- */

Rational Rational::parse(const std::string& text) {
    try {
        auto slash = text.find('/');
        if (slash != std::string::npos) {
            Rational r{Int(text.substr(0, slash)), Int(text.substr(slash + 1))};
            if (r.den == 0)
                throw validation_error("rational: zero denominator");
            if (r.den < 0) {
                r.den = -r.den;
                r.num = -r.num;
            }
            Int g = gcd(r.num, r.den);
            if (g > 1) {
                r.num /= g;
                r.den /= g;
            }
            return r;
        }
        auto dot = text.find('.');
        if (dot == std::string::npos)
            return Rational{Int(text), 1};
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        size_t frac_len = text.size() - dot - 1;
        Rational r{Int(digits), 1};
        for (size_t k = 0; k < frac_len; ++k)
            r.den *= 10;
        Int g = gcd(r.num, r.den);
        if (g > 1) {
            r.num /= g;
            r.den /= g;
        }
        return r;
    } catch (const std::invalid_argument&) {
        throw validation_error("rational: cannot parse '" + text + "'");
    }
}

std::string Rational::str() const { return num.get_str() + "/" + den.get_str(); }

/* ---- prop4 ---- */

Prop4Report prop4_check(const Triple& t, std::size_t max_cells) {
    Prop4Report rep;
    rep.p = t.p;
    rep.q = t.q;
    rep.r = t.r;
    rep.p_odd = mpz_odd_p(t.p.get_mpz_t());
    rep.q_odd = mpz_odd_p(t.q.get_mpz_t());
    rep.q_congruent = lnr(t.q, t.p) == lnr(2, t.p);
    rep.r_congruent =
        rep.p_odd && rep.q_odd && lnr(t.r, t.pq) == (t.pq - 1) / 2;
    rep.hypotheses = rep.p_odd && rep.q_odd && rep.q_congruent && rep.r_congruent;
    if (!rep.hypotheses)
        return rep;
    try {
        CoeffResult set = coeff_set(t, max_cells);
        Int lo = -(t.p - 1) / 2, hi = (t.p + 1) / 2;
        if (Int(set.set_min) == lo && Int(set.set_max) == hi)
            rep.match = Prop4Report::Match::stated;
        else if (Int(set.set_min) == -hi && Int(set.set_max) == -lo)
            rep.match = Prop4Report::Match::reflected;
        else
            rep.match = Prop4Report::Match::neither;
        rep.set = std::move(set);
    } catch (const resource_error&) {
        rep.match = Prop4Report::Match::not_computed;
    }
    return rep;
}

/* ---- thm3 ---- */

Thm3Precheck thm3_precheck(const Int& p, const Int& q, const Int& r) {
    if (!is_prime(p) || !is_prime(q) || !is_prime(r))
        throw validation_error("thm3_precheck: inputs must be prime");
    if (p == q || p == r || q == r)
        throw validation_error("thm3_precheck: primes must be distinct");
    if (p >= q)
        throw validation_error("thm3_precheck: requires p < q");
    Thm3Precheck pc;
    pc.primes = true;
    Int p8 = lnr(p, 8), q8 = lnr(q, 8);
    pc.mod8 = (p8 == q8) && (p8 == 3 || p8 == 7);
    pc.gcd_two = gcd(Int(p - 1), Int(q - 1)) == 2;
    if (p != 2) { // p = 2 already fails the mod-8 condition
        auto p2 = PrimePowerModulus::make(p, 2);
        auto q2 = PrimePowerModulus::make(q, 2);
        pc.q_primitive = is_primitive_root(q, p2);
        pc.r_primitive_p2 = is_primitive_root(r, p2);
        pc.r_primitive_q2 = is_primitive_root(r, q2);
    }
    return pc;
}

Thm3Certificate thm3_construct(const Int& p, const Int& q, const Int& r, unsigned long a) {
    Thm3Precheck pc = thm3_precheck(p, q, r);
    if (!pc.all()) {
        std::ostringstream os;
        os << "thm3_construct: hypotheses not met:";
        if (!pc.mod8)
            os << " [p,q not congruent to a common 3 or 7 mod 8]";
        if (!pc.gcd_two)
            os << " [gcd(p-1,q-1) != 2]";
        if (!pc.q_primitive)
            os << " [q not a primitive root mod p^2]";
        if (!pc.r_primitive_p2)
            os << " [r not a primitive root mod p^2]";
        if (!pc.r_primitive_q2)
            os << " [r not a primitive root mod q^2]";
        throw hypothesis_error(os.str());
    }
    if (a < 1)
        throw validation_error("thm3_construct: exponent a must be >= 1");

    Thm3Certificate cert;
    cert.p = p;
    cert.q = q;
    cert.r = r;
    cert.a = a;
    auto P = PrimePowerModulus::make(p, a);
    cert.P = P.value;
    cert.phiP = P.totient;

    auto db = dlog_prime_power(q, 2, P);
    if (!db || db->order != P.totient)
        throw internal_error("thm3_construct: dlog of 2 base q failed despite primitive root");
    Int b = db->exponent;
    while (b < 1 || !pow_exceeds(q, b, P.value))
        b += P.totient;
    cert.b = b;
    cert.Q = materialize_pow(q, b, "thm3_construct Q");
    cert.phiQ = cert.Q / q * (q - 1);
    auto Qm = PrimePowerModulus::make(q, to_ulong_checked(b, "thm3_construct b"));

    auto di = dlog_prime_power(r, (P.value - 1) / 2, P);
    auto dj = dlog_prime_power(r, (cert.Q - 1) / 2, Qm);
    if (!di || !dj)
        throw internal_error("thm3_construct: guaranteed dlog has no solution");
    cert.i = di->exponent;
    cert.j = dj->exponent;

    cert.parity_expected = legendre_minus_two(p);
    bool i_even = mpz_even_p(cert.i.get_mpz_t());
    bool j_even = mpz_even_p(cert.j.get_mpz_t());
    if (i_even != j_even || i_even != (cert.parity_expected == 1))
        throw internal_error("thm3_construct: parity of dlog exponents contradicts the "
                             "quadratic character of -2");

    auto crt = crt_general(cert.i, cert.phiP, cert.j, cert.phiQ);
    if (!crt)
        throw internal_error("thm3_construct: exponent congruences insoluble despite "
                             "matching parity");
    Int c = crt->residue == 0 ? crt->modulus : crt->residue;
    while (!pow_exceeds(r, c, P.value))
        c += crt->modulus;
    cert.c = c;

    size_t rbits = mpz_sizeinbase(r.get_mpz_t(), 2);
    if (Int(rbits) * c <= 340000) { // about 1e5 decimal digits
        cert.R = ipow(r, to_ulong_checked(c, "thm3_construct R"));
        cert.R_digits = cert.R->get_str().size();
    }
    return cert;
}

VerifyOutcome verify_thm3(const Thm3Certificate& cert) {
    VerifyOutcome out;
    try {
        Thm3Precheck pc = thm3_precheck(cert.p, cert.q, cert.r);
        out.require(pc.all(), "precheck conditions hold for (p,q,r)");
    } catch (const validation_error& e) {
        out.require(false, std::string("precheck rejected inputs: ") + e.what());
        return out;
    }
    Int P = ipow(cert.p, cert.a);
    out.require(P == cert.P, "P = p^a");
    Int phiP = P / cert.p * (cert.p - 1);
    out.require(phiP == cert.phiP, "phi(P) recomputes");
    out.require(cert.b >= 1 && cert.c >= 1, "exponents b, c >= 1");
    bool b_ok = cert.b.fits_ulong_p();
    out.require(b_ok, "b fits a machine word");
    if (!b_ok)
        return out;
    Int Q = ipow(cert.q, cert.b.get_ui());
    out.require(Q == cert.Q, "Q = q^b");
    Int phiQ = Q / cert.q * (cert.q - 1);
    out.require(phiQ == cert.phiQ, "phi(Q) recomputes");
    out.require(mpz_odd_p(P.get_mpz_t()) && mpz_odd_p(Q.get_mpz_t()), "P and Q odd");
    out.require(P < Q, "P < Q");
    out.require(pow_exceeds(cert.r, cert.c, P), "R > P");
    out.require(lnr(Q, P) == lnr(2, P), "Q = 2 (mod P)");
    out.require(pow_mod(cert.r, cert.c, P * Q) == (P * Q - 1) / 2,
                "R = (PQ-1)/2 (mod PQ)");
    out.require(pow_mod(cert.r, cert.i, P) == (P - 1) / 2, "r^i = (P-1)/2 (mod P)");
    out.require(pow_mod(cert.r, cert.j, Q) == (Q - 1) / 2, "r^j = (Q-1)/2 (mod Q)");
    out.require(lnr(cert.c - cert.i, phiP) == 0, "c = i (mod phi(P))");
    out.require(lnr(cert.c - cert.j, phiQ) == 0, "c = j (mod phi(Q))");
    bool i_even = mpz_even_p(cert.i.get_mpz_t());
    bool j_even = mpz_even_p(cert.j.get_mpz_t());
    out.require(i_even == j_even, "i and j share parity");
    out.require(legendre_minus_two(cert.p) == cert.parity_expected,
                "recorded parity note matches the character of -2");
    out.require(i_even == (cert.parity_expected == 1), "parity matches the character of -2");
    if (cert.R)
        out.require(*cert.R == materialize_pow(cert.r, cert.c, "verify_thm3"),
                    "materialized R equals r^c");
    return out;
}

/* ---- prop5 ---- */

namespace {

struct RoleQuantities {
    Triple t;
    Int x_q, x_r, mu, C;
    bool u_le_mu = false, q_gt_p2 = false, v_large = false;
    bool ok() const { return u_le_mu && q_gt_p2 && v_large; }
};

RoleQuantities role_quantities(const Triple& t) {
    RoleQuantities rq;
    rq.t = t;
    rq.x_q = lnr(t.u * t.q, t.p);
    rq.x_r = lnr(t.u * t.r, t.p);
    rq.mu = std::min(std::min(rq.x_q, rq.x_r), std::min(Int(t.p - rq.x_q), Int(t.p - rq.x_r)));
    rq.C = rq.mu / t.u;
    rq.u_le_mu = t.u <= rq.mu;
    rq.q_gt_p2 = t.q > t.p * t.p;
    rq.v_large = t.v * t.p * t.p > t.q * (t.p * t.p - 1); // v > q - q/p^2
    return rq;
}

/* Representability claims backing the window counts around ell. */
bool prop5_chi_claims(const Triple& t, const Int& ell, const Int& C, const Int& q_prime,
                      const Int& r_prime) {
    long p = long(to_ulong_checked(t.p, "prop5 chi claims"));
    long Cl = long(to_ulong_checked(C, "prop5 chi claims"));
    for (long i = 0; i <= Cl - 1; ++i)
        if (chi(t, ell - i) != 1)
            return false;
    for (long i = 1; i < p; ++i)
        if (chi(t, ell + i) != 0)
            return false;
    for (long i = -Cl + 1; i < p; ++i) {
        if (chi(t, ell - r_prime + i) != 0)
            return false;
        if (chi(t, ell + r_prime + i) != 0)
            return false;
        if (chi(t, ell - q_prime + i) != 0)
            return false;
    }
    return true;
}

} // namespace

Prop5Certificate prop5_certify(const Triple& t) {
    Prop5Certificate cert;

    RoleQuantities as_given = role_quantities(t);
    RoleQuantities swapped = role_quantities(make_triple(t.p, t.r, t.q));
    cert.roles_tried.push_back({as_given.t.q, as_given.q_gt_p2, as_given.v_large});
    cert.roles_tried.push_back({swapped.t.q, swapped.q_gt_p2, swapped.v_large});

    const RoleQuantities* chosen = nullptr;
    if (as_given.ok())
        chosen = &as_given;
    else if (swapped.ok())
        chosen = &swapped;

    const RoleQuantities& rq = chosen ? *chosen : as_given;
    cert.p = rq.t.p;
    cert.q = rq.t.q;
    cert.r = rq.t.r;
    cert.u = rq.t.u;
    cert.v = rq.t.v;
    cert.w = rq.t.w;
    cert.x_q = rq.x_q;
    cert.x_r = rq.x_r;
    cert.mu = rq.mu;
    cert.C = rq.C;
    cert.hyp_u_le_mu = rq.u_le_mu;
    cert.hyp_q_gt_p2 = rq.q_gt_p2;
    cert.hyp_v_large = rq.v_large;
    cert.hypotheses_ok = chosen != nullptr;
    if (!cert.hypotheses_ok)
        return cert;

    const Triple& tc = rq.t;
    cert.a_param = (cert.C - 1) * tc.u;
    cert.ell = cert.a_param * tc.q * tc.r;
    cert.q_prime = rq.x_q < tc.p - rq.x_q ? tc.q : -tc.q;
    cert.r_prime = rq.x_r < tc.p - rq.x_r ? tc.r : -tc.r;

    Int m = cert.ell + tc.p - cert.C;
    if (cert.q_prime > 0) {
        cert.witness_plus = m;
        cert.witness_minus = m + tc.r;
    } else {
        cert.witness_minus = m + tc.q;
        cert.witness_plus = m + tc.q + tc.r;
    }

    cert.chi_claims_ok = prop5_chi_claims(tc, cert.ell, cert.C, cert.q_prime, cert.r_prime);
    if (!cert.chi_claims_ok)
        throw internal_error("prop5_certify: a window claim failed under verified hypotheses");

    cert.coeff_plus = coeff_at(tc, cert.witness_plus);
    cert.coeff_minus = coeff_at(tc, cert.witness_minus);
    if (Int(cert.coeff_plus) < cert.C || Int(cert.coeff_minus) > -cert.C)
        throw internal_error("prop5_certify: witness coefficients miss the guaranteed bound");
    return cert;
}

VerifyOutcome verify_prop5(const Prop5Certificate& cert) {
    VerifyOutcome out;
    Triple t;
    try {
        t = make_triple(cert.p, cert.q, cert.r);
    } catch (const validation_error& e) {
        out.require(false, std::string("triple invalid: ") + e.what());
        return out;
    }
    out.require(t.p == cert.p && t.q == cert.q && t.r == cert.r,
                "p is the smallest element in the recorded roles");
    RoleQuantities rq = role_quantities(t);
    out.require(rq.t.u == cert.u && rq.t.v == cert.v && rq.t.w == cert.w,
                "base parameters u, v, w recompute");
    out.require(rq.x_q == cert.x_q && rq.x_r == cert.x_r, "x_q and x_r recompute");
    out.require(rq.mu == cert.mu && rq.C == cert.C, "mu and C recompute");
    out.require(rq.u_le_mu == cert.hyp_u_le_mu && rq.q_gt_p2 == cert.hyp_q_gt_p2 &&
                    rq.v_large == cert.hyp_v_large,
                "hypothesis flags recompute");
    out.require(cert.hypotheses_ok == rq.ok(), "overall hypothesis flag recomputes");
    if (!cert.hypotheses_ok)
        return out;
    out.require(cert.a_param == (cert.C - 1) * cert.u, "a = (C-1)u");
    out.require(cert.ell == cert.a_param * cert.q * cert.r, "ell = a*q*r");
    Int qp = rq.x_q < t.p - rq.x_q ? t.q : -t.q;
    Int rp = rq.x_r < t.p - rq.x_r ? t.r : -t.r;
    out.require(qp == cert.q_prime && rp == cert.r_prime, "signed selectors recompute");
    Int m = cert.ell + t.p - cert.C;
    Int wplus = qp > 0 ? m : m + t.q + t.r;
    Int wminus = qp > 0 ? m + t.r : m + t.q;
    out.require(wplus == cert.witness_plus && wminus == cert.witness_minus,
                "witness indices recompute");
    out.require(prop5_chi_claims(t, cert.ell, cert.C, qp, rp), "window claims re-verify");
    int64_t cplus = coeff_at(t, cert.witness_plus);
    int64_t cminus = coeff_at(t, cert.witness_minus);
    out.require(cplus == cert.coeff_plus && cminus == cert.coeff_minus,
                "witness coefficients re-evaluate to the recorded values");
    out.require(Int(cplus) >= cert.C, "a_{m+} >= C");
    out.require(Int(cminus) <= -cert.C, "a_{m-} <= -C");
    return out;
}

/* ---- lemma4 ---- */

std::optional<Lemma4Witness> lemma4_search(const Int& p, const Int& q, const Int& r,
                                           unsigned long a, const Rational& epsilon) {
    validate_epsilon(epsilon);
    auto P = PrimePowerModulus::make(p, a);
    if (gcd(q, P.value) != 1 || gcd(r, P.value) != 1)
        throw validation_error("lemma4_search: q and r must be coprime to p");

    Int ordq = mult_order(q, P.value);
    Int qi = 1;
    for (Int i = 0; i < ordq; ++i) {
        if (i > 0)
            qi = qi * q % P.value;
        if (!beyond_margin(qi, P.value, epsilon) ||
            !beyond_margin(P.value - qi, P.value, epsilon))
            continue;
        Int target = inv_mod(qi, P.value);
        if (!beyond_margin(target, P.value, epsilon) ||
            !beyond_margin(P.value - target, P.value, epsilon))
            continue;
        auto dj = dlog_prime_power(r, target, P);
        if (!dj)
            continue;
        Lemma4Witness w{i, dj->exponent, qi, target};
        // self-verification before returning
        if (pow_mod(q, w.i, P.value) * pow_mod(r, w.j, P.value) % P.value != 1)
            throw internal_error("lemma4_search: witness fails its own congruence");
        if (!beyond_margin(w.q_residue, P.value, epsilon) ||
            !beyond_margin(P.value - w.q_residue, P.value, epsilon) ||
            !beyond_margin(w.r_residue, P.value, epsilon) ||
            !beyond_margin(P.value - w.r_residue, P.value, epsilon))
            throw internal_error("lemma4_search: witness fails the margin condition");
        return w;
    }
    return std::nullopt;
}

/* ---- thm1 ---- */

Thm1Certificate thm1_construct(const Int& p, const Int& q, const Int& r, unsigned long a,
                               const Rational& epsilon, const Thm1Options& opts) {
    validate_epsilon(epsilon);
    if (opts.slack_exponent < 2)
        throw validation_error("thm1_construct: slack exponent must be >= 2");
    if (!is_prime(p) || !is_prime(q) || !is_prime(r) || p == q || p == r || q == r)
        throw validation_error("thm1_construct: p, q, r must be distinct primes");

    auto w4 = lemma4_search(p, q, r, a, epsilon);
    if (!w4)
        throw hypothesis_error("thm1_construct: no exponent pair found at this a; "
                               "try a larger a");

    Thm1Certificate cert;
    cert.p = p;
    cert.q = q;
    cert.r = r;
    cert.a = a;
    cert.epsilon = epsilon;
    cert.slack_exponent = opts.slack_exponent;
    auto P = PrimePowerModulus::make(p, a);
    cert.P = P.value;
    cert.phiP = P.totient;
    cert.i1 = w4->i;
    cert.j1 = w4->j;

    // smallest b = k1*phi(P) - i1 with q^b beyond the slack requirement
    Int p_slack = ipow(P.value, (unsigned long)opts.slack_exponent);
    Int bmin = 1, qpow = q;
    while (qpow <= p_slack) {
        qpow *= q;
        ++bmin;
    }
    Int k1 = (bmin + cert.i1 + cert.phiP - 1) / cert.phiP;
    if (k1 < 1)
        k1 = 1;

    bool found = false;
    Int Q, phiQ, d, y_r, t2, hit_value;
    for (int attempt = 0; attempt <= opts.q_power_retries && !found; ++attempt, ++k1) {
        Int b = k1 * cert.phiP - cert.i1;
        Q = materialize_pow(q, b, "thm1_construct Q");
        phiQ = Q / q * (q - 1);
        d = gcd(cert.phiP, phiQ);
        y_r = inv_mod(P.value, Q);

        Int ord_r = mult_order(r, Q);
        Int ord_step = ord_r / gcd(d, ord_r);
        Int cap = std::min(ord_step, Int(opts.residue_scan_budget));
        Int psq = P.value * P.value;
        Int lower = Q * (psq - 1); // value*psq must exceed this

        Int val = y_r * pow_mod(r, cert.j1, Q) % Q;
        Int step = pow_mod(r, d, Q);
        for (Int t = 0; t < cap; ++t) {
            if (val * psq > lower) {
                t2 = t;
                hit_value = val;
                found = true;
                break;
            }
            val = val * step % Q;
        }
        if (!found && cap < ord_step)
            throw resource_error("thm1_construct: residue scan budget exhausted before "
                                 "the progression cycled; raise the budget");
        cert.k1 = k1;
        cert.b = b;
    }
    if (!found)
        throw hypothesis_error("thm1_construct: no progression hit found; the chosen Q "
                               "may be too small, raise a or the retry count");
    cert.Q = Q;
    cert.phiQ = phiQ;
    cert.d_step = d;
    cert.d_p1q1 = gcd(Int(p - 1), Int(q - 1));
    cert.y_R = y_r;
    cert.t2 = t2;
    cert.j2 = cert.j1 + d * t2;

    // k2*phi(P) + d*t2 = 0 (mod phi(Q)); d = gcd makes this soluble for every t2
    Int rhs = lnr(-d * t2, phiQ);
    Int kstep = phiQ / d;
    Int k2 = lnr(rhs / d * inv_mod(cert.phiP / d, kstep), kstep);
    if (k2 == 0)
        k2 = kstep;
    Int c = k2 * cert.phiP - cert.j1;
    if (opts.min_r_digits > 0) {
        size_t rbits = mpz_sizeinbase(r.get_mpz_t(), 2);
        // digits(r^c) >= floor(c*(bits-1)*log10(2)) + 1
        auto digits_lb = [&](const Int& exp_c) {
            return Int(exp_c * long(rbits - 1) * 30103 / 100000 + 1);
        };
        while (digits_lb(c) < Int(opts.min_r_digits)) {
            k2 += kstep;
            c = k2 * cert.phiP - cert.j1;
        }
    }
    cert.k2 = k2;
    cert.c = c;

    Int R = materialize_pow(r, c, "thm1_construct R");
    Triple big = make_triple(P.value, Q, R);
    if (big.p != P.value || big.q != Q || big.r != R)
        throw internal_error("thm1_construct: P is not the smallest constructed power");
    cert.u = big.u;
    cert.v = big.v;
    if (cert.u != 1)
        throw internal_error("thm1_construct: u != 1 for the constructed triple");
    if (cert.v != hit_value)
        throw internal_error("thm1_construct: v disagrees with the progression hit");

    cert.x_Q = lnr(Q, P.value);
    cert.x_R = lnr(R, P.value);
    cert.C = std::min(std::min(cert.x_Q, cert.x_R),
                      std::min(Int(P.value - cert.x_Q), Int(P.value - cert.x_R)));
    if (!beyond_margin(cert.C, P.value, epsilon))
        throw internal_error("thm1_construct: C fell below the margin");

    cert.q_prime_sign = cert.x_Q < P.value - cert.x_Q ? +1 : -1;
    cert.r_prime_sign = cert.x_R < P.value - cert.x_R ? +1 : -1;
    Int m = (cert.C - 1) * Q * R + P.value - cert.C;
    if (cert.q_prime_sign > 0) {
        cert.witness_plus = m;
        cert.witness_minus = m + R;
    } else {
        cert.witness_minus = m + Q;
        cert.witness_plus = m + Q + R;
    }
    cert.coeff_plus = coeff_at(big, cert.witness_plus);
    cert.coeff_minus = coeff_at(big, cert.witness_minus);
    if (Int(cert.coeff_plus) < cert.C || Int(cert.coeff_minus) > -cert.C)
        throw internal_error("thm1_construct: witness coefficients miss the bound");
    return cert;
}

VerifyOutcome verify_thm1(const Thm1Certificate& cert) {
    VerifyOutcome out;
    out.require(is_prime(cert.p) && is_prime(cert.q) && is_prime(cert.r),
                "p, q, r prime");
    out.require(cert.epsilon.num > 0 && 4 * cert.epsilon.num < cert.epsilon.den,
                "epsilon in (0, 1/4)");
    Int P = ipow(cert.p, cert.a);
    out.require(P == cert.P, "P = p^a");
    Int phiP = P / cert.p * (cert.p - 1);
    out.require(phiP == cert.phiP, "phi(P) recomputes");

    Int qres = pow_mod(cert.q, cert.i1, P);
    Int rres = pow_mod(cert.r, cert.j1, P);
    out.require(qres * rres % P == 1, "q^i1 * r^j1 = 1 (mod P)");
    out.require(beyond_margin(qres, P, cert.epsilon) &&
                    beyond_margin(P - qres, P, cert.epsilon) &&
                    beyond_margin(rres, P, cert.epsilon) &&
                    beyond_margin(P - rres, P, cert.epsilon),
                "exponent-pair residues clear the margin");

    out.require(cert.b == cert.k1 * phiP - cert.i1 && cert.b >= 1, "b = k1*phi(P) - i1");
    bool b_ok = cert.b.fits_ulong_p();
    out.require(b_ok, "b fits a machine word");
    if (!b_ok)
        return out;
    Int Q = ipow(cert.q, cert.b.get_ui());
    out.require(Q == cert.Q, "Q = q^b");
    out.require(Q > ipow(P, (unsigned long)cert.slack_exponent), "Q > P^slack");
    Int phiQ = Q / cert.q * (cert.q - 1);
    out.require(phiQ == cert.phiQ, "phi(Q) recomputes");
    out.require(cert.d_step == gcd(phiP, phiQ), "d = gcd(phi(P), phi(Q))");
    out.require(cert.d_p1q1 == gcd(Int(cert.p - 1), Int(cert.q - 1)),
                "gcd(p-1, q-1) recorded");
    out.require(cert.y_R == inv_mod(P, Q), "y_R = P^{-1} (mod Q)");
    out.require(cert.j2 == cert.j1 + cert.d_step * cert.t2, "j2 = j1 + d*t2");
    out.require(lnr(cert.k2 * phiP + cert.d_step * cert.t2, phiQ) == 0,
                "k2*phi(P) + d*t2 = 0 (mod phi(Q))");
    out.require(cert.c == cert.k2 * phiP - cert.j1 && cert.c >= 1, "c = k2*phi(P) - j1");

    Int v = cert.y_R * pow_mod(cert.r, cert.j2, Q) % Q;
    out.require(v == cert.v, "v = y_R * r^{j2} (mod Q)");
    Int psq = P * P;
    out.require(Q > psq, "Q > P^2");
    out.require(v * psq > Q * (psq - 1) && v < Q, "v lands in (Q - Q/P^2, Q)");

    Int RmodP = pow_mod(cert.r, cert.c, P);
    out.require(lnr(Q * RmodP, P) == 1, "u = 1: QR = 1 (mod P)");
    out.require(pow_mod(cert.r, cert.c + cert.j2, Q) == 1, "R * r^{j2} = 1 (mod Q)");
    out.require(RmodP == cert.x_R && lnr(Q, P) == cert.x_Q, "x_Q and x_R recompute");
    out.require(cert.x_R == qres && cert.x_Q == rres,
                "coordinates match the exponent-pair residues");
    Int C = std::min(std::min(cert.x_Q, cert.x_R),
                     std::min(Int(P - cert.x_Q), Int(P - cert.x_R)));
    out.require(C == cert.C, "C recomputes");
    out.require(beyond_margin(C, P, cert.epsilon), "C > (1/4 - eps) * P");

    out.require(cert.q_prime_sign == (cert.x_Q < P - cert.x_Q ? +1 : -1) &&
                    cert.r_prime_sign == (cert.x_R < P - cert.x_R ? +1 : -1),
                "selector signs recompute");
    if (!out.ok)
        return out;

    Int R = materialize_pow(cert.r, cert.c, "verify_thm1");
    Triple big = make_triple(P, Q, R);
    Int m = (C - 1) * Q * R + P - C;
    Int wplus = cert.q_prime_sign > 0 ? m : m + Q + R;
    Int wminus = cert.q_prime_sign > 0 ? m + R : m + Q;
    out.require(wplus == cert.witness_plus && wminus == cert.witness_minus,
                "witness indices recompute");
    out.require(coeff_at(big, cert.witness_plus) == cert.coeff_plus,
                "a_{m+} re-evaluates to the recorded value");
    out.require(coeff_at(big, cert.witness_minus) == cert.coeff_minus,
                "a_{m-} re-evaluates to the recorded value");
    out.require(Int(cert.coeff_plus) >= C, "a_{m+} >= C");
    out.require(Int(cert.coeff_minus) <= -C, "a_{m-} <= -C");
    return out;
}

/* ---- flat family ---- */

FlatFamilyResult flat_family_check(unsigned long a, unsigned long b, std::size_t max_cells) {
    if (a < 1 || b < 1)
        throw validation_error("flat_family_check: exponents must be >= 1");
    FlatFamilyResult res;
    res.a = a;
    res.b = b;
    res.p = ipow(3, a);
    res.q = ipow(11, b);
    res.c = mult_order(2, res.p * res.q);
    res.r = materialize_pow(2, res.c, "flat_family_check");
    Triple t = make_triple(res.p, res.q, res.r);
    res.set = coeff_set(t, max_cells);
    return res;
}

} // namespace iepoly
