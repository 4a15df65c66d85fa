/* Executable constructions with recomputable certificates:

   - prop4_check: hypothesis report for the congruence family whose
     coefficient set is a full interval of length p+1, plus the computed
     set and its orientation against the stated interval;
   - thm3_construct: builds exponents (a,b,c) from discrete logarithms and
     a parity-guarded CRT so the prime-power triple lands in that family;
   - prop5_certify: base-parameter hypotheses and the two witness
     coefficients >= C and <= -C, each re-checkable by point queries;
   - lemma4_search: exponent pairs with q^i r^j = 1 mod P and both
     residues away from the ends of [0, P];
   - thm1_construct: the full pipeline producing arbitrarily large
     guaranteed coefficients in a fixed prime family;
   - flat_family_check: the {3^a, 11^b, 2^c} family with c the order of 2,
     whose set stays {-1, 0, 1}. */

#ifndef IEPOLY_THEOREMS_HPP
#define IEPOLY_THEOREMS_HPP

#include <optional>
#include <string>
#include <vector>

#include "iepoly/coeffs.hpp"
#include "iepoly/modmath.hpp"
#include "iepoly/triple.hpp"

namespace iepoly {

/* Exact rational, used for the epsilon margin. */
struct Rational {
    Int num;
    Int den; // > 0

    static Rational parse(const std::string& text); // "0.05" or "1/20"
    std::string str() const;
};

struct VerifyOutcome {
    bool ok = true;
    std::vector<std::string> failures;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            failures.push_back(what);
        }
    }
};

/* ---- interval family (hypothesis checker) ---- */

struct Prop4Report {
    Int p, q, r;
    bool p_odd = false, q_odd = false;
    bool q_congruent = false; // q = 2 (mod p)
    bool r_congruent = false; // r = (pq-1)/2 (mod pq)
    bool hypotheses = false;
    enum class Match { not_computed, stated, reflected, neither };
    Match match = Match::not_computed;
    std::optional<CoeffResult> set; // present when the degree was feasible
};

Prop4Report prop4_check(const Triple& t, std::size_t max_cells = kDefaultMaxCells);

/* ---- prime-power construction ---- */

struct Thm3Precheck {
    bool primes = false;          // p, q, r distinct primes with p < q
    bool mod8 = false;            // p = q = 3 or 7 (mod 8), same residue
    bool gcd_two = false;         // gcd(p-1, q-1) = 2
    bool q_primitive = false;     // q primitive root mod p^2
    bool r_primitive_p2 = false;  // r primitive root mod p^2
    bool r_primitive_q2 = false;  // r primitive root mod q^2
    bool all() const {
        return primes && mod8 && gcd_two && q_primitive && r_primitive_p2 && r_primitive_q2;
    }
};

Thm3Precheck thm3_precheck(const Int& p, const Int& q, const Int& r);

struct Thm3Certificate {
    Int p, q, r;
    unsigned long a = 1;
    Int b, c;            // exponents of q and r
    Int P, Q;            // p^a, q^b
    std::optional<Int> R; // r^c, materialized only when modest
    unsigned long R_digits = 0; // decimal digits of R (0 if not materialized)
    Int phiP, phiQ;
    Int i, j;            // r^i = (P-1)/2 (mod P), r^j = (Q-1)/2 (mod Q)
    int parity_expected = 0; // +1: i and j even; -1: odd
};

Thm3Certificate thm3_construct(const Int& p, const Int& q, const Int& r, unsigned long a);

/* Recomputes every congruence and inequality of the certificate from
   scratch; shares nothing with the constructor beyond modmath. */
VerifyOutcome verify_thm3(const Thm3Certificate& cert);

/* ---- witness-coefficient certification ---- */

struct Prop5RoleCheck {
    Int q_candidate;
    bool q_gt_p2 = false;
    bool v_large = false; // v > q - q/p^2
};

struct Prop5Certificate {
    Int p, q, r; // role assignment actually used (q is the hypothesis carrier)
    Int u, v, w;
    Int x_q, x_r, mu, C;
    bool hyp_u_le_mu = false;
    bool hyp_q_gt_p2 = false;
    bool hyp_v_large = false;
    bool hypotheses_ok = false;
    std::vector<Prop5RoleCheck> roles_tried;
    // populated only when hypotheses_ok:
    Int a_param, ell;
    Int q_prime, r_prime; // signed selectors
    Int witness_plus, witness_minus;
    int64_t coeff_plus = 0, coeff_minus = 0;
    bool chi_claims_ok = false;
};

Prop5Certificate prop5_certify(const Triple& t);
VerifyOutcome verify_prop5(const Prop5Certificate& cert);

/* ---- exponent-pair search ---- */

struct Lemma4Witness {
    Int i, j;
    Int q_residue, r_residue; // q^i, r^j mod P
};

std::optional<Lemma4Witness> lemma4_search(const Int& p, const Int& q, const Int& r,
                                           unsigned long a, const Rational& epsilon);

/* ---- general pipeline ---- */

struct Thm1Options {
    long slack_exponent = 6;        // require Q > P^slack
    unsigned long min_r_digits = 0; // push c up until R has at least this many digits
    uint64_t residue_scan_budget = 5'000'000;
    int q_power_retries = 6;        // extra attempts with larger Q when the scan misses
};

struct Thm1Certificate {
    Int p, q, r;
    unsigned long a = 1;
    Rational epsilon;
    long slack_exponent = 6;
    Int P, phiP;
    Int i1, j1;
    Int k1, b, Q, phiQ;
    Int d_step;  // gcd(phi(P), phi(Q)), the progression step actually used
    Int d_p1q1;  // gcd(p-1, q-1)
    Int y_R;     // P^{-1} mod Q
    Int t2, j2, k2, c;
    Int x_Q, x_R, u, v;
    Int C;
    int q_prime_sign = +1, r_prime_sign = +1;
    Int witness_plus, witness_minus;
    int64_t coeff_plus = 0, coeff_minus = 0;
};

Thm1Certificate thm1_construct(const Int& p, const Int& q, const Int& r, unsigned long a,
                               const Rational& epsilon, const Thm1Options& opts = {});
VerifyOutcome verify_thm1(const Thm1Certificate& cert);

/* ---- flat family ---- */

struct FlatFamilyResult {
    unsigned long a = 1, b = 1;
    Int c;
    Int p, q, r;
    CoeffResult set;
};

FlatFamilyResult flat_family_check(unsigned long a, unsigned long b,
                                   std::size_t max_cells = kDefaultMaxCells);

} // namespace iepoly

#endif
