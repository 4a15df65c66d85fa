#include "iepoly/modmath.hpp"

#include <algorithm>
#include <unordered_map>

namespace iepoly {

Int lnr(const Int& n, const Int& m) {
    if (m <= 0)
        throw validation_error("lnr: modulus must be >= 1");
    Int r;
    mpz_mod(r.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t()); // sign of divisor ignored, result >= 0
    return r;
}

Int pow_mod(const Int& base, const Int& exp, const Int& m) {
    if (m <= 0)
        throw validation_error("pow_mod: modulus must be >= 1");
    if (exp < 0)
        throw validation_error("pow_mod: negative exponent");
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int inv_mod(const Int& a, const Int& m) {
    if (m <= 0)
        throw validation_error("inv_mod: modulus must be >= 1");
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw validation_error("inv_mod: not a unit (gcd(a,m) != 1)");
    return r;
}

namespace {

const std::vector<uint32_t>& small_primes() {
    static const std::vector<uint32_t> primes = [] {
        constexpr uint32_t limit = 100000;
        std::vector<bool> composite(limit, false);
        std::vector<uint32_t> out;
        for (uint32_t i = 2; i < limit; ++i) {
            if (composite[i])
                continue;
            out.push_back(i);
            for (uint64_t j = uint64_t(i) * i; j < limit; j += i)
                composite[j] = true;
        }
        return out;
    }();
    return primes;
}

/* One strong-pseudoprime round.  n odd, n > 2, n-1 = d*2^s. */
bool mr_round(const Int& n, const Int& a, const Int& d, unsigned long s) {
    Int base = lnr(a, n);
    if (base == 0)
        return true; // witness collapses, no information
    Int x = pow_mod(base, d, n);
    Int nm1 = n - 1;
    if (x == 1 || x == nm1)
        return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == nm1)
            return true;
    }
    return false;
}

/* Witnesses 2..37 decide primality for every n < 3.3e24, which covers the
   64-bit range; the longer tail keeps the one-sided error below 4^-25 for
   larger n. */
constexpr uint32_t kWitnesses[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                   43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

Int pollard_brent(const Int& n);

void factor_rec(const Int& n, std::vector<Int>& out) {
    if (n == 1)
        return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    Int d = pollard_brent(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

/* Brent-cycle Pollard rho.  Deterministic: seeds advance on failure. */
Int pollard_brent(const Int& n) {
    if (n % 2 == 0)
        return 2;
    for (Int c = 1;; ++c) {
        Int x = 2, y = 2, d = 1;
        Int saved_y = y;
        unsigned long power = 1, lam = 0;
        auto step = [&](Int& v) { v = (v * v + c) % n; };
        while (d == 1) {
            if (lam == power) {
                x = y;
                power *= 2;
                lam = 0;
            }
            // batch gcd over 128 steps
            Int prod = 1;
            unsigned long batch = std::min<unsigned long>(128, power - lam);
            saved_y = y;
            for (unsigned long i = 0; i < batch; ++i) {
                step(y);
                prod = prod * (x - y) % n;
            }
            lam += batch;
            d = gcd(prod, n);
        }
        if (d != n)
            return d;
        // batch overshot a factor: replay one step at a time
        y = saved_y;
        d = 1;
        while (d == 1) {
            step(y);
            d = gcd(Int(x - y), n);
        }
        if (d != n)
            return d;
        // cycle degenerated for this c, try the next polynomial
    }
}

} // namespace

bool is_prime(const Int& n) {
    if (n < 0)
        throw validation_error("is_prime: n must be >= 0");
    if (n < 2)
        return false;
    for (uint32_t p : small_primes()) {
        if (n == p)
            return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p))
            return false;
        if (Int(p) * p > n)
            return true; // trial division was exhaustive
    }
    Int d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    for (uint32_t a : kWitnesses)
        if (!mr_round(n, Int(a), d, s))
            return false;
    return true;
}

std::vector<std::pair<Int, unsigned>> factorize(const Int& n) {
    if (n < 1)
        throw validation_error("factorize: n must be >= 1");
    std::vector<Int> primes;
    Int rest = n;
    for (uint32_t p : small_primes()) {
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            primes.push_back(p);
            rest /= p;
        }
        if (rest == 1)
            break;
    }
    if (rest > 1)
        factor_rec(rest, primes);
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<Int, unsigned>> out;
    for (const Int& p : primes) {
        if (!out.empty() && out.back().first == p)
            ++out.back().second;
        else
            out.emplace_back(p, 1u);
    }
    return out;
}

Int euler_phi(const Int& n) {
    Int phi = 1;
    for (const auto& [p, e] : factorize(n)) {
        Int pe = 1;
        for (unsigned i = 1; i < e; ++i)
            pe *= p;
        phi *= pe * (p - 1);
    }
    return phi;
}

Int mult_order(const Int& g, const Int& m) {
    if (m < 2)
        throw validation_error("mult_order: modulus must be >= 2");
    if (gcd(g, m) != 1)
        throw validation_error("mult_order: not a unit");
    Int order = euler_phi(m);
    for (const auto& [p, e] : factorize(order)) {
        for (unsigned i = 0; i < e; ++i) {
            Int candidate = order / p;
            if (pow_mod(g, candidate, m) == 1)
                order = candidate;
            else
                break;
        }
    }
    return order;
}

PrimePowerModulus PrimePowerModulus::make(const Int& prime, unsigned exponent) {
    if (exponent < 1)
        throw validation_error("PrimePowerModulus: exponent must be >= 1");
    if (prime < 2 || !is_prime(prime))
        throw validation_error("PrimePowerModulus: base is not prime");
    PrimePowerModulus m;
    m.prime = prime;
    m.exponent = exponent;
    mpz_pow_ui(m.value.get_mpz_t(), prime.get_mpz_t(), exponent);
    m.totient = m.value / prime * (prime - 1);
    return m;
}

bool is_primitive_root(const Int& g, const PrimePowerModulus& m) {
    if (m.prime == 2)
        throw validation_error("is_primitive_root: odd prime moduli only");
    if (gcd(g, m.value) != 1)
        throw validation_error("is_primitive_root: not a unit");
    // order == totient iff g^(totient/l) != 1 for every prime l | totient
    for (const auto& [l, e] : factorize(m.totient)) {
        (void)e;
        if (pow_mod(g, m.totient / l, m.value) == 1)
            return false;
    }
    return true;
}

Int primitive_root_count_mod_p2(const Int& p) {
    if (p == 2 || !is_prime(p))
        throw validation_error("primitive_root_count_mod_p2: p must be an odd prime");
    return (p - 1) * euler_phi(p - 1);
}

namespace {

uint64_t mpz_hash(const Int& x) {
    return mpz_fdiv_ui(x.get_mpz_t(), 0xFFFFFFFFFFFFFFC5ull);
}

/* Baby-step/giant-step in the cyclic group generated by gamma of prime
   order ell: find x in [0, ell) with gamma^x == h, or nullopt. */
std::optional<Int> bsgs(const Int& gamma, const Int& h, const Int& ell, const Int& mod) {
    Int m = sqrt(ell) + 1;
    if (!m.fits_ulong_p())
        throw resource_error("dlog: subgroup too large for baby-step table");
    unsigned long steps = m.get_ui();
    std::unordered_map<uint64_t, std::vector<std::pair<Int, unsigned long>>> table;
    table.reserve(steps);
    Int cur = 1;
    for (unsigned long j = 0; j < steps; ++j) {
        table[mpz_hash(cur)].emplace_back(cur, j);
        cur = cur * gamma % mod;
    }
    Int giant = inv_mod(pow_mod(gamma, m, mod), mod);
    Int probe = lnr(h, mod);
    for (unsigned long i = 0; i < steps + 1; ++i) {
        auto it = table.find(mpz_hash(probe));
        if (it != table.end()) {
            for (const auto& [val, j] : it->second) {
                if (val == probe) {
                    Int x = Int(i) * m + j;
                    if (x < ell)
                        return x;
                }
            }
        }
        probe = probe * giant % mod;
    }
    return std::nullopt;
}

/* Pohlig-Hellman digit extraction inside the subgroup of order l^e. */
std::optional<Int> dlog_prime_power_order(const Int& g, const Int& h, const Int& l, unsigned e,
                                          const Int& mod) {
    Int le = 1;
    for (unsigned i = 0; i < e; ++i)
        le *= l;
    Int gamma = pow_mod(g, le / l, mod); // order l
    Int x = 0;
    Int lk = 1; // l^k
    for (unsigned k = 0; k < e; ++k) {
        Int shifted = pow_mod(h * pow_mod(inv_mod(g, mod), x, mod) % mod, le / (lk * l), mod);
        auto digit = bsgs(gamma, shifted, l, mod);
        if (!digit)
            return std::nullopt;
        x += *digit * lk;
        lk *= l;
    }
    return x;
}

} // namespace

std::optional<DlogAnswer> dlog_prime_power(const Int& base, const Int& target,
                                           const PrimePowerModulus& m) {
    if (gcd(base, m.value) != 1 || gcd(target, m.value) != 1)
        throw validation_error("dlog_prime_power: base and target must be units");
    Int b = lnr(base, m.value);
    Int t = lnr(target, m.value);
    Int order = mult_order(b, m.value);
    Int x = 0, xmod = 1;
    for (const auto& [l, e] : factorize(order)) {
        Int le = 1;
        for (unsigned i = 0; i < e; ++i)
            le *= l;
        Int cof = order / le;
        auto xi = dlog_prime_power_order(pow_mod(b, cof, m.value), pow_mod(t, cof, m.value), l, e,
                                         m.value);
        if (!xi)
            return std::nullopt;
        auto combined = crt_general(x, xmod, *xi, le);
        if (!combined)
            return std::nullopt;
        x = combined->residue;
        xmod = combined->modulus;
    }
    if (pow_mod(b, x, m.value) != t)
        return std::nullopt; // target outside <base>
    return DlogAnswer{x, order};
}

std::optional<DlogAnswer> dlog_mod(const Int& base, const Int& target, const Int& modulus) {
    if (modulus < 2)
        throw validation_error("dlog_mod: modulus must be >= 2");
    if (gcd(base, modulus) != 1 || gcd(target, modulus) != 1)
        throw validation_error("dlog_mod: base and target must be units");
    Int x = 0, xmod = 1;
    for (const auto& [p, e] : factorize(modulus)) {
        auto part = dlog_prime_power(base, target, PrimePowerModulus::make(p, e));
        if (!part)
            return std::nullopt;
        auto combined = crt_general(x, xmod, part->exponent, part->order);
        if (!combined)
            return std::nullopt; // incompatible exponent classes
        x = combined->residue;
        xmod = combined->modulus;
    }
    if (pow_mod(base, x, modulus) != lnr(target, modulus))
        return std::nullopt;
    return DlogAnswer{x, xmod}; // xmod = lcm of per-factor orders = order of base
}

std::optional<CrtSolution> crt_general(const Int& r1, const Int& m1, const Int& r2,
                                       const Int& m2) {
    if (m1 < 1 || m2 < 1)
        throw validation_error("crt_general: moduli must be >= 1");
    Int g = gcd(m1, m2);
    Int diff = r2 - r1;
    if (diff % g != 0)
        return std::nullopt;
    Int l = m1 / g * m2;
    Int t = lnr(diff / g * inv_mod(m1 / g, m2 / g), m2 / g);
    Int x = lnr(r1 + m1 * t, l);
    return CrtSolution{x, l};
}

int legendre_minus_two(const Int& p) {
    if (p == 2 || p % 2 == 0 || !is_prime(p))
        throw validation_error("legendre_minus_two: p must be an odd prime");
    Int e = (p - 1) / 2 + (p * p - 1) / 8;
    return mpz_even_p(e.get_mpz_t()) ? +1 : -1;
}

} // namespace iepoly
