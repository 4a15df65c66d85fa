#include <doctest.h>

#include <random>

#include "iepoly/modmath.hpp"

using namespace iepoly;

namespace {

/* Brute-force oracles, deliberately naive. */

Int order_by_iteration(const Int& g, const Int& m) {
    Int acc = lnr(g, m);
    Int k = 1;
    while (acc != 1) {
        acc = acc * g % m;
        ++k;
    }
    return k;
}

bool prime_by_trial_division(uint64_t n) {
    if (n < 2)
        return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

std::optional<Int> dlog_by_iteration(const Int& base, const Int& target, const Int& m) {
    Int acc = 1;
    Int tgt = lnr(target, m);
    Int order = order_by_iteration(base, m);
    for (Int x = 0; x < order; ++x) {
        if (acc == tgt)
            return x;
        acc = acc * base % m;
    }
    return std::nullopt;
}

bool minus_two_is_square(uint64_t p) {
    for (uint64_t x = 1; x < p; ++x)
        if (x * x % p == (p - 2) % p)
            return true;
    return false;
}

} // namespace

TEST_CASE("lnr basics") {
    CHECK(lnr(-1, 7) == 6);
    CHECK(lnr(0, 5) == 0);
    CHECK(lnr(695, 29) == 28);
    CHECK(lnr(Int("-1000000000000000000000000007"), 97) ==
          lnr(lnr(Int("-1000000000000000000000000007"), 97), 97));
    CHECK_THROWS_AS(lnr(3, 0), validation_error);
}

TEST_CASE("mult_order agrees with iteration") {
    CHECK(mult_order(2, 9) == 6);
    CHECK(mult_order(2, 33) == 10);
    CHECK(mult_order(1, 7) == 1);
    CHECK_THROWS_AS(mult_order(6, 9), validation_error);

    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        uint64_t m = 2 + rng() % 2000;
        uint64_t g = 1 + rng() % (m - 1);
        if (gcd(Int(g), Int(m)) != 1)
            continue;
        CHECK(mult_order(g, m) == order_by_iteration(g, m));
    }
}

TEST_CASE("is_prime matches trial division and known labels") {
    CHECK(is_prime(139));
    CHECK_FALSE(is_prime(155));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(0));
    CHECK(is_prime(2));
    for (uint64_t n = 0; n < 4000; ++n)
        CHECK(is_prime(n) == prime_by_trial_division(n));
    // strong-pseudoprime trip wires
    CHECK_FALSE(is_prime(Int("3215031751")));          // 2,3,5,7-pseudoprime
    CHECK_FALSE(is_prime(Int("3825123056546413051"))); // 2..23-pseudoprime
    CHECK(is_prime(Int("18446744073709551557")));      // largest prime below 2^64
    CHECK(is_prime(Int("170141183460469231731687303715884105727"))); // 2^127-1
}

TEST_CASE("factorize and euler_phi recompose") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 150; ++trial) {
        Int n = 1 + rng() % 1000000;
        Int back = 1;
        for (const auto& [p, e] : factorize(n)) {
            CHECK(is_prime(p));
            for (unsigned k = 0; k < e; ++k)
                back *= p;
        }
        CHECK(back == n);
    }
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(9) == 6);
    CHECK(euler_phi(121) == 110);
    // a 2^64-scale semiprime exercises the rho path
    Int big = Int("2305843009213693951") * Int("2147483647");
    auto fac = factorize(big);
    REQUIRE(fac.size() == 2);
    CHECK(fac[0].first == Int("2147483647"));
    CHECK(fac[1].first == Int("2305843009213693951"));
}

TEST_CASE("primitive roots") {
    auto nine = PrimePowerModulus::make(3, 2);
    auto el2 = PrimePowerModulus::make(11, 2);
    CHECK(is_primitive_root(2, nine));
    CHECK(is_primitive_root(2, el2));
    CHECK_FALSE(is_primitive_root(7, nine)); // ord(7 mod 9) = 3
    CHECK_THROWS_AS(is_primitive_root(3, nine), validation_error);

    // count for p = 5: (p-1) phi(p-1) = 4 * 2 = 8, against enumeration
    auto m25 = PrimePowerModulus::make(5, 2);
    int count = 0;
    for (Int g = 1; g < 25; ++g)
        if (gcd(g, Int(25)) == 1 && is_primitive_root(g, m25))
            ++count;
    CHECK(Int(count) == primitive_root_count_mod_p2(5));
}

TEST_CASE("dlog on prime powers, spec instances") {
    auto nine = PrimePowerModulus::make(3, 2);
    auto ans = dlog_prime_power(11, 2, nine);
    REQUIRE(ans.has_value());
    CHECK(ans->exponent == 1);
    CHECK(ans->order == 6);

    auto identity = dlog_prime_power(2, 1, nine);
    REQUIRE(identity.has_value());
    CHECK(identity->exponent == 0);
    CHECK(identity->order == 6);

    // target outside the subgroup: ord(4 mod 9) = 3, and 2 is not a power of 4
    auto none = dlog_prime_power(4, 2, nine);
    CHECK_FALSE(none.has_value());

    CHECK_THROWS_AS(dlog_prime_power(3, 2, nine), validation_error);
}

TEST_CASE("dlog round-trips on random soluble instances") {
    std::mt19937_64 rng(2024);
    const Int moduli[] = {Int(9), Int(27), Int(121), Int(125), Int(2401), Int(28561),
                          PrimePowerModulus::make(7, 7).value};
    int done = 0;
    for (const Int& m : moduli) {
        for (int trial = 0; trial < 1000; ++trial) {
            Int base = 2 + Int(rng()) % (m - 2);
            if (gcd(base, m) != 1)
                continue;
            Int exp = Int(rng()) % Int(1000);
            Int target = pow_mod(base, exp, m);
            auto pp = factorize(m);
            auto ans = dlog_prime_power(base, target, PrimePowerModulus::make(pp[0].first,
                                                                              pp[0].second));
            REQUIRE(ans.has_value());
            CHECK(pow_mod(base, ans->exponent, m) == target);
            CHECK(ans->exponent >= 0);
            CHECK(ans->exponent < ans->order);
            CHECK(pow_mod(base, ans->order, m) == 1);
            ++done;
        }
    }
    CHECK(done > 5000);
}

TEST_CASE("composite-modulus dlog wrapper") {
    auto ans = dlog_mod(2, 16, 33);
    REQUIRE(ans.has_value());
    CHECK(ans->exponent == 4);
    CHECK(ans->order == 10);
    CHECK(dlog_mod(2, 16, 33).has_value());

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        Int m = 2 + rng() % 5000;
        Int base = 2 + Int(rng()) % (m > 2 ? m - 2 : Int(1));
        if (gcd(base, m) != 1)
            continue;
        Int target = pow_mod(base, Int(rng() % 512), m);
        auto a = dlog_mod(base, target, m);
        auto expect = dlog_by_iteration(base, target, m);
        REQUIRE(a.has_value() == expect.has_value());
        if (a)
            CHECK(pow_mod(base, a->exponent, m) == lnr(target, m));
    }
}

TEST_CASE("crt_general handles non-coprime moduli") {
    auto sol = crt_general(2, 6, 4, 10);
    REQUIRE(sol.has_value());
    CHECK(sol->residue == 14);
    CHECK(sol->modulus == 30);

    CHECK_FALSE(crt_general(1, 6, 2, 10).has_value());

    auto trivial = crt_general(0, 1, 5, 7);
    REQUIRE(trivial.has_value());
    CHECK(trivial->residue == 5);
    CHECK(trivial->modulus == 7);
}

TEST_CASE("crt_general against brute force") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 400; ++trial) {
        Int m1 = 1 + rng() % 60;
        Int m2 = 1 + rng() % 60;
        Int r1 = Int(rng()) % m1;
        Int r2 = Int(rng()) % m2;
        Int l = lcm(m1, m2);
        std::optional<Int> brute;
        for (Int x = 0; x < l; ++x) {
            if (lnr(x, m1) == r1 && lnr(x, m2) == r2) {
                brute = x;
                break;
            }
        }
        auto sol = crt_general(r1, m1, r2, m2);
        REQUIRE(sol.has_value() == brute.has_value());
        CHECK(sol.has_value() == (lnr(r1 - r2, gcd(m1, m2)) == 0));
        if (sol) {
            CHECK(sol->residue == *brute);
            CHECK(sol->modulus == l);
        }
    }
}

TEST_CASE("legendre symbol of -2") {
    CHECK(legendre_minus_two(3) == +1);
    CHECK(legendre_minus_two(7) == -1);
    CHECK(legendre_minus_two(11) == +1);
    CHECK_THROWS_AS(legendre_minus_two(2), validation_error);
    CHECK_THROWS_AS(legendre_minus_two(9), validation_error);
    for (uint64_t p = 3; p < 3000; p += 2) {
        if (!is_prime(p))
            continue;
        CHECK((legendre_minus_two(p) == +1) == minus_two_is_square(p));
        // stated residue classes
        if (p % 8 == 3)
            CHECK(legendre_minus_two(p) == +1);
        if (p % 8 == 7)
            CHECK(legendre_minus_two(p) == -1);
    }
}

TEST_CASE("order divisibility property") {
    std::mt19937_64 rng(314);
    for (int trial = 0; trial < 100; ++trial) {
        Int m = 3 + rng() % 4000;
        Int g = 2 + Int(rng()) % (m - 2);
        if (gcd(g, m) != 1)
            continue;
        Int ord = mult_order(g, m);
        CHECK(pow_mod(g, ord, m) == 1);
        for (const auto& [l, e] : factorize(ord)) {
            (void)e;
            CHECK(pow_mod(g, ord / l, m) != 1); // no proper divisor works
        }
    }
}
