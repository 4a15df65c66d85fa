#include <doctest.h>

#include <array>
#include <random>
#include <sstream>

#include "iepoly/coeffs.hpp"

using namespace iepoly;

namespace {

/* Test-only reference: build both defining products as dense integer
   polynomials and run schoolbook long division, remainder included.
   Shares nothing with the library engines. */

std::vector<long> dense_mul(const std::vector<long>& a, const std::vector<long>& b) {
    std::vector<long> out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

std::vector<long> binomial(size_t s) { // x^s - 1
    std::vector<long> out(s + 1, 0);
    out[0] = -1;
    out[s] = 1;
    return out;
}

std::vector<long> naive_quotient(size_t p, size_t q, size_t r) {
    auto numerator = dense_mul(dense_mul(binomial(p * q * r), binomial(p)),
                               dense_mul(binomial(q), binomial(r)));
    auto denominator = dense_mul(dense_mul(binomial(p * q), binomial(q * r)),
                                 dense_mul(binomial(r * p), binomial(1)));
    std::vector<long> quotient(numerator.size() - denominator.size() + 1, 0);
    std::vector<long> rem = numerator;
    for (size_t k = quotient.size(); k-- > 0;) {
        long coeff = rem[k + denominator.size() - 1]; // divisor is monic
        quotient[k] = coeff;
        if (coeff != 0)
            for (size_t j = 0; j < denominator.size(); ++j)
                rem[k + j] -= coeff * denominator[j];
    }
    for (long c : rem)
        REQUIRE(c == 0);
    return quotient;
}

std::vector<std::array<uint64_t, 3>> seeded_triples(int count, uint64_t max_fdeg,
                                                    uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::array<uint64_t, 3>> out;
    while (out.size() < size_t(count)) {
        uint64_t a = 3 + rng() % 97;
        uint64_t b = 3 + rng() % 997;
        uint64_t c = 3 + rng() % 4999;
        Int A(a), B(b), C(c);
        if (gcd(A, B) != 1 || gcd(A, C) != 1 || gcd(B, C) != 1)
            continue;
        if ((a - 1) * (b - 1) * (c - 1) > max_fdeg)
            continue;
        out.push_back({a, b, c});
    }
    return out;
}

} // namespace

TEST_CASE("both engines match the naive reference on small triples") {
    const std::array<uint64_t, 3> cases[] = {
        {3, 5, 7}, {3, 4, 5}, {4, 5, 7}, {3, 5, 14}, {5, 7, 9}, {3, 7, 10}};
    for (auto [a, b, c] : cases) {
        auto expected = naive_quotient(a, b, c);
        Triple t = make_triple(a, b, c);
        for (Engine e : {Engine::oracle, Engine::truncated}) {
            CoeffResult got = coeff_vector(t, e);
            REQUIRE(got.coefficients.has_value());
            REQUIRE(got.coefficients->size() == expected.size());
            for (size_t i = 0; i < expected.size(); ++i)
                CHECK((*got.coefficients)[i] == expected[i]);
        }
    }
}

TEST_CASE("coefficient vector for (3,5,7)") {
    Triple t = make_triple(3, 5, 7);
    CoeffResult res = coeff_vector(t, Engine::oracle);
    CHECK(res.degree == 48);
    CHECK(res.set_min == -2);
    CHECK(res.set_max == 1);
    CHECK(res.diameter == 3);
    CHECK((*res.coefficients)[7] == -2);
    CHECK((*res.coefficients)[0] == 1);
    CHECK((*res.coefficients)[48] == 1);
}

TEST_CASE("engines agree with each other and with point queries") {
    auto triples = seeded_triples(40, 100000, 123);
    std::mt19937_64 rng(321);
    for (auto [a, b, c] : triples) {
        Triple t = make_triple(a, b, c);
        CoeffResult via_oracle = coeff_vector(t, Engine::oracle);
        CoeffResult via_trunc = coeff_vector(t, Engine::truncated);
        REQUIRE(*via_oracle.coefficients == *via_trunc.coefficients);
        const auto& coeffs = *via_oracle.coefficients;
        for (int probe = 0; probe < 50; ++probe) {
            size_t m = rng() % coeffs.size();
            CHECK(coeff_at(t, Int(m)) == coeffs[m]);
        }
        // palindromy, observed against the oracle
        for (int probe = 0; probe < 20; ++probe) {
            size_t m = rng() % coeffs.size();
            CHECK(coeffs[m] == coeffs[coeffs.size() - 1 - m]);
        }
    }
}

TEST_CASE("structural facts on a seeded corpus") {
    for (auto [a, b, c] : seeded_triples(60, 80000, 777)) {
        Triple t = make_triple(a, b, c);
        CoeffResult res = coeff_vector(t, Engine::truncated);
        const auto& coeffs = *res.coefficients;
        CHECK(coeffs.front() == 1);
        CHECK(coeffs.back() == 1);
        int64_t sum = 0;
        for (int32_t v : coeffs)
            sum += v;
        CHECK(sum == 1);
        CHECK(Int(res.diameter) <= t.p);
        // contiguity
        CHECK(int64_t(res.values.size()) == res.diameter + 1);
    }
}

TEST_CASE("coeff_set picks an engine and asserts contiguity") {
    Triple t = make_triple(3, 11, 16);
    CoeffResult res = coeff_set(t);
    CHECK_FALSE(res.coefficients.has_value());
    CHECK(res.diameter == 3);
    CHECK(res.values.size() == 4);
}

TEST_CASE("window scan equals dense summary on lopsided triples") {
    std::mt19937_64 rng(888);
    int done = 0;
    while (done < 25) {
        uint64_t a = 3 + rng() % 12;
        uint64_t b = a + 1 + rng() % 20;
        uint64_t lo = a * b + a + b;
        uint64_t c = lo + rng() % (4 * a * b);
        Int A(a), B(b), C(c);
        if (gcd(A, B) != 1 || gcd(A, C) != 1 || gcd(B, C) != 1)
            continue;
        Triple t = make_triple(A, B, C);
        if (!scan_applicable(t))
            continue;
        CoeffResult dense = coeff_vector(t, Engine::truncated);
        CoeffResult scanned = coeff_set_scan(t);
        CHECK(dense.set_min == scanned.set_min);
        CHECK(dense.set_max == scanned.set_max);
        CHECK(dense.values == scanned.values);
        ++done;
    }
}

TEST_CASE("scan handles a genuinely out-of-cap degree") {
    // (9, 11, 2^30): degree ~8.6e10, far beyond any dense allocation
    Triple t = make_triple(9, 11, Int(1) << 30);
    REQUIRE(scan_applicable(t));
    CoeffResult res = coeff_set(t, 1000000);
    CHECK(res.set_min == -1);
    CHECK(res.set_max == 1);
}

TEST_CASE("resource cap reports advise the point query") {
    Triple t = make_triple(101, 103, 107);
    CHECK_THROWS_AS(coeff_vector(t, Engine::truncated, 1000), resource_error);
    CHECK_THROWS_AS(coeff_vector(t, Engine::oracle, 1000), resource_error);
}

TEST_CASE("csv and summary formats") {
    Triple t = make_triple(3, 5, 7);
    CoeffResult res = coeff_vector(t, Engine::oracle);
    std::ostringstream os;
    write_csv(os, res);
    std::string csv = os.str();
    CHECK(csv.substr(0, 6) == "m,a_m\n");
    CHECK(csv.find("7,-2\n") != std::string::npos);
    std::string json = summary_json(t, res);
    CHECK(json.find("\"degree\":\"48\"") != std::string::npos);
    CHECK(json.find("\"diameter\":3") != std::string::npos);
}
