#include <doctest.h>

#include <algorithm>
#include <array>

#include "iepoly/primesearch.hpp"
#include "iepoly/theorems.hpp"

using namespace iepoly;

namespace {

bool contains(const std::vector<Int>& v, const Int& x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}

/* Direct filter: every prime triple in range through the precheck. */
std::vector<std::array<Int, 3>> brute_triples(const Int& pmax, const Int& qmax,
                                              const Int& rmax) {
    std::vector<std::array<Int, 3>> out;
    for (Int p = 2; p <= pmax; ++p) {
        if (!is_prime(p))
            continue;
        for (Int q = p + 1; q <= qmax; ++q) {
            if (!is_prime(q))
                continue;
            for (Int r = 2; r <= rmax; ++r) {
                if (!is_prime(r) || r == p || r == q)
                    continue;
                if (thm3_precheck(p, q, r).all())
                    out.push_back({p, q, r});
            }
        }
    }
    return out;
}

} // namespace

TEST_CASE("q candidates for p = 3") {
    auto qs = find_q_candidates(3, 100);
    CHECK(contains(qs, 11));
    CHECK(contains(qs, 83));
    CHECK_FALSE(contains(qs, 13));
    auto qs60 = find_q_candidates(3, 60);
    CHECK(contains(qs60, 59));
    CHECK(find_q_candidates(7, 20).empty()); // bounded search may come up empty
    CHECK_THROWS_AS(find_q_candidates(5, 100), validation_error); // 5 = 5 (mod 8)
}

TEST_CASE("r candidates for (3, 11)") {
    auto rs = find_r_candidates(3, 11, 30);
    CHECK(contains(rs, 2));
    CHECK(contains(rs, 29));
    CHECK_FALSE(contains(rs, 3));
    CHECK_FALSE(contains(rs, 11));
    CHECK(find_r_candidates(3, 11, 1).empty());
    CHECK_THROWS_AS(find_r_candidates(3, 7, 30), validation_error);
}

TEST_CASE("triple search reproduces the worked example") {
    auto triples = find_triples(3, 20, 30);
    bool has_2 = false, has_29 = false;
    for (const auto& c : triples) {
        CHECK(thm3_precheck(c.p, c.q, c.r).all());
        if (c.p == 3 && c.q == 11 && c.r == 2)
            has_2 = true;
        if (c.p == 3 && c.q == 11 && c.r == 29)
            has_29 = true;
    }
    CHECK(has_2);
    CHECK(has_29);

    CHECK(find_triples(3, 10, 30).empty()); // 11 is the smallest qualifying q
    CHECK(find_triples(2, 50, 50).empty()); // no eligible p at all
}

TEST_CASE("progression search equals the brute-force filter") {
    auto fast = find_triples(20, 300, 300);
    auto brute = brute_triples(20, 300, 300);
    REQUIRE(fast.size() == brute.size());
    for (size_t k = 0; k < fast.size(); ++k) {
        CHECK(fast[k].p == brute[k][0]);
        CHECK(fast[k].q == brute[k][1]);
        CHECK(fast[k].r == brute[k][2]);
    }
}

TEST_CASE("congruence traces recompute") {
    auto triples = find_triples(3, 20, 30);
    REQUIRE(!triples.empty());
    for (const auto& c : triples) {
        CHECK(c.q_mod8 == lnr(c.q, 8));
        CHECK(c.q_mod_p2 == lnr(c.q, c.p * c.p));
        CHECK(c.r_mod_p2 == lnr(c.r, c.p * c.p));
        CHECK(c.r_mod_q2 == lnr(c.r, c.q * c.q));
        CHECK(c.q_primitive_p2);
        CHECK(c.r_primitive_p2);
        CHECK(c.r_primitive_q2);
        std::string line = candidate_json(c);
        CHECK(line.find("\"p\":\"" + c.p.get_str() + "\"") != std::string::npos);
    }
}
