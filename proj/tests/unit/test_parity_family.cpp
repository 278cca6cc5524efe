#include <doctest.h>

#include <bit>

#include "limsup/parity_family.hpp"
#include "test_support.hpp"

using namespace limsup;
using limsup::testing::r;

namespace {

// Counting oracle: mu(∩_{i in S} D_i) is the number of odd subsets of
// {1..m+1} that contain S, times 2^-m (each such subset owns one cell).
Rational oracle_measure(unsigned m, std::uint32_t s, bool odd)
{
    std::uint64_t count = 0;
    for (std::uint32_t mask = 1; mask < (1U << (m + 1)); ++mask) {
        const bool is_odd = std::popcount(mask) % 2 == 1;
        if (is_odd == odd && (mask & s) == s) ++count;
    }
    return Rational(BigInt(static_cast<unsigned long>(count)), BigInt(1) << m);
}

IntervalSet intersect_mask(const std::vector<IntervalSet>& sets, std::uint32_t s)
{
    IntervalSet acc = IntervalSet::unit();
    for (std::size_t i = 0; i < sets.size(); ++i)
        if (s >> i & 1U) acc = intersect(acc, sets[i]);
    return acc;
}

} // namespace

TEST_CASE("m = 0 is rejected")
{
    CHECK_THROWS_AS(build_parity_family(0), std::invalid_argument);
    CHECK_THROWS_AS(build_parity_family(kMaxParityM + 1), std::invalid_argument);
}

TEST_CASE("m = 3 worked values")
{
    const auto f = build_parity_family(3);
    REQUIRE(f.C.size() == 4);
    CHECK(unite_all(f.D).measure() == 1);
    CHECK(unite_all(f.C).measure() == r(7, 8));
    for (unsigned i = 0; i < 4; ++i) {
        CHECK(f.D[i].measure() == r(1, 2));
        CHECK(f.C[i].measure() == r(1, 2));
    }
    CHECK(intersect(f.D[0], f.D[1]).measure() == r(1, 4));
    CHECK(intersect(f.C[0], f.C[1]).measure() == r(1, 4));
    CHECK(intersect(intersect(f.D[0], f.D[1]), f.D[2]).measure() == r(1, 8));
    CHECK(intersect(intersect(f.C[0], f.C[1]), f.C[2]).measure() == r(1, 8));
    // the uncovered cell is the last one
    CHECK(complement(unite_all(f.C)) == IntervalSet::span_of(r(7, 8), 1));
}

TEST_CASE("intersection measures match the subset-counting oracle")
{
    for (unsigned m = 1; m <= 5; ++m) {
        const auto f = build_parity_family(m);
        for (std::uint32_t s = 1; s < (1U << (m + 1)); ++s) {
            CHECK(intersect_mask(f.D, s).measure() == oracle_measure(m, s, true));
            CHECK(intersect_mask(f.C, s).measure() == oracle_measure(m, s, false));
        }
    }
}

TEST_CASE("sign-pattern cells follow the parity case formula")
{
    // mu(D_1 ∩ .. ∩ D_l ∩ D_{l+1}^σ ∩ .. ∩ D_{m+1}^σ) = 2^-m when
    // l + #{σ_i = 1} is odd and 0 otherwise; C uses "even".
    for (unsigned m = 1; m <= 4; ++m) {
        const auto f = build_parity_family(m);
        const Rational cell(BigInt(1), BigInt(1) << m);
        for (unsigned l = 1; l <= m; ++l) {
            const unsigned rest = m + 1 - l;
            for (std::uint32_t sigma = 0; sigma < (1U << rest); ++sigma) {
                IntervalSet d = IntervalSet::unit(), c = IntervalSet::unit();
                for (unsigned i = 0; i <= m; ++i) {
                    const bool keep = i < l || (sigma >> (i - l) & 1U);
                    d = intersect(d, keep ? f.D[i] : complement(f.D[i]));
                    c = intersect(c, keep ? f.C[i] : complement(f.C[i]));
                }
                const unsigned ones = l + static_cast<unsigned>(std::popcount(sigma));
                CHECK(d.measure() == (ones % 2 == 1 ? cell : Rational(0)));
                CHECK(c.measure() == (ones % 2 == 0 ? cell : Rational(0)));
            }
        }
    }
}

TEST_CASE("every cell lies in some D_i and exactly one lies in no C_i")
{
    for (unsigned m = 1; m <= 6; ++m) {
        const auto f = build_parity_family(m);
        CHECK(unite_all(f.D) == IntervalSet::unit());
        CHECK(complement(unite_all(f.C)).measure() == Rational(BigInt(1), BigInt(1) << m));
    }
}

TEST_CASE("verify_parity_properties")
{
    const auto r2 = verify_parity_properties(build_parity_family(2));
    CHECK(r2.pass);
    CHECK(r2.equalities.tuples_checked == 6);

    const auto r3 = verify_parity_properties(build_parity_family(3));
    CHECK(r3.pass);
    CHECK(r3.full_intersection.lhs == r(1, 8));  // C_1∩..∩C_4 holds {1,2,3,4}
    CHECK(r3.full_intersection.rhs == 0);
    CHECK(r3.full_intersection.indices == std::vector<std::size_t>{1, 2, 3, 4});

    auto broken = build_parity_family(3);
    // move D_1's first cell [0,1/8) onto [7/8,1)
    broken.D[0] = unite(difference(broken.D[0], IntervalSet::span_of(0, r(1, 8))), IntervalSet::span_of(r(7, 8), 1));
    const auto bad = verify_parity_properties(broken);
    CHECK_FALSE(bad.pass);
    REQUIRE(bad.equalities.witness.has_value());
    CHECK(bad.equalities.witness->indices.size() >= 2);
}
