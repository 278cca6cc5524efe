#include <doctest.h>

#include "limsup/nested_family.hpp"
#include "test_support.hpp"

using namespace limsup;
using limsup::testing::r;

namespace {

const NestedLevel& at(const std::vector<NestedLevel>& levels, unsigned n) { return levels.at(n - 1); }

} // namespace

TEST_CASE("arguments are validated")
{
    CHECK_THROWS_AS(build_nested_explicit({3, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(build_nested_explicit({0, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(build_nested_explicit({1, 2, 0}), std::invalid_argument);
    ResourceCaps tight;
    tight.max_intervals = 100;
    CHECK_THROWS_AS(build_nested_explicit({1, 10, 4}, tight), ResourceError);
    const unsigned bad[] = {2, 2};
    CHECK_THROWS_AS(nested_intersection_measure_formula(1, 2, bad), std::invalid_argument);
    const unsigned zero[] = {0, 1};
    CHECK_THROWS_AS(nested_intersection_measure_formula(1, 2, zero), std::invalid_argument);
    CHECK_THROWS_AS(nested_intersection_measure_formula(1, 2, {}), std::invalid_argument);
}

TEST_CASE("p = 3, q = 5 level measures")
{
    const auto levels = build_nested_explicit({3, 5, 3});
    REQUIRE(levels.size() == 3);
    CHECK(at(levels, 1).G.measure() == r(3, 5));
    CHECK(at(levels, 2).G.measure() == r(3, 10));
    CHECK(at(levels, 3).G.measure() == r(1, 5));
    const auto& h3 = at(levels, 3).H;
    CHECK(h3.measure() == r(1, 3));
    REQUIRE(h3.size() == 25);
    for (const auto& iv : h3.intervals()) CHECK(iv.length() == r(1, 75));
    for (unsigned n = 1; n <= 3; ++n) CHECK(at(levels, n).H.measure() == r(1, n));
}

TEST_CASE("p = q gives G_n = H_n")
{
    const auto levels = build_nested_explicit({1, 1, 4});
    for (const auto& lv : levels) CHECK(lv.G == lv.H);
    CHECK(verify_nested({1, 1, 4}).pass);
}

TEST_CASE("closed-form intersection measure")
{
    const unsigned idx[] = {1, 3, 5};
    CHECK(nested_intersection_measure_formula(3, 5, idx) == r(27, 625));
    const unsigned pair[] = {2, 3};
    CHECK(nested_intersection_measure_formula(3, 5, pair) == r(9, 75));
    const FormulaNested f(3, 5);
    CHECK(f.measure_G(4) == r(3, 20));
    CHECK(f.measure_H(4) == r(1, 4));
}

TEST_CASE("explicit construction matches the product rule")
{
    // direct oracle: intersect the materialized sets and compare with p^r/(q^r i_r)
    const std::uint64_t p = 2, q = 3;
    const auto levels = build_nested_explicit({p, q, 4});
    for (unsigned mask = 1; mask < 16; ++mask) {
        std::vector<unsigned> idx;
        IntervalSet acc = IntervalSet::unit();
        for (unsigned i = 0; i < 4; ++i)
            if (mask >> i & 1U) {
                idx.push_back(i + 1);
                acc = intersect(acc, levels[i].G);
            }
        const auto rcount = static_cast<unsigned>(idx.size());
        const Rational expect = Rational(2).pow(rcount) / (Rational(3).pow(rcount) * Rational(idx.back()));
        CHECK(acc.measure() == expect);
    }
}

TEST_CASE("verify_nested")
{
    const auto rep = verify_nested({3, 5, 4});
    CHECK(rep.pass);
    CHECK(rep.measures_ok);
    CHECK(rep.containment_ok);
    CHECK(rep.tuples.tuples_checked == 15);
    CHECK(rep.tail_ok);
    REQUIRE(rep.tail.size() == 4);
    for (const auto& t : rep.tail) CHECK(t.union_measure <= t.bound);

    CHECK(verify_nested({2, 3, 5}).pass);
}

TEST_CASE("corrupted level is caught")
{
    auto levels = build_nested_explicit({3, 5, 4});
    // shift G_3 by dropping its first interval
    const auto first = at(levels, 3).G.intervals()[0];
    levels[2].G = difference(levels[2].G, IntervalSet::span_of(first.lo, first.hi));
    const auto rep = verify_nested_levels(3, 5, levels);
    CHECK_FALSE(rep.pass);
    CHECK_FALSE(rep.measures_ok);
}

TEST_CASE("literal first level breaks the (1,2) product")
{
    const auto rep = verify_nested({1, 2, 3, FirstLevel::literal});
    CHECK_FALSE(rep.pass);
    REQUIRE(rep.tuples.witness.has_value());
    CHECK(rep.tuples.witness->indices == std::vector<std::size_t>{1, 2});
    CHECK(rep.tuples.witness->lhs == r(1, 4));
    CHECK(rep.tuples.witness->rhs == r(1, 8));
}

TEST_CASE("formula and explicit backends agree")
{
    const ExplicitNested ex(build_nested_explicit({3, 4, 4}));
    const FormulaNested fo(3, 4);
    for (unsigned n = 1; n <= 4; ++n) {
        CHECK(ex.measure_H(n) == fo.measure_H(n));
        CHECK(ex.measure_G(n) == fo.measure_G(n));
    }
    const unsigned idx[] = {1, 2, 4};
    CHECK(ex.intersection(idx) == fo.intersection(idx));
    const unsigned too_deep[] = {5};
    CHECK_THROWS_AS(ex.intersection(too_deep), std::out_of_range);
}
