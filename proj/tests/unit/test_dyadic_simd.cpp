#include <doctest.h>

#include <random>

#include "limsup/dyadic.hpp"
#include "test_support.hpp"

using namespace limsup;

namespace {

std::vector<std::uint64_t> random_words(std::mt19937_64& rng, std::size_t n)
{
    std::vector<std::uint64_t> w(n);
    for (auto& x : w) x = rng();
    return w;
}

struct BackendGuard {
    simd::Backend saved = simd::active_backend();
    ~BackendGuard() { simd::set_backend(saved); }
};

} // namespace

TEST_CASE("scalar and avx2 kernels agree on every length")
{
    if (!simd::avx2_available()) {
        MESSAGE("AVX2 not available; equivalence check skipped");
        return;
    }
    std::mt19937_64 rng(limsup::testing::kSeed);
    for (std::size_t n = 0; n <= 67; ++n) {
        const auto a = random_words(rng, n);
        const auto b = random_words(rng, n);
        CHECK(simd::scalar::popcount(a) == simd::avx2::popcount(a));
        CHECK(simd::scalar::and_popcount(a, b) == simd::avx2::and_popcount(a, b));
        auto x = a, y = a;
        simd::scalar::and_into(x, b);
        simd::avx2::and_into(y, b);
        CHECK(x == y);
    }
    // saturated words exercise the per-byte lookup at its maximum
    const std::vector<std::uint64_t> ones(33, ~std::uint64_t{0});
    CHECK(simd::avx2::popcount(ones) == 33 * 64);
}

TEST_CASE("backend selection")
{
    BackendGuard guard;
    simd::set_backend(simd::Backend::scalar);
    CHECK(simd::active_backend() == simd::Backend::scalar);
    if (simd::avx2_available()) {
        simd::set_backend(simd::Backend::avx2);
        CHECK(simd::name(simd::active_backend()) == "avx2");
    } else {
        CHECK_THROWS(simd::set_backend(simd::Backend::avx2));
    }
}

TEST_CASE("dyadic encoding matches interval measures under both backends")
{
    BackendGuard guard;
    std::vector<simd::Backend> backends{simd::Backend::scalar};
    if (simd::avx2_available()) backends.push_back(simd::Backend::avx2);
    for (auto backend : backends) {
        simd::set_backend(backend);
        std::mt19937_64 rng(limsup::testing::kSeed + 7);
        for (int trial = 0; trial < 200; ++trial) {
            const unsigned level = 6 + static_cast<unsigned>(trial % 5);
            const long den = 1L << level;
            const auto a = limsup::testing::random_set(rng, den, 12);
            const auto b = limsup::testing::random_set(rng, den, 12);
            const auto da = DyadicSet::from_intervals(a, level);
            const auto db = DyadicSet::from_intervals(b, level);
            CHECK(da.to_intervals() == a);
            CHECK(da.measure() == a.measure());
            CHECK(intersect(da, db).measure() == intersect(a, b).measure());
            CHECK(simd::and_popcount(da.words(), db.words()) == intersect(da, db).count());
        }
    }
}

TEST_CASE("dyadic encoding with a scale factor")
{
    const Rational c(1, 3);
    const auto s = scale_translate(IntervalSet::span_of(Rational(1, 4), Rational(3, 4)), c, 0);
    const auto d = DyadicSet::from_intervals(s, 2, c);
    CHECK(d.count() == 2);
    CHECK(d.measure(c) == s.measure());
    CHECK(d.to_intervals(c) == s);
    CHECK_THROWS_AS(DyadicSet::from_intervals(IntervalSet::span_of(0, Rational(1, 3)), 4), std::invalid_argument);
}
