#pragma once

// Dyadic-cell bitsets and their popcount kernels.
//
// Sets built from dyadic intervals of one fixed length 2^-L are encoded as an
// L-level bitset (bit t <=> cell [t 2^-L, (t+1) 2^-L)). Intersection becomes
// AND and measure becomes popcount * 2^-L, both exact. The word-level loops
// exist as a scalar reference and an AVX2 variant chosen at runtime; the two
// are required to agree bit-for-bit.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "limsup/interval_set.hpp"

namespace limsup::simd {

enum class Backend { scalar, avx2 };

std::string_view name(Backend b);
bool avx2_available();

/// Backend in use. Defaults to the best available one; LIMSUP_SIMD=scalar|avx2
/// overrides (an unavailable request falls back to scalar).
Backend active_backend();
/// Throws std::runtime_error when the requested backend is not available.
void set_backend(Backend b);

std::uint64_t popcount(std::span<const std::uint64_t> a);
std::uint64_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
void and_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src);

namespace scalar {
std::uint64_t popcount(std::span<const std::uint64_t> a);
std::uint64_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
void and_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src);
} // namespace scalar

namespace avx2 {
bool compiled();
std::uint64_t popcount(std::span<const std::uint64_t> a);
std::uint64_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
void and_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src);
} // namespace avx2

} // namespace limsup::simd

namespace limsup {

class DyadicSet {
public:
    DyadicSet() = default;
    explicit DyadicSet(unsigned level);

    /// Encodes `set / scale` at resolution 2^-level. Throws std::invalid_argument
    /// when an endpoint of the rescaled set is not a multiple of 2^-level.
    /// A zero scale is only accepted for the empty set.
    static DyadicSet from_intervals(const IntervalSet& set, unsigned level, const Rational& scale = 1);

    /// Decodes back to x -> scale * x coordinates.
    IntervalSet to_intervals(const Rational& scale = 1) const;

    unsigned level() const { return level_; }
    std::uint64_t cells() const { return std::uint64_t{1} << level_; }
    std::span<const std::uint64_t> words() const { return words_; }
    std::span<std::uint64_t> words() { return words_; }

    void set_cell(std::uint64_t t);
    bool test_cell(std::uint64_t t) const;

    std::uint64_t count() const { return simd::popcount(words_); }
    Rational measure(const Rational& scale = 1) const;

    friend bool operator==(const DyadicSet&, const DyadicSet&) = default;

private:
    unsigned level_ = 0;
    std::vector<std::uint64_t> words_;
};

DyadicSet intersect(const DyadicSet& a, const DyadicSet& b);

} // namespace limsup
