// Compiled with -mavx2 when LIMSUP_ENABLE_AVX2 is on; only reached after the
// runtime CPU check in dyadic_dispatch.cpp.

#include <bit>

#include "limsup/dyadic.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace limsup::simd::avx2 {

#if defined(__AVX2__)

namespace {

// Nibble-lookup popcount (Mula): per-byte counts via pshufb, then horizontal
// byte sums into the four 64-bit lanes with sad_epu8.
inline __m256i popcount_bytes(__m256i v)
{
    const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                            0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low_mask = _mm256_set1_epi8(0x0f);
    const __m256i lo = _mm256_and_si256(v, low_mask);
    const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
    return _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
}

inline std::uint64_t horizontal_sum(__m256i acc)
{
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

template <class Load>
std::uint64_t count_blocks(std::size_t words, Load load)
{
    __m256i acc = _mm256_setzero_si256();
    const __m256i zero = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= words; i += 4) acc = _mm256_add_epi64(acc, _mm256_sad_epu8(popcount_bytes(load(i)), zero));
    return horizontal_sum(acc);
}

} // namespace

bool compiled() { return true; }

std::uint64_t popcount(std::span<const std::uint64_t> a)
{
    std::uint64_t n = count_blocks(a.size(), [&](std::size_t i) {
        return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + i));
    });
    for (std::size_t i = a.size() & ~std::size_t{3}; i < a.size(); ++i) n += std::popcount(a[i]);
    return n;
}

std::uint64_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b)
{
    std::uint64_t n = count_blocks(a.size(), [&](std::size_t i) {
        return _mm256_and_si256(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + i)),
                                _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b.data() + i)));
    });
    for (std::size_t i = a.size() & ~std::size_t{3}; i < a.size(); ++i) n += std::popcount(a[i] & b[i]);
    return n;
}

void and_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src)
{
    std::size_t i = 0;
    for (; i + 4 <= dst.size(); i += 4) {
        auto* d = reinterpret_cast<__m256i*>(dst.data() + i);
        const auto s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + i));
        _mm256_storeu_si256(d, _mm256_and_si256(_mm256_loadu_si256(d), s));
    }
    for (; i < dst.size(); ++i) dst[i] &= src[i];
}

#else

bool compiled() { return false; }
std::uint64_t popcount(std::span<const std::uint64_t> a) { return scalar::popcount(a); }
std::uint64_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b)
{
    return scalar::and_popcount(a, b);
}
void and_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) { scalar::and_into(dst, src); }

#endif

} // namespace limsup::simd::avx2
