#include <bit>

#include "limsup/dyadic.hpp"

namespace limsup::simd::scalar {

std::uint64_t popcount(std::span<const std::uint64_t> a)
{
    std::uint64_t n = 0;
    for (auto w : a) n += static_cast<std::uint64_t>(std::popcount(w));
    return n;
}

std::uint64_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b)
{
    std::uint64_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) n += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
    return n;
}

void and_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src)
{
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] &= src[i];
}

} // namespace limsup::simd::scalar
