#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "limsup/dyadic.hpp"

namespace limsup::simd {

std::string_view name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

bool avx2_available()
{
#if defined(__x86_64__) || defined(__i386__)
    static const bool ok = avx2::compiled() && __builtin_cpu_supports("avx2");
    return ok;
#else
    return false;
#endif
}

namespace {

Backend initial_backend()
{
    if (const char* env = std::getenv("LIMSUP_SIMD")) {
        const std::string v(env);
        if (v == "scalar") return Backend::scalar;
        if (v == "avx2") return avx2_available() ? Backend::avx2 : Backend::scalar;
    }
    return avx2_available() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& current()
{
    static std::atomic<Backend> b{initial_backend()};
    return b;
}

} // namespace

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend b)
{
    if (b == Backend::avx2 && !avx2_available()) throw std::runtime_error("AVX2 backend not available on this CPU/build");
    current().store(b, std::memory_order_relaxed);
}

std::uint64_t popcount(std::span<const std::uint64_t> a)
{
    return active_backend() == Backend::avx2 ? avx2::popcount(a) : scalar::popcount(a);
}

std::uint64_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b)
{
    if (a.size() != b.size()) throw std::invalid_argument("and_popcount: size mismatch");
    return active_backend() == Backend::avx2 ? avx2::and_popcount(a, b) : scalar::and_popcount(a, b);
}

void and_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src)
{
    if (dst.size() != src.size()) throw std::invalid_argument("and_into: size mismatch");
    if (active_backend() == Backend::avx2) avx2::and_into(dst, src);
    else scalar::and_into(dst, src);
}

} // namespace limsup::simd
