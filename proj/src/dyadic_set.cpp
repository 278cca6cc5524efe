#include <stdexcept>

#include "limsup/dyadic.hpp"

namespace limsup {

namespace {

constexpr unsigned kMaxLevel = 30;

std::uint64_t cell_index(const Rational& x, const Rational& scale, unsigned level)
{
    const Rational t = x / scale * Rational(BigInt(BigInt(1) << level));
    if (!t.is_integer())
        throw std::invalid_argument("endpoint " + x.str() + " is not on the 2^-" + std::to_string(level) + " grid");
    return t.numerator().get_ui();
}

} // namespace

DyadicSet::DyadicSet(unsigned level) : level_(level)
{
    if (level > kMaxLevel) throw std::invalid_argument("dyadic level too large");
    words_.assign(std::max<std::uint64_t>(1, cells() / 64), 0);
}

DyadicSet DyadicSet::from_intervals(const IntervalSet& set, unsigned level, const Rational& scale)
{
    DyadicSet out(level);
    if (set.empty()) return out;
    if (scale.sign() <= 0) throw std::invalid_argument("dyadic encoding needs a positive scale");
    for (const auto& iv : set.intervals()) {
        std::uint64_t t = cell_index(iv.lo, scale, level);
        const std::uint64_t end = cell_index(iv.hi, scale, level);
        if (end > out.cells()) throw std::invalid_argument("interval beyond the scaled unit interval");
        for (; t < end && (t & 63) != 0; ++t) out.set_cell(t);
        for (; t + 64 <= end; t += 64) out.words_[t / 64] = ~std::uint64_t{0};
        for (; t < end; ++t) out.set_cell(t);
    }
    return out;
}

IntervalSet DyadicSet::to_intervals(const Rational& scale) const
{
    IntervalSetBuilder out;
    const Rational cell = scale / Rational(BigInt(BigInt(1) << level_));
    std::uint64_t t = 0;
    const std::uint64_t n = cells();
    while (t < n) {
        if (!test_cell(t)) { ++t; continue; }
        const std::uint64_t start = t;
        while (t < n && test_cell(t)) ++t;
        out.append(cell * Rational(start), cell * Rational(t));
    }
    return std::move(out).finish();
}

void DyadicSet::set_cell(std::uint64_t t) { words_[t / 64] |= std::uint64_t{1} << (t % 64); }

bool DyadicSet::test_cell(std::uint64_t t) const { return (words_[t / 64] >> (t % 64)) & 1U; }

Rational DyadicSet::measure(const Rational& scale) const
{
    return scale * Rational(BigInt(count()), BigInt(1) << level_);
}

DyadicSet intersect(const DyadicSet& a, const DyadicSet& b)
{
    if (a.level() != b.level()) throw std::invalid_argument("dyadic intersect: level mismatch");
    DyadicSet out = a;
    simd::and_into(out.words(), b.words());
    return out;
}

} // namespace limsup
