#include "limsup/interval_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace limsup {

void IntervalSetBuilder::append(Rational lo, Rational hi)
{
    if (!(lo < hi)) return;
    auto& v = out_.pieces_;
    if (!v.empty()) {
        if (lo < v.back().hi) throw std::logic_error("IntervalSetBuilder: pieces out of order");
        if (lo == v.back().hi) {
            v.back().hi = std::move(hi);
            return;
        }
    }
    v.push_back({std::move(lo), std::move(hi)});
}

IntervalSet IntervalSetBuilder::finish() && { return std::move(out_); }

IntervalSet IntervalSet::canonicalize(std::vector<Interval> raw)
{
    for (const auto& iv : raw) {
        if (!(iv.lo < iv.hi))
            throw std::invalid_argument("interval [" + iv.lo.str() + ", " + iv.hi.str() + ") has lo >= hi");
        if (iv.lo < 0 || iv.hi > 1)
            throw std::invalid_argument("interval [" + iv.lo.str() + ", " + iv.hi.str() + ") leaves [0,1]");
    }
    std::sort(raw.begin(), raw.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
    IntervalSet out;
    for (auto& iv : raw) {
        if (!out.pieces_.empty() && iv.lo <= out.pieces_.back().hi) {
            if (iv.hi > out.pieces_.back().hi) out.pieces_.back().hi = std::move(iv.hi);
        } else {
            out.pieces_.push_back(std::move(iv));
        }
    }
    return out;
}

IntervalSet IntervalSet::span_of(const Rational& lo, const Rational& hi)
{
    if (lo == hi) return {};
    return canonicalize({{lo, hi}});
}

Rational IntervalSet::measure() const
{
    Rational total;
    for (const auto& iv : pieces_) total += iv.hi - iv.lo;
    return total;
}

bool IntervalSet::subset_of(const IntervalSet& other) const
{
    std::size_t j = 0;
    for (const auto& iv : pieces_) {
        // Canonical pieces are maximal, so a contained piece sits inside one piece of `other`.
        while (j < other.pieces_.size() && other.pieces_[j].hi <= iv.lo) ++j;
        if (j == other.pieces_.size()) return false;
        if (other.pieces_[j].lo > iv.lo || other.pieces_[j].hi < iv.hi) return false;
    }
    return true;
}

bool IntervalSet::disjoint_from(const IntervalSet& other) const
{
    std::size_t i = 0, j = 0;
    while (i < pieces_.size() && j < other.pieces_.size()) {
        const auto& a = pieces_[i];
        const auto& b = other.pieces_[j];
        if (a.lo < b.hi && b.lo < a.hi) return false;
        if (a.hi <= b.hi) ++i; else ++j;
    }
    return true;
}

IntervalSet intersect(const IntervalSet& a, const IntervalSet& b)
{
    const auto x = a.intervals();
    const auto y = b.intervals();
    IntervalSetBuilder out;
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        const Rational& lo = std::max(x[i].lo, y[j].lo);
        const Rational& hi = std::min(x[i].hi, y[j].hi);
        if (lo < hi) out.append(lo, hi);
        if (x[i].hi <= y[j].hi) ++i; else ++j;
    }
    return std::move(out).finish();
}

IntervalSet unite(const IntervalSet& a, const IntervalSet& b)
{
    const auto x = a.intervals();
    const auto y = b.intervals();
    IntervalSetBuilder out;
    std::size_t i = 0, j = 0;
    Rational cur_lo, cur_hi;
    bool open = false;
    auto feed = [&](const Interval& iv) {
        if (open && iv.lo <= cur_hi) {
            if (iv.hi > cur_hi) cur_hi = iv.hi;
            return;
        }
        if (open) out.append(cur_lo, cur_hi);
        cur_lo = iv.lo;
        cur_hi = iv.hi;
        open = true;
    };
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].lo <= y[j].lo)) feed(x[i++]);
        else feed(y[j++]);
    }
    if (open) out.append(cur_lo, cur_hi);
    return std::move(out).finish();
}

IntervalSet unite_all(std::span<const IntervalSet> sets)
{
    std::vector<Interval> all;
    for (const auto& s : sets) all.insert(all.end(), s.intervals().begin(), s.intervals().end());
    return IntervalSet::canonicalize(std::move(all));
}

IntervalSet intersect_all(std::span<const IntervalSet* const> sets)
{
    if (sets.empty()) return IntervalSet::unit();
    IntervalSet acc = *sets.front();
    for (std::size_t k = 1; k < sets.size() && !acc.empty(); ++k) acc = intersect(acc, *sets[k]);
    return acc;
}

IntervalSet complement(const IntervalSet& a)
{
    IntervalSetBuilder out;
    Rational cursor = 0;
    for (const auto& iv : a.intervals()) {
        out.append(cursor, iv.lo);
        cursor = iv.hi;
    }
    out.append(cursor, 1);
    return std::move(out).finish();
}

IntervalSet difference(const IntervalSet& a, const IntervalSet& b) { return intersect(a, complement(b)); }

IntervalSet scale_translate(const IntervalSet& a, const Rational& factor, const Rational& offset)
{
    if (factor.sign() < 0 || offset.sign() < 0)
        throw std::invalid_argument("scale_translate: factor and offset must be non-negative");
    if (factor + offset > 1)
        throw std::invalid_argument("scale_translate: image " + factor.str() + "*x+" + offset.str() +
                                    " escapes [0,1]");
    if (factor.is_zero()) return {};
    IntervalSetBuilder out;
    out.reserve(a.size());
    for (const auto& iv : a.intervals()) out.append(factor * iv.lo + offset, factor * iv.hi + offset);
    return std::move(out).finish();
}

} // namespace limsup
