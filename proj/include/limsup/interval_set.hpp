#pragma once

#include <span>
#include <vector>

#include "limsup/rational.hpp"

namespace limsup {

/// Half-open interval [lo, hi).
struct Interval {
    Rational lo;
    Rational hi;

    Rational length() const { return hi - lo; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of half-open rational intervals inside [0,1).
///
/// Always held in canonical form: intervals sorted, pairwise disjoint and
/// non-adjacent (hi_k < lo_{k+1}), so set equality is structural equality.
/// Every operation returns a canonical set.
class IntervalSet {
public:
    IntervalSet() = default;

    /// Sorts and merges overlapping or touching pieces. Throws
    /// std::invalid_argument if some lo >= hi or an endpoint leaves [0,1].
    static IntervalSet canonicalize(std::vector<Interval> raw);

    /// Single interval [lo, hi); empty when lo == hi.
    static IntervalSet span_of(const Rational& lo, const Rational& hi);
    static IntervalSet unit() { return span_of(0, 1); }

    std::span<const Interval> intervals() const { return pieces_; }
    std::size_t size() const { return pieces_.size(); }
    bool empty() const { return pieces_.empty(); }

    Rational measure() const;

    /// True when this set is contained in `other`.
    bool subset_of(const IntervalSet& other) const;
    bool disjoint_from(const IntervalSet& other) const;

    friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

private:
    friend class IntervalSetBuilder;
    std::vector<Interval> pieces_;
};

IntervalSet intersect(const IntervalSet& a, const IntervalSet& b);
IntervalSet unite(const IntervalSet& a, const IntervalSet& b);
IntervalSet unite_all(std::span<const IntervalSet> sets);
IntervalSet intersect_all(std::span<const IntervalSet* const> sets);
/// Complement within [0,1).
IntervalSet complement(const IntervalSet& a);
IntervalSet difference(const IntervalSet& a, const IntervalSet& b);

/// Image under x -> factor * x + offset. Requires factor > 0, offset >= 0 and
/// factor + offset <= 1; a zero factor collapses to the empty set.
IntervalSet scale_translate(const IntervalSet& a, const Rational& factor, const Rational& offset);

/// Appends pieces in ascending order, merging touching neighbours on the fly.
/// Used by constructions that already generate sorted, non-overlapping output.
class IntervalSetBuilder {
public:
    void reserve(std::size_t n) { out_.pieces_.reserve(n); }
    /// Requires lo >= the previous hi; empty pieces are skipped.
    void append(Rational lo, Rational hi);
    IntervalSet finish() &&;

private:
    IntervalSet out_;
};

} // namespace limsup
