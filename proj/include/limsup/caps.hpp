#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace limsup {

/// Thrown when a requested construction would exceed a resource cap.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Size limits for explicit constructions. Defaults can be overridden through
/// LIMSUP_MAX_INTERVALS, LIMSUP_MAX_DYADIC_LEVEL, LIMSUP_MAX_SETS and
/// LIMSUP_MAX_IE_RANGE.
struct ResourceCaps {
    /// Intervals in one materialized nested level (q^{n-1}).
    std::size_t max_intervals = 1'000'000;
    /// Finest dyadic resolution 2^-level for block families (level = K*m).
    unsigned max_dyadic_level = 24;
    /// Total number of sets in a block family.
    std::size_t max_sets = 100'000;
    /// Longest index range for inclusion-exclusion (2^range terms).
    std::size_t max_ie_range = 20;

    static ResourceCaps from_environment();
};

} // namespace limsup
