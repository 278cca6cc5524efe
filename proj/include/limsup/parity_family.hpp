#pragma once

#include <cstdint>
#include <vector>

#include "limsup/interval_set.hpp"
#include "limsup/json_io.hpp"
#include "limsup/tuple_scan.hpp"

namespace limsup {

/// The two parity collections C_1..C_{m+1} and D_1..D_{m+1}, built from the
/// 2^m dyadic intervals of length 2^-m.
///
/// Subsets of {1..m+1} are bitmasks (bit i-1 <=> element i) taken in
/// ascending integer order; the t-th qualifying subset receives dyadic
/// interval t. D uses the odd-size subsets (all 2^m cells assigned); C uses
/// the nonempty even-size subsets, which leaves the last cell unassigned.
struct ParityFamily {
    unsigned m = 0;
    std::vector<IntervalSet> C;
    std::vector<IntervalSet> D;
    /// d_assignment[t] / c_assignment[t]: subset mask owning dyadic cell t.
    std::vector<std::uint32_t> d_assignment;
    std::vector<std::uint32_t> c_assignment;
};

inline constexpr unsigned kMaxParityM = 12;

/// Throws std::invalid_argument for m == 0 or m > kMaxParityM.
ParityFamily build_parity_family(unsigned m);

struct ParityReport {
    bool pass = false;
    /// Exhaustive C/D equality for every tuple of 1..m distinct indices.
    EqualityReport equalities;
    Rational union_C;
    Rational union_D;
    /// mu(U D_i) == 1 and mu(U D_i) == mu(U C_i) + 2^-m.
    bool union_property = false;
    /// The (m+1)-wise intersection, where equality is not expected.
    TupleWitness full_intersection;
};

ParityReport verify_parity_properties(const ParityFamily& family);

Json to_json(const ParityFamily& family);
Json to_json(const ParityReport& report);

} // namespace limsup
