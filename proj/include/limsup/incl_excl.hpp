#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "limsup/caps.hpp"
#include "limsup/measure_table.hpp"
#include "limsup/tuple_scan.hpp"

namespace limsup {

/// mu(A_k ∪ ... ∪ A_n) as the alternating sum over every nonempty subset of
/// [k, n]. Throws MissingTupleError naming the first absent subset and
/// ResourceError when n - k + 1 exceeds caps.max_ie_range.
Rational union_by_inclusion_exclusion(const MeasureTable& table, std::size_t k, std::size_t n,
                                      const ResourceCaps& caps = ResourceCaps{});

enum class Relation { equal, lhs_greater, lhs_less };

std::string to_string(Relation r);

/// Both union measures over one range [k, n]. The conclusion is only judged
/// when the entry-wise hypothesis holds on every subset of the range;
/// otherwise `offending` names the first subset (by length, then
/// lexicographically) that breaks it.
struct UnionComparison {
    std::size_t k = 0;
    std::size_t n = 0;
    bool hypothesis_holds = false;
    std::optional<TupleWitness> offending;
    Rational lhs_union;
    Rational rhs_union;
    Relation relation = Relation::equal;
    bool violated = false;  ///< hypothesis holds but the conclusion fails
};

struct ComparisonReport {
    std::string mode;
    bool pass = true;  ///< no violated range
    std::size_t ranges_checked = 0;
    std::size_t ranges_with_hypothesis = 0;
    std::vector<UnionComparison> ranges;
};

/// Ranges 1 <= k <= k_max, k <= n <= n_max with n - k + 1 <= caps.max_ie_range.
/// Hypothesis: every intersection measure in the range agrees. Conclusion:
/// equal union measures.
ComparisonReport verify_thm13(const MeasureTable& a, const MeasureTable& b, std::size_t k_max, std::size_t n_max,
                              const ResourceCaps& caps = ResourceCaps{});

/// Hypothesis: mu_A >= mu_B on odd-length subsets and mu_A <= mu_B on
/// even-length ones. Conclusion: mu_A(union) >= mu_B(union).
ComparisonReport verify_thm14(const MeasureTable& a, const MeasureTable& b, std::size_t k_max, std::size_t n_max,
                              const ResourceCaps& caps = ResourceCaps{});

Json to_json(const UnionComparison& c);
Json to_json(const ComparisonReport& r);

} // namespace limsup
