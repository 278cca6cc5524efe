#pragma once

// Exhaustive scans over strictly increasing index tuples, reusing the
// intersection of each prefix. Works for any set type with a free
// `intersect(a, b)`.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "limsup/json_io.hpp"
#include "limsup/rational.hpp"

namespace limsup {

/// A tuple (1-based indices) whose two intersection measures differ.
struct TupleWitness {
    std::vector<std::size_t> indices;
    Rational lhs;
    Rational rhs;
};

struct EqualityReport {
    bool pass = true;
    std::size_t tuples_checked = 0;
    std::optional<TupleWitness> witness;
};

Json to_json(const TupleWitness& witness);
Json to_json(const EqualityReport& report);

/// Visits every increasing tuple of exactly `length` indices from [0, n) in
/// lexicographic order. `visit(tuple, intersection)` returns false to stop.
/// Returns false when stopped early.
template <class Set, class Visit>
bool scan_tuples(std::span<const Set> sets, std::size_t length, Visit&& visit)
{
    const std::size_t n = sets.size();
    if (length == 0 || length > n) return true;
    std::vector<std::size_t> idx(length);
    std::vector<Set> prefix(length);
    // Depth-first with explicit stack: idx[d] is the index chosen at depth d.
    std::size_t depth = 0;
    idx[0] = 0;
    while (true) {
        if (idx[depth] > n - (length - depth)) {
            if (depth == 0) return true;
            --depth;
            ++idx[depth];
            continue;
        }
        prefix[depth] = depth == 0 ? sets[idx[0]] : intersect(prefix[depth - 1], sets[idx[depth]]);
        if (depth + 1 == length) {
            if (!visit(std::span<const std::size_t>(idx), prefix[depth])) return false;
            ++idx[depth];
        } else {
            idx[depth + 1] = idx[depth] + 1;
            ++depth;
        }
    }
}

/// Compares intersection measures of two equally long families over every
/// increasing tuple of length min_len..max_len; stops at the first mismatch.
template <class Set, class Measure>
EqualityReport compare_intersections(std::span<const Set> a, std::span<const Set> b, std::size_t min_len,
                                     std::size_t max_len, Measure&& measure)
{
    EqualityReport report;
    const std::size_t n = a.size();
    for (std::size_t len = min_len; len <= max_len && len <= n && report.pass; ++len) {
        // Walk A and B in lockstep by scanning index tuples once and
        // intersecting B along the same path.
        std::vector<Set> b_prefix(len);
        std::vector<std::size_t> last(len, static_cast<std::size_t>(-1));
        scan_tuples<Set>(a, len, [&](std::span<const std::size_t> idx, const Set& inter_a) {
            std::size_t d = 0;
            while (d < len && last[d] == idx[d]) ++d;
            for (; d < len; ++d) {
                b_prefix[d] = d == 0 ? b[idx[0]] : intersect(b_prefix[d - 1], b[idx[d]]);
                last[d] = idx[d];
            }
            ++report.tuples_checked;
            Rational ma = measure(inter_a);
            Rational mb = measure(b_prefix[len - 1]);
            if (ma != mb) {
                report.pass = false;
                TupleWitness w;
                for (auto i : idx) w.indices.push_back(i + 1);
                w.lhs = std::move(ma);
                w.rhs = std::move(mb);
                report.witness = std::move(w);
                return false;
            }
            return true;
        });
    }
    return report;
}

} // namespace limsup
