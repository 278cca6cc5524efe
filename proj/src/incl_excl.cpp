#include "limsup/incl_excl.hpp"

#include <bit>
#include <functional>

namespace limsup {

namespace {

void check_range(std::size_t k, std::size_t n, const ResourceCaps& caps)
{
    if (k == 0 || n < k) throw std::invalid_argument("range needs 1 <= k <= n");
    if (n - k + 1 > caps.max_ie_range)
        throw ResourceError("inclusion-exclusion over " + std::to_string(n - k + 1) + " sets exceeds cap " +
                            std::to_string(caps.max_ie_range));
    if (n - k + 1 > 63) throw ResourceError("inclusion-exclusion range too long");
}

IndexTuple subset(std::size_t k, std::uint64_t mask)
{
    IndexTuple t;
    for (std::size_t b = 0; mask >> b; ++b)
        if (mask >> b & 1U) t.push_back(k + b);
    return t;
}

/// Subsets of [k, n] ordered by size, then lexicographically.
template <class Visit>
void for_each_subset(std::size_t k, std::size_t n, Visit&& visit)
{
    const std::size_t len = n - k + 1;
    for (std::size_t r = 1; r <= len; ++r) {
        IndexTuple t(r);
        for (std::size_t i = 0; i < r; ++i) t[i] = k + i;
        while (true) {
            if (!visit(t)) return;
            std::size_t pos = r;
            while (pos > 0 && t[pos - 1] == n - (r - pos)) --pos;
            if (pos == 0) break;
            ++t[pos - 1];
            for (std::size_t i = pos; i < r; ++i) t[i] = t[i - 1] + 1;
        }
    }
}

using EntryTest = std::function<bool(std::size_t len, const Rational& a, const Rational& b)>;

ComparisonReport compare_ranges(std::string mode, const MeasureTable& a, const MeasureTable& b, std::size_t k_max,
                                std::size_t n_max, const ResourceCaps& caps, const EntryTest& hypothesis,
                                const std::function<bool(const Rational&, const Rational&)>& conclusion)
{
    ComparisonReport rep;
    rep.mode = std::move(mode);
    for (std::size_t k = 1; k <= k_max; ++k)
        for (std::size_t n = k; n <= n_max && n - k + 1 <= caps.max_ie_range; ++n) {
            UnionComparison c;
            c.k = k;
            c.n = n;
            c.hypothesis_holds = true;
            for_each_subset(k, n, [&](const IndexTuple& t) {
                const Rational& ma = a.at(t);
                const Rational& mb = b.at(t);
                if (hypothesis(t.size(), ma, mb)) return true;
                c.hypothesis_holds = false;
                c.offending = TupleWitness{t, ma, mb};
                return false;
            });
            c.lhs_union = union_by_inclusion_exclusion(a, k, n, caps);
            c.rhs_union = union_by_inclusion_exclusion(b, k, n, caps);
            c.relation = c.lhs_union == c.rhs_union ? Relation::equal
                       : c.lhs_union > c.rhs_union  ? Relation::lhs_greater
                                                    : Relation::lhs_less;
            c.violated = c.hypothesis_holds && !conclusion(c.lhs_union, c.rhs_union);
            ++rep.ranges_checked;
            if (c.hypothesis_holds) ++rep.ranges_with_hypothesis;
            if (c.violated) rep.pass = false;
            rep.ranges.push_back(std::move(c));
        }
    return rep;
}

} // namespace

Rational union_by_inclusion_exclusion(const MeasureTable& table, std::size_t k, std::size_t n,
                                      const ResourceCaps& caps)
{
    check_range(k, n, caps);
    const std::size_t len = n - k + 1;
    Rational total;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << len); ++mask) {
        const IndexTuple t = subset(k, mask);
        if (std::popcount(mask) % 2 == 1) total += table.at(t);
        else total -= table.at(t);
    }
    return total;
}

std::string to_string(Relation r)
{
    switch (r) {
    case Relation::equal: return "equal";
    case Relation::lhs_greater: return "lhs_greater";
    case Relation::lhs_less: return "lhs_less";
    }
    return "?";
}

ComparisonReport verify_thm13(const MeasureTable& a, const MeasureTable& b, std::size_t k_max, std::size_t n_max,
                              const ResourceCaps& caps)
{
    return compare_ranges(
        "thm13", a, b, k_max, n_max, caps, [](std::size_t, const Rational& x, const Rational& y) { return x == y; },
        [](const Rational& x, const Rational& y) { return x == y; });
}

ComparisonReport verify_thm14(const MeasureTable& a, const MeasureTable& b, std::size_t k_max, std::size_t n_max,
                              const ResourceCaps& caps)
{
    return compare_ranges(
        "thm14", a, b, k_max, n_max, caps,
        [](std::size_t len, const Rational& x, const Rational& y) { return len % 2 == 1 ? x >= y : x <= y; },
        [](const Rational& x, const Rational& y) { return x >= y; });
}

Json to_json(const UnionComparison& c)
{
    Json j{{"k", c.k}, {"n", c.n}, {"hypothesis_holds", c.hypothesis_holds}};
    if (c.offending) j["offending"] = to_json(*c.offending);
    j["lhs_union"] = c.lhs_union;
    j["rhs_union"] = c.rhs_union;
    j["relation"] = to_string(c.relation);
    j["violated"] = c.violated;
    return j;
}

Json to_json(const ComparisonReport& r)
{
    Json ranges = Json::array();
    for (const auto& c : r.ranges) ranges.push_back(to_json(c));
    return {{"mode", r.mode},
            {"pass", r.pass},
            {"ranges_checked", r.ranges_checked},
            {"ranges_with_hypothesis", r.ranges_with_hypothesis},
            {"ranges", std::move(ranges)}};
}

} // namespace limsup
