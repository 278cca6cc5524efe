#include "limsup/block_family.hpp"

#include <algorithm>
#include <stdexcept>

#include "limsup/dyadic.hpp"

namespace limsup {

namespace {

/// S_k = sum_{r=1}^{k} (m+1)^r, with S_0 = 0.
std::size_t prefix_count(unsigned m, unsigned k)
{
    std::size_t total = 0, power = 1;
    for (unsigned r = 1; r <= k; ++r) {
        if (power > (static_cast<std::size_t>(-1) - total) / (m + 1)) throw ResourceError("block index overflow");
        power *= m + 1;
        total += power;
    }
    return total;
}

IntervalSet tile(const IntervalSet& pattern, unsigned shrink_bits)
{
    const Rational cell(BigInt(1), BigInt(1) << shrink_bits);
    const std::uint64_t copies = std::uint64_t{1} << shrink_bits;
    IntervalSetBuilder out;
    out.reserve(copies * pattern.size());
    for (std::uint64_t t = 0; t < copies; ++t) {
        const Rational base = cell * Rational(t);
        for (const auto& iv : pattern.intervals()) out.append(base + cell * iv.lo, base + cell * iv.hi);
    }
    return std::move(out).finish();
}

} // namespace

BlockBounds block_bounds(unsigned m, unsigned k)
{
    if (k == 0) throw std::invalid_argument("blocks are numbered from 1");
    return {prefix_count(m, k - 1) + 1, prefix_count(m, k)};
}

unsigned block_of(unsigned m, std::size_t n)
{
    if (n == 0) throw std::invalid_argument("set indices are 1-based");
    unsigned k = 1;
    while (prefix_count(m, k) < n) ++k;
    return k;
}

IndexMap index_maps(unsigned m, std::size_t n)
{
    const unsigned block = block_of(m, n);
    if (block == 1) throw std::invalid_argument("index " + std::to_string(n) + " is in block 1 and has no parent");
    const unsigned k = block - 1;
    const std::size_t offset = n - prefix_count(m, k) - 1;
    return {prefix_count(m, k - 1) + offset / (m + 1) + 1, offset % (m + 1) + 1, k};
}

BlockFamily build_block_family(unsigned m, unsigned K, const Rational& c, const ResourceCaps& caps)
{
    if (m == 0 || K == 0) throw std::invalid_argument("block family needs m >= 1 and K >= 1");
    if (c < 0 || c > 1) throw std::invalid_argument("scaling c must lie in [0,1]");
    if (static_cast<std::size_t>(K) * m > caps.max_dyadic_level)
        throw ResourceError("block family resolution 2^-" + std::to_string(K * m) + " exceeds cap 2^-" +
                            std::to_string(caps.max_dyadic_level));
    if (prefix_count(m, K) > caps.max_sets)
        throw ResourceError("block family would hold " + std::to_string(prefix_count(m, K)) + " sets, cap " +
                            std::to_string(caps.max_sets));

    BlockFamily fam;
    fam.m = m;
    fam.K = K;
    fam.c = c;
    fam.base = build_parity_family(m);
    fam.unit_A = fam.base.C;
    fam.unit_B = fam.base.D;

    for (unsigned k = 1; k < K; ++k) {
        Replicators rep;
        rep.level = k + 1;
        for (unsigned j = 0; j <= m; ++j) {
            rep.E.push_back(tile(fam.base.C[j], k * m));
            rep.F.push_back(tile(fam.base.D[j], k * m));
        }
        const auto prev = block_bounds(m, k);
        for (std::size_t i = prev.first; i <= prev.last; ++i) {
            for (unsigned j = 0; j <= m; ++j) {
                fam.unit_A.push_back(intersect(rep.E[j], fam.unit_A[i - 1]));
                fam.unit_B.push_back(intersect(rep.F[j], fam.unit_B[i - 1]));
            }
        }
        fam.replicators.push_back(std::move(rep));
    }

    fam.A.reserve(fam.unit_A.size());
    fam.B.reserve(fam.unit_B.size());
    for (std::size_t i = 0; i < fam.unit_A.size(); ++i) {
        fam.A.push_back(c == 1 ? fam.unit_A[i] : scale_translate(fam.unit_A[i], c, 0));
        fam.B.push_back(c == 1 ? fam.unit_B[i] : scale_translate(fam.unit_B[i], c, 0));
    }
    return fam;
}

EqualityReport verify_block_equalities(const BlockFamily& family, std::size_t l_max, Engine engine)
{
    if (engine == Engine::intervals) {
        return compare_intersections<IntervalSet>(family.A, family.B, 1, l_max,
                                                  [](const IntervalSet& s) { return s.measure(); });
    }
    // The dyadic route works on the unscaled sets and multiplies by c at the end.
    const unsigned level = family.finest_level();
    std::vector<DyadicSet> a, b;
    a.reserve(family.size());
    b.reserve(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) {
        a.push_back(DyadicSet::from_intervals(family.unit_A[i], level));
        b.push_back(DyadicSet::from_intervals(family.unit_B[i], level));
    }
    const Rational& c = family.c;
    return compare_intersections<DyadicSet>(a, b, 1, l_max, [&](const DyadicSet& s) { return s.measure(c); });
}

IndependenceReport verify_replicator_independence(const BlockFamily& family, unsigned level,
                                                  std::span<const std::size_t> prior, std::size_t j)
{
    IndependenceReport r;
    if (level < 2 || level > family.K) {
        r.note = "replicator level must lie in 2..K";
        return r;
    }
    if (j < 1 || j > family.m + 1) {
        r.note = "replicator index j must lie in 1..m+1";
        return r;
    }
    const std::size_t limit = block_bounds(family.m, level - 1).last;
    for (auto i : prior) {
        if (i < 1 || i > limit) {
            r.note = "index " + std::to_string(i) + " is not in blocks 1.." + std::to_string(level - 1);
            return r;
        }
    }
    r.precondition_ok = true;
    if (family.degenerate()) r.note = "c = 0: evaluated on the unscaled construction";
    else if (family.c != 1) r.note = "evaluated on the unscaled construction";

    const auto& rep = family.replicators[level - 2];
    IntervalSet a_part = IntervalSet::unit();
    IntervalSet b_part = IntervalSet::unit();
    for (auto i : prior) {
        a_part = intersect(a_part, family.unit_A[i - 1]);
        b_part = intersect(b_part, family.unit_B[i - 1]);
    }
    r.lhs_E = intersect(rep.E[j - 1], a_part).measure();
    r.rhs_E = rep.E[j - 1].measure() * a_part.measure();
    r.lhs_F = intersect(rep.F[j - 1], b_part).measure();
    r.rhs_F = rep.F[j - 1].measure() * b_part.measure();
    r.holds = r.lhs_E == r.rhs_E && r.lhs_F == r.rhs_F;
    return r;
}

std::vector<BlockUnion> tail_union_measures(const BlockFamily& family)
{
    std::vector<BlockUnion> out;
    const Rational shrink = 1 - Rational(BigInt(1), BigInt(1) << family.m);
    for (unsigned k = 1; k <= family.K; ++k) {
        const auto bounds = block_bounds(family.m, k);
        const std::span<const IntervalSet> a(family.A.data() + bounds.first - 1, bounds.last - bounds.first + 1);
        const std::span<const IntervalSet> b(family.B.data() + bounds.first - 1, bounds.last - bounds.first + 1);
        BlockUnion u;
        u.k = k;
        u.union_A = unite_all(a).measure();
        u.union_B = unite_all(b).measure();
        u.expected_A = family.c * shrink.pow(k);
        u.expected_B = family.c;
        out.push_back(std::move(u));
    }
    return out;
}

StructureReport verify_block_structure(const BlockFamily& family)
{
    StructureReport r;
    IntervalSet previous;
    for (unsigned k = 1; k <= family.K; ++k) {
        const auto bounds = block_bounds(family.m, k);
        const std::span<const IntervalSet> a(family.A.data() + bounds.first - 1, bounds.last - bounds.first + 1);
        IntervalSet current = unite_all(a);
        if (k > 1 && !current.subset_of(previous)) r.nested = false;
        previous = std::move(current);
    }
    for (std::size_t n = block_bounds(family.m, 2).first; n <= family.size(); ++n) {
        const auto map = index_maps(family.m, n);
        const auto& rep = family.replicators[map.k - 1];
        if (family.unit_A[n - 1] != intersect(rep.E[map.g - 1], family.unit_A[map.f - 1]) ||
            family.unit_B[n - 1] != intersect(rep.F[map.g - 1], family.unit_B[map.f - 1])) {
            r.recurrence = false;
            r.first_bad_index = n;
            break;
        }
    }
    return r;
}

Json to_json(const BlockFamily& f)
{
    Json j;
    j["m"] = f.m;
    j["K"] = f.K;
    j["c"] = f.c;
    j["A"] = sets_to_json(f.A);
    j["B"] = sets_to_json(f.B);
    return j;
}

Json to_json(const IndependenceReport& r)
{
    Json j;
    j["precondition_ok"] = r.precondition_ok;
    j["note"] = r.note;
    j["holds"] = r.holds;
    if (r.precondition_ok) {
        j["E"] = {{"lhs", r.lhs_E}, {"rhs", r.rhs_E}};
        j["F"] = {{"lhs", r.lhs_F}, {"rhs", r.rhs_F}};
    }
    return j;
}

Json to_json(std::span<const BlockUnion> unions)
{
    Json arr = Json::array();
    for (const auto& u : unions) {
        arr.push_back({{"k", u.k},
                       {"union_A", u.union_A},
                       {"union_B", u.union_B},
                       {"expected_A", u.expected_A},
                       {"expected_B", u.expected_B}});
    }
    return arr;
}

} // namespace limsup
