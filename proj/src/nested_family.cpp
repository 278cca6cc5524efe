#include "limsup/nested_family.hpp"

#include <stdexcept>

namespace limsup {

namespace {

void check_pq(std::uint64_t p, std::uint64_t q)
{
    if (p == 0 || q == 0) throw std::invalid_argument("nested family needs p, q >= 1");
    if (p > q) throw std::invalid_argument("nested family needs p <= q");
}

Rational ratio(std::uint64_t num, std::uint64_t den) { return Rational(BigInt(num), BigInt(den)); }

BigInt big_pow(std::uint64_t base, unsigned e)
{
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

IntervalSet select_groups(const std::vector<Rational>& starts, const Rational& length, std::uint64_t p,
                          std::uint64_t q)
{
    IntervalSetBuilder b;
    for (std::size_t k = 0; k < starts.size(); ++k)
        if (k % q < p) b.append(starts[k], starts[k] + length);
    return std::move(b).finish();
}

IntervalSet from_starts(const std::vector<Rational>& starts, const Rational& length)
{
    IntervalSetBuilder b;
    b.reserve(starts.size());
    for (const auto& s : starts) b.append(s, s + length);
    return std::move(b).finish();
}

} // namespace

std::vector<NestedLevel> build_nested_explicit(const NestedParams& params, const ResourceCaps& caps)
{
    check_pq(params.p, params.q);
    if (params.depth == 0) throw std::invalid_argument("nested family needs depth >= 1");
    const auto q = params.q;
    if (big_pow(q, params.depth - 1) > BigInt(static_cast<unsigned long>(caps.max_intervals)))
        throw ResourceError("q^(depth-1) = " + big_pow(q, params.depth - 1).get_str() + " intervals exceeds cap " +
                            std::to_string(caps.max_intervals));

    std::vector<std::vector<Rational>> starts(params.depth);
    std::vector<Rational> lengths(params.depth);
    starts[0] = {Rational(0)};
    lengths[0] = 1;
    for (unsigned n = 1; n < params.depth; ++n) {
        // Children of an H_n interval: q pieces of length 1/((n+1) q^n) whose
        // left endpoints sit 1/(n q^n) apart from the parent's left end.
        const Rational spacing(BigInt(1), BigInt(n) * big_pow(q, n));
        lengths[n] = Rational(BigInt(1), BigInt(n + 1) * big_pow(q, n));
        auto& next = starts[n];
        next.reserve(starts[n - 1].size() * q);
        for (const auto& s : starts[n - 1])
            for (std::uint64_t t = 0; t < q; ++t) next.push_back(s + spacing * Rational(t));
    }

    std::vector<NestedLevel> levels;
    levels.reserve(params.depth);
    for (unsigned n = 1; n <= params.depth; ++n) {
        NestedLevel lvl;
        lvl.n = n;
        lvl.H = from_starts(starts[n - 1], lengths[n - 1]);
        if (n > 1) lvl.G = select_groups(starts[n - 1], lengths[n - 1], params.p, q);
        levels.push_back(std::move(lvl));
    }

    const Rational share = ratio(params.p, q);
    if (params.first_level == FirstLevel::literal || params.depth == 1) {
        levels[0].G = IntervalSet::span_of(0, share);
    } else {
        // Partition [0,1) into the deepest intervals plus every gap between
        // siblings, then keep the left p/q of each piece.
        std::vector<Interval> pieces;
        auto keep = [&](const Rational& lo, const Rational& hi) {
            if (lo < hi) pieces.push_back({lo, lo + share * (hi - lo)});
        };
        for (unsigned n = 1; n < params.depth; ++n) {
            const Rational spacing(BigInt(1), BigInt(n) * big_pow(q, n));
            const Rational& child = lengths[n];
            for (const auto& s : starts[n - 1])
                for (std::uint64_t t = 0; t < q; ++t) {
                    const Rational lo = s + spacing * Rational(t);
                    keep(lo + child, lo + spacing);
                }
        }
        for (const auto& s : starts[params.depth - 1]) keep(s, s + lengths[params.depth - 1]);
        levels[0].G = IntervalSet::canonicalize(std::move(pieces));
    }
    return levels;
}

Rational nested_intersection_measure_formula(std::uint64_t p, std::uint64_t q, std::span<const unsigned> indices)
{
    check_pq(p, q);
    if (indices.empty()) throw std::invalid_argument("empty index tuple");
    for (std::size_t k = 0; k < indices.size(); ++k) {
        if (indices[k] == 0) throw std::invalid_argument("indices are 1-based");
        if (k > 0 && indices[k] <= indices[k - 1]) throw std::invalid_argument("indices must be strictly increasing");
    }
    const auto r = static_cast<unsigned>(indices.size());
    return Rational(big_pow(p, r), big_pow(q, r) * BigInt(indices.back()));
}

FormulaNested::FormulaNested(std::uint64_t p, std::uint64_t q) : p_(p), q_(q) { check_pq(p, q); }

Rational FormulaNested::measure_H(unsigned n) const
{
    if (n == 0) throw std::invalid_argument("levels are 1-based");
    return Rational(BigInt(1), BigInt(n));
}

Rational FormulaNested::measure_G(unsigned n) const
{
    const unsigned idx[] = {n};
    return nested_intersection_measure_formula(p_, q_, idx);
}

Rational FormulaNested::intersection(std::span<const unsigned> indices) const
{
    return nested_intersection_measure_formula(p_, q_, indices);
}

ExplicitNested::ExplicitNested(std::vector<NestedLevel> levels) : levels_(std::move(levels)) {}

const NestedLevel& ExplicitNested::level(unsigned n) const
{
    if (n == 0 || n > levels_.size())
        throw std::out_of_range("level " + std::to_string(n) + " not materialized");
    return levels_[n - 1];
}

Rational ExplicitNested::measure_H(unsigned n) const { return level(n).H.measure(); }
Rational ExplicitNested::measure_G(unsigned n) const { return level(n).G.measure(); }

Rational ExplicitNested::intersection(std::span<const unsigned> indices) const
{
    if (indices.empty()) throw std::invalid_argument("empty index tuple");
    IntervalSet acc = level(indices[0]).G;
    for (std::size_t k = 1; k < indices.size(); ++k) acc = intersect(acc, level(indices[k]).G);
    return acc.measure();
}

NestedReport verify_nested_levels(std::uint64_t p, std::uint64_t q, std::span<const NestedLevel> levels)
{
    NestedReport r;
    r.measures_ok = true;
    r.containment_ok = true;
    for (const auto& lvl : levels) {
        if (lvl.H.measure() != Rational(BigInt(1), BigInt(lvl.n)) ||
            lvl.G.measure() != Rational(BigInt(p), BigInt(q) * BigInt(lvl.n)))
            r.measures_ok = false;
        if (!lvl.G.subset_of(lvl.H)) r.containment_ok = false;
    }
    for (std::size_t k = 1; k < levels.size(); ++k)
        if (!levels[k].H.subset_of(levels[k - 1].H) || levels[k].H == levels[k - 1].H) r.containment_ok = false;

    std::vector<IntervalSet> g;
    for (const auto& lvl : levels) g.push_back(lvl.G);
    for (std::size_t len = 1; len <= g.size() && r.tuples.pass; ++len) {
        scan_tuples<IntervalSet>(g, len, [&](std::span<const std::size_t> idx, const IntervalSet& inter) {
            std::vector<unsigned> one_based;
            for (auto i : idx) one_based.push_back(static_cast<unsigned>(i + 1));
            ++r.tuples.tuples_checked;
            Rational actual = inter.measure();
            Rational expected = nested_intersection_measure_formula(p, q, one_based);
            if (actual != expected) {
                r.tuples.pass = false;
                r.tuples.witness = TupleWitness{{one_based.begin(), one_based.end()}, actual, expected};
                return false;
            }
            return true;
        });
    }

    r.tail_ok = true;
    IntervalSet tail_union;
    for (std::size_t N = levels.size(); N >= 1; --N) {
        tail_union = unite(tail_union, levels[N - 1].G);
        NestedReport::Tail t{static_cast<unsigned>(N), tail_union.measure(), Rational(BigInt(1), BigInt(N))};
        if (t.union_measure > t.bound) r.tail_ok = false;
        r.tail.insert(r.tail.begin(), std::move(t));
    }

    r.pass = r.measures_ok && r.containment_ok && r.tuples.pass && r.tail_ok;
    return r;
}

NestedReport verify_nested(const NestedParams& params, const ResourceCaps& caps)
{
    const auto levels = build_nested_explicit(params, caps);
    return verify_nested_levels(params.p, params.q, levels);
}

Json to_json(const NestedReport& r)
{
    Json j;
    j["pass"] = r.pass;
    j["measures_ok"] = r.measures_ok;
    j["containment_ok"] = r.containment_ok;
    j["tuples"] = to_json(r.tuples);
    Json tail = Json::array();
    for (const auto& t : r.tail) tail.push_back({{"N", t.N}, {"union_measure", t.union_measure}, {"bound", t.bound}});
    j["tail"] = std::move(tail);
    j["tail_ok"] = r.tail_ok;
    return j;
}

Json nested_levels_to_json(const NestedParams& params, std::span<const NestedLevel> levels)
{
    Json j;
    j["p"] = params.p;
    j["q"] = params.q;
    j["depth"] = params.depth;
    j["first_level"] = params.first_level == FirstLevel::balanced ? "balanced" : "literal";
    Json arr = Json::array();
    for (const auto& lvl : levels) arr.push_back({{"n", lvl.n}, {"H", lvl.H}, {"G", lvl.G}});
    j["levels"] = std::move(arr);
    return j;
}

} // namespace limsup
