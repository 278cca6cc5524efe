// Acceptance suite: one PASS/FAIL line per criterion on stdout, an optional
// JSON report (timings excluded so that reruns compare byte for byte).

#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "limsup/bc_bounds.hpp"
#include "limsup/block_family.hpp"
#include "limsup/incl_excl.hpp"
#include "limsup/json_io.hpp"
#include "limsup/measure_table.hpp"
#include "limsup/nested_family.hpp"
#include "limsup/parity_family.hpp"
#include "limsup/t12_family.hpp"

using namespace limsup;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    Json details = Json::object();
    std::vector<std::string> failures;
    /// Wall-clock limits, checked only for the printed line.
    std::vector<std::pair<std::string, double>> limits;
    std::vector<std::pair<std::string, double>> timings;

    void expect(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            failures.push_back(what);
        }
    }
};

template <class F>
double seconds(F&& f)
{
    const auto t0 = Clock::now();
    f();
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Rational pow2_inv(unsigned e) { return Rational(BigInt(1), BigInt(1) << e); }

BigInt binomial(std::size_t n, std::size_t k)
{
    BigInt b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

Rational direct_union(std::span<const IntervalSet> sets, std::size_t k, std::size_t n)
{
    return unite_all(sets.subspan(k - 1, n - k + 1)).measure();
}

IntervalSet random_set(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> pieces(0, 5);
    std::uniform_int_distribution<long> point(0, 48);
    std::vector<Interval> raw;
    for (int i = pieces(rng); i > 0; --i) {
        long a = point(rng), b = point(rng);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        raw.push_back({Rational(a, 48), Rational(b, 48)});
    }
    return IntervalSet::canonicalize(std::move(raw));
}

MeasureTable random_table(std::mt19937_64& rng, std::size_t n, std::size_t max_len)
{
    std::vector<IntervalSet> sets;
    for (std::size_t i = 0; i < n; ++i) sets.push_back(random_set(rng));
    return tabulate_intersections(sets, max_len);
}

/// Families and tables shared between criteria.
struct Shared {
    std::vector<BlockFamily> blocks;
    std::optional<T12Family> t12;
};

Outcome parity(Shared&)
{
    Outcome o;
    for (unsigned m : {2u, 3u, 4u}) {
        ParityReport rep;
        const double t = seconds([&] { rep = verify_parity_properties(build_parity_family(m)); });
        const std::string tag = "m=" + std::to_string(m);
        o.timings.emplace_back(tag, t);
        o.limits.emplace_back(tag, 1.0);
        o.expect(rep.pass, tag + " report");
        o.expect(rep.union_D == 1, tag + " union D");
        o.expect(rep.union_C == 1 - pow2_inv(m), tag + " union C");
        o.expect(rep.equalities.pass, tag + " equalities");
        // every nonempty proper subset of {1..m+1}
        const std::size_t tuples = (std::size_t{1} << (m + 1)) - 2;
        o.expect(rep.equalities.tuples_checked == tuples, tag + " tuple count");
        o.details[tag] = {{"union_C", rep.union_C}, {"union_D", rep.union_D}, {"tuples", rep.equalities.tuples_checked}};
    }
    o.expect(o.details["m=3"]["union_C"] == "7/8", "m=3 union C is 7/8");
    return o;
}

Outcome blocks(Shared& shared)
{
    Outcome o;
    const auto base2 = build_parity_family(2);
    // first block of the m=2 family is the parity family itself
    const std::vector<const IntervalSet*> c3{&base2.C[0], &base2.C[1], &base2.C[2]};
    const std::vector<const IntervalSet*> d3{&base2.D[0], &base2.D[1], &base2.D[2]};
    const Rational oracle_lhs = intersect_all(c3).measure();
    const Rational oracle_rhs = intersect_all(d3).measure();
    o.expect(oracle_lhs == 0 && oracle_rhs == Rational(1, 4), "parity triple oracle");

    double total = 0;
    for (auto [m, K] : {std::pair{2u, 3u}, std::pair{3u, 2u}}) {
        const std::string tag = "m=" + std::to_string(m) + ",K=" + std::to_string(K);
        EqualityReport eq, cx;
        total += seconds([&] {
            shared.blocks.push_back(build_block_family(m, K, 1));
            eq = verify_block_equalities(shared.blocks.back(), m);
            cx = verify_block_equalities(shared.blocks.back(), m + 1);
        });
        const auto& fam = shared.blocks.back();
        BigInt expected = 0;
        for (std::size_t l = 1; l <= m; ++l) expected += binomial(fam.size(), l);
        o.expect(eq.pass, tag + " equalities");
        o.expect(BigInt(eq.tuples_checked) == expected, tag + " tuple count");
        o.expect(!cx.pass && cx.witness.has_value(), tag + " counterexample found");
        Json d{{"sets", fam.size()}, {"tuples", eq.tuples_checked}};
        if (cx.witness) {
            const auto& w = *cx.witness;
            std::vector<const IntervalSet*> a, b;
            for (auto i : w.indices) {
                a.push_back(&fam.A[i - 1]);
                b.push_back(&fam.B[i - 1]);
            }
            o.expect(w.indices.size() == m + 1, tag + " witness length");
            o.expect(intersect_all(a).measure() == w.lhs && intersect_all(b).measure() == w.rhs,
                     tag + " witness recomputed");
            o.expect(w.lhs != w.rhs, tag + " witness differs");
            if (m == 2)
                o.expect(w.lhs == oracle_lhs && w.rhs == oracle_rhs, tag + " witness matches the parity oracle");
            d["witness"] = to_json(w);
        }
        o.details[tag] = std::move(d);
    }
    o.expect(o.details["m=3,K=2"]["tuples"] == 1350, "m=3,K=2 has 1350 tuples");
    o.timings.emplace_back("total", total);
    o.limits.emplace_back("total", 30.0);
    return o;
}

Outcome block_unions(Shared& shared)
{
    Outcome o;
    for (const auto& fam : shared.blocks) {
        const auto half = build_block_family(fam.m, fam.K, Rational(1, 2));
        const std::string tag = "m=" + std::to_string(fam.m) + ",K=" + std::to_string(fam.K);
        Json rows = Json::array();
        Rational expected_A = 1;
        for (unsigned k = 1; k <= fam.K; ++k) {
            expected_A *= 1 - pow2_inv(fam.m);
            const auto bb = block_bounds(fam.m, k);
            const Rational ua = direct_union(fam.A, bb.first, bb.last);
            const Rational ub = direct_union(fam.B, bb.first, bb.last);
            const Rational ha = direct_union(half.A, bb.first, bb.last);
            const Rational hb = direct_union(half.B, bb.first, bb.last);
            const std::string at = tag + " block " + std::to_string(k);
            o.expect(ua == expected_A, at + " A");
            o.expect(ub == 1, at + " B");
            o.expect(ha == ua / 2 && hb == ub / 2, at + " c=1/2");
            rows.push_back({{"k", k}, {"A", ua}, {"B", ub}, {"A_half", ha}, {"B_half", hb}});
        }
        o.details[tag] = std::move(rows);
    }
    return o;
}

Outcome nested(Shared&)
{
    Outcome o;
    for (auto [p, q] : {std::pair{3u, 5u}, std::pair{2u, 3u}, std::pair{1u, 4u}}) {
        const std::string tag = "(" + std::to_string(p) + "," + std::to_string(q) + ")";
        const NestedParams params{p, q, 5};
        const auto rep = verify_nested(params);
        o.expect(rep.pass, tag + " report");
        const ExplicitNested fam(build_nested_explicit(params));
        std::size_t checked = 0;
        for (unsigned mask = 1; mask < 32; ++mask) {
            std::vector<unsigned> idx;
            for (unsigned i = 0; i < 5; ++i)
                if (mask >> i & 1U) idx.push_back(i + 1);
            Rational expected(1);
            for (std::size_t r = 0; r < idx.size(); ++r) expected *= Rational(p, q);
            expected /= Rational(idx.back());
            o.expect(fam.intersection(idx) == expected, tag + " tuple");
            ++checked;
        }
        const auto& levels = fam.levels();
        for (unsigned n = 1; n <= 5; ++n) {
            o.expect(levels[n - 1].H.measure() == Rational(1, n), tag + " mu(H_n)");
            o.expect(difference(levels[n - 1].G, levels[n - 1].H).empty(), tag + " G in H");
            if (n < 5) o.expect(difference(levels[n].H, levels[n - 1].H).empty(), tag + " H nested");
        }
        o.details[tag] = {{"tuples", checked}};
    }
    return o;
}

Outcome inequalities(Shared&)
{
    Outcome o;
    auto direct_ok = [](const T12Constants& k) {
        // independent evaluation of every row
        for (unsigned r = 1; r <= k.m; ++r) {
            Rational lhs, rhs;
            for (std::size_t j = 0; j < k.m; ++j) {
                Rational xr(1);
                for (unsigned e = 0; e < r; ++e) xr *= k.x(j);
                lhs += k.c[j] * xr;
                rhs += k.c_tilde[j] * xr;
            }
            if (r % 2 == 1 ? !(lhs > rhs + k.delta) : !(lhs < rhs)) return false;
        }
        return true;
    };
    double total = 0;
    for (unsigned m : {2u, 3u, 4u}) {
        const std::string tag = "m=" + std::to_string(m);
        InequalityReport rep;
        T12Constants k;
        total += seconds([&] {
            k = make_constants(m, Strategy::paper);
            rep = verify_inequality_system(k);
        });
        o.expect(rep.pass, tag + " system");
        o.expect(direct_ok(k), tag + " direct rows");
        std::size_t digits = 0;
        for (const auto& q : k.q) digits = std::max(digits, mpz_sizeinbase(q.get_mpz_t(), 10));
        o.details[tag] = {{"pass", rep.pass}, {"largest_q_digits", digits}, {"largest_power_digits", (digits - 1) * m + 1}};
    }
    const auto odd = make_constants(3, Strategy::paper, MultiplierRule::column);
    const auto odd_rep = verify_inequality_system(odd);
    o.expect(odd_rep.pass && direct_ok(odd), "m=3 unmodified multipliers");
    o.details["m=3,column"] = {{"pass", odd_rep.pass}};
    o.expect(o.details["m=3"]["largest_power_digits"].get<std::size_t>() >= 361, "m=3 reaches 10^360");
    o.timings.emplace_back("total", total);
    o.limits.emplace_back("total", 10.0);
    return o;
}

Outcome t12_cross(Shared& shared)
{
    Outcome o;
    shared.t12 = build_t12_family(make_constants(1, Strategy::compact), 6, T12Backend::explicit_sets);
    const auto& f = *shared.t12;
    const auto rep = verify_t12_claims(f, 6);
    o.expect(rep.pass && rep.explicit_checked && rep.float_ok, "verifier");
    std::size_t tuples = 0;
    for (unsigned mask = 1; mask < 64; ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < 6; ++i)
            if (mask >> i & 1U) idx.push_back(i + 1);
        const auto mu = t12_intersection_measure(f, idx);
        std::vector<const IntervalSet*> a, b;
        for (auto i : idx) {
            a.push_back(&f.A[i - 1]);
            b.push_back(&f.B[i - 1]);
        }
        const Rational ma = intersect_all(a).measure();
        const Rational mb = intersect_all(b).measure();
        o.expect(ma == mu.a, "A closed form " + tuple_str(idx));
        o.expect(mu.b_lower <= mb && mb <= mu.b_upper, "B bounds " + tuple_str(idx));
        ++tuples;
    }
    for (unsigned n = 1; n <= 6; ++n) {
        const auto& K = f.K[n - 1];
        o.expect(K.measure() == f.c_limsup * f.constants.delta / Rational(n), "float measure n=" + std::to_string(n));
        o.expect(intersect(K, f.H_copies[n - 1]).empty(), "float disjoint n=" + std::to_string(n));
    }
    o.details = {{"tuples", tuples}, {"delta", f.constants.delta}, {"q", to_json(f.constants)["q"]}};
    return o;
}

Outcome kochen_stone(std::mt19937_64& rng)
{
    Outcome o;
    for (std::size_t n = 1; n <= 16; ++n) {
        const std::vector<IntervalSet> full(n, IntervalSet::unit());
        o.expect(kochen_stone_prefix(tabulate_intersections(full, 2), n).ratio == 1, "identical n=" + std::to_string(n));
    }
    std::size_t prefixes = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto t = random_table(rng, 2 + static_cast<std::size_t>(trial % 7), 2);
        for (std::size_t n = 1; n <= t.n(); ++n, ++prefixes)
            o.expect(kochen_stone_prefix(t, n).ratio <= 1, "random trial " + std::to_string(trial));
    }
    MeasureTable indep;
    for (std::size_t i = 1; i <= 4; ++i) {
        indep.insert({i}, Rational(1, 2));
        for (std::size_t j = i + 1; j <= 4; ++j) indep.insert({i, j}, Rational(1, 4));
    }
    // (4 * 1/2)^2 / (4 * 1/2 + 12 * 1/4)
    const Rational expected = Rational(4) / Rational(5);
    const auto ks = kochen_stone_prefix(indep, 4);
    o.expect(ks.ratio == expected, "independent n=4");
    o.details = {{"random_tables", 1000}, {"random_prefixes", prefixes}, {"independent_ratio", ks.ratio}};
    return o;
}

Outcome frolov(std::mt19937_64& rng)
{
    Outcome o;
    std::size_t checks = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto t = random_table(rng, 3 + static_cast<std::size_t>(trial % 4), 3);
        for (std::size_t n = 3; n <= t.n(); ++n, ++checks) {
            // ordered tuples of distinct indices
            Rational s1, s2, s3;
            auto mu = [&](std::vector<std::size_t> idx) {
                std::sort(idx.begin(), idx.end());
                return t.at(idx);
            };
            for (std::size_t i = 1; i <= n; ++i) {
                s1 += mu({i});
                for (std::size_t j = 1; j <= n; ++j) {
                    if (j == i) continue;
                    s2 += mu({i, j});
                    for (std::size_t k = 1; k <= n; ++k)
                        if (k != i && k != j) s3 += mu({i, j, k});
                }
            }
            const auto f = frolov_quantities(t, n);
            const Rational nn(static_cast<unsigned long>(n));
            const Rational d1 = (nn - 1) * s1 - s2, d2 = (nn - 2) * s2 - s3;
            bool ok = f.s1 == s1 && f.s2 == s2 && f.s3 == s3 && f.delta1 == d1 && f.delta2 == d2;
            if (d1 + d2 == 0) ok = ok && f.degenerate && !f.bound;
            else ok = ok && f.bound && *f.bound == d1 * d1 / (nn * (d1 + d2)) + s1 / nn;
            o.expect(ok, "random trial " + std::to_string(trial) + " n=" + std::to_string(n));
        }
    }
    const std::vector<IntervalSet> disjoint{IntervalSet::span_of(0, Rational(1, 4)),
                                            IntervalSet::span_of(Rational(1, 4), Rational(1, 2)),
                                            IntervalSet::span_of(Rational(1, 2), Rational(3, 4))};
    const auto d = frolov_quantities(tabulate_intersections(disjoint, 3), 3);
    o.expect(d.bound && *d.bound == Rational(3, 4), "disjoint triple");
    const std::vector<IntervalSet> ones(3, IntervalSet::unit());
    const auto all = frolov_quantities(tabulate_intersections(ones, 3), 3);
    o.expect(all.degenerate && !all.bound, "all ones degenerate");
    o.details = {{"random_tables", 100}, {"checks", checks}, {"disjoint_bound", d.bound ? Json(*d.bound) : Json()},
                 {"all_ones_degenerate", all.degenerate}};
    return o;
}

Outcome inclusion_exclusion(Shared& shared)
{
    Outcome o;
    constexpr std::size_t kSpan = 12;
    ResourceCaps caps;
    caps.max_ie_range = kSpan;
    for (const auto& fam : shared.blocks) {
        const std::string tag = "m=" + std::to_string(fam.m) + ",K=" + std::to_string(fam.K);
        const auto ta = tabulate_intersections(fam.A, kSpan, kSpan);
        const auto tb = tabulate_intersections(fam.B, kSpan, kSpan);
        std::size_t ranges = 0;
        for (std::size_t k = 1; k <= fam.size(); ++k)
            for (std::size_t n = k; n <= fam.size() && n - k + 1 <= kSpan; ++n, ++ranges) {
                const std::string at = tag + " [" + std::to_string(k) + "," + std::to_string(n) + "]";
                o.expect(union_by_inclusion_exclusion(ta, k, n, caps) == direct_union(fam.A, k, n), at + " A");
                o.expect(union_by_inclusion_exclusion(tb, k, n, caps) == direct_union(fam.B, k, n), at + " B");
            }
        const auto rep = verify_thm13(ta, tb, fam.size(), fam.size(), caps);
        o.expect(rep.pass, tag + " equal-table verifier");
        o.expect(rep.ranges_checked == ranges, tag + " verifier range count");
        o.details[tag] = {{"ranges", ranges},
                          {"verifier_pass", rep.pass},
                          {"ranges_with_hypothesis", rep.ranges_with_hypothesis}};
    }
    const auto& f = *shared.t12;
    const auto ta = tabulate_intersections(f.A, 6), tb = tabulate_intersections(f.B, 6);
    const auto rep = verify_thm14(ta, tb, 6, 6);
    o.expect(rep.pass, "t12 alternating verifier");
    o.details["t12"] = {{"ranges", rep.ranges_checked},
                        {"verifier_pass", rep.pass},
                        {"ranges_with_hypothesis", rep.ranges_with_hypothesis}};
    return o;
}

struct Criterion {
    int id;
    std::string name;
    std::function<Outcome(Shared&, std::mt19937_64&)> run;
};

const std::vector<Criterion>& criteria()
{
    static const std::vector<Criterion> list{
        {1, "parity family unions and equalities", [](Shared& s, auto&) { return parity(s); }},
        {2, "block family equalities and counterexample", [](Shared& s, auto&) { return blocks(s); }},
        {3, "block unions and scaling", [](Shared& s, auto&) { return block_unions(s); }},
        {4, "nested family product rule", [](Shared& s, auto&) { return nested(s); }},
        {5, "alternating inequality system", [](Shared& s, auto&) { return inequalities(s); }},
        {6, "t12 explicit sets against closed forms", [](Shared& s, auto&) { return t12_cross(s); }},
        {7, "Kochen-Stone ratio", [](Shared&, auto& rng) { return kochen_stone(rng); }},
        {8, "Frolov quantities", [](Shared&, auto& rng) { return frolov(rng); }},
        {9, "inclusion-exclusion and union verifiers", [](Shared& s, auto&) { return inclusion_exclusion(s); }},
    };
    return list;
}

struct SuiteResult {
    Json report;
    std::vector<Outcome> outcomes;
};

SuiteResult run_suite(std::uint64_t seed)
{
    SuiteResult res;
    Shared shared;
    std::mt19937_64 rng(seed);
    res.report = {{"seed", seed}, {"criteria", Json::array()}};
    for (const auto& c : criteria()) {
        Outcome o;
        try {
            o = c.run(shared, rng);
        } catch (const std::exception& e) {
            o.expect(false, std::string("exception: ") + e.what());
        }
        res.report["criteria"].push_back(
            {{"id", c.id}, {"name", c.name}, {"pass", o.pass}, {"failures", o.failures}, {"details", o.details}});
        res.outcomes.push_back(std::move(o));
    }
    return res;
}

void print_line(int id, const std::string& name, bool pass, const std::string& note)
{
    std::cout << (pass ? "PASS" : "FAIL") << "  " << std::setw(2) << id << "  " << name;
    if (!note.empty()) std::cout << "  (" << note << ")";
    std::cout << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"acceptance suite"};
    std::uint64_t seed = 20240611;
    std::string report_path;
    app.add_option("--seed", seed, "seed for the random tables");
    app.add_option("--report", report_path, "write the JSON report here");
    CLI11_PARSE(app, argc, argv);

    const auto first = run_suite(seed);
    bool all = true;
    for (std::size_t i = 0; i < criteria().size(); ++i) {
        const auto& o = first.outcomes[i];
        bool ok = o.pass;
        std::ostringstream note;
        note << std::fixed << std::setprecision(3);
        for (std::size_t t = 0; t < o.timings.size(); ++t) {
            const auto& [tag, secs] = o.timings[t];
            const double limit = o.limits[t].second;
            if (secs >= limit) ok = false;
            note << (t ? ", " : "") << tag << " " << secs << " s, limit " << limit << " s";
        }
        if (!o.failures.empty()) note << (o.timings.empty() ? "" : "; ") << "first failure: " << o.failures.front();
        print_line(criteria()[i].id, criteria()[i].name, ok, note.str());
        all = all && ok;
    }

    const auto second = run_suite(seed);
    const std::string a = first.report.dump(2), b = second.report.dump(2);
    const bool same = a == b;
    print_line(10, "identical reports from two runs", same, std::to_string(a.size()) + " bytes");
    all = all && same;

    if (!report_path.empty()) {
        Json full = first.report;
        full["criteria"].push_back({{"id", 10}, {"name", "identical reports from two runs"}, {"pass", same}});
        full["pass"] = all;
        std::ofstream(report_path) << full.dump(2) << '\n';
    }
    return all ? 0 : 1;
}
