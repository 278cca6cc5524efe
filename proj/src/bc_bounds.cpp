#include "limsup/bc_bounds.hpp"

#include <ostream>
#include <stdexcept>

namespace limsup {

namespace {

Rational singles(const MeasureTable& t, std::size_t n)
{
    Rational s;
    for (std::size_t i = 1; i <= n; ++i) s += t.at({i});
    return s;
}

Rational pairs(const MeasureTable& t, std::size_t n)
{
    Rational s;
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j) s += t.at({i, j});
    return s;
}

Rational triples(const MeasureTable& t, std::size_t n)
{
    Rational s;
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j)
            for (std::size_t k = j + 1; k <= n; ++k) s += t.at({i, j, k});
    return s;
}

} // namespace

KochenStone kochen_stone_prefix(const MeasureTable& table, std::size_t n)
{
    if (n == 0) throw std::invalid_argument("prefix length must be positive");
    KochenStone ks;
    ks.n = n;
    ks.s1 = singles(table, n);
    ks.s2_full = ks.s1 + 2 * pairs(table, n);
    ks.degenerate = ks.s2_full.is_zero();
    ks.ratio = ks.degenerate ? Rational(0) : ks.s1 * ks.s1 / ks.s2_full;
    return ks;
}

FrolovQuantities frolov_quantities(const MeasureTable& table, std::size_t n)
{
    if (n < 3) throw std::invalid_argument("Frolov quantities need n >= 3");
    FrolovQuantities f;
    f.n = n;
    const Rational nn(static_cast<unsigned long>(n));
    f.s1 = singles(table, n);
    f.s2 = 2 * pairs(table, n);
    f.s3 = 6 * triples(table, n);
    f.delta1 = (nn - 1) * f.s1 - f.s2;
    f.delta2 = (nn - 2) * f.s2 - f.s3;
    const Rational sum = f.delta1 + f.delta2;
    f.delta1_over_n = f.delta1 / nn;
    f.degenerate = sum.is_zero();
    if (!f.degenerate) {
        f.bound = f.delta1 * f.delta1 / (nn * sum) + f.s1 / nn;
        f.s2_over_delta_sum = f.s2 / sum;
    }
    return f;
}

BoundsReport bounds_report(const MeasureTable& table, std::size_t upto, bool kochen_stone, bool frolov)
{
    if (upto == 0 || upto > table.n())
        throw std::invalid_argument("upto must lie in 1.." + std::to_string(table.n()));
    BoundsReport rep;
    rep.upto = upto;
    std::optional<Rational> best;
    for (std::size_t n = 1; n <= upto; ++n) {
        BoundsRow row;
        row.n = n;
        if (kochen_stone) {
            row.kochen_stone = kochen_stone_prefix(table, n);
            if (!best || row.kochen_stone->ratio > *best) best = row.kochen_stone->ratio;
            row.ks_running_max = best;
        }
        if (frolov && n >= 3) row.frolov = frolov_quantities(table, n);
        rep.rows.push_back(std::move(row));
    }
    rep.s1_total = singles(table, upto);
    rep.divergence_hint = rep.s1_total > 1;
    return rep;
}

Json to_json(const KochenStone& ks)
{
    return {{"n", ks.n}, {"S1", ks.s1}, {"S2full", ks.s2_full}, {"ks_ratio", ks.ratio}, {"degenerate", ks.degenerate}};
}

Json to_json(const FrolovQuantities& f)
{
    Json j{{"n", f.n},           {"s1", f.s1},         {"s2", f.s2}, {"s3", f.s3},
           {"delta1", f.delta1}, {"delta2", f.delta2}, {"degenerate", f.degenerate}};
    j["bound"] = f.bound ? Json(*f.bound) : Json(nullptr);
    j["validity"] = "asymptotic hypotheses not certified at finite n";
    j["delta1_over_n"] = f.delta1_over_n ? Json(*f.delta1_over_n) : Json(nullptr);
    j["s2_over_delta_sum"] = f.s2_over_delta_sum ? Json(*f.s2_over_delta_sum) : Json(nullptr);
    return j;
}

Json to_json(const BoundsReport& rep)
{
    Json rows = Json::array();
    for (const auto& r : rep.rows) {
        Json j{{"n", r.n}};
        if (r.kochen_stone) {
            j["kochen_stone"] = to_json(*r.kochen_stone);
            j["ks_running_max"] = *r.ks_running_max;
        }
        if (r.frolov) j["frolov"] = to_json(*r.frolov);
        rows.push_back(std::move(j));
    }
    return {{"upto", rep.upto}, {"s1_total", rep.s1_total}, {"divergence_hint", rep.divergence_hint},
            {"rows", std::move(rows)}};
}

void write_bounds_csv(std::ostream& out, const BoundsReport& rep)
{
    out << "n,ks_ratio,frolov_bound\n";
    for (const auto& r : rep.rows) {
        out << r.n << ',';
        if (r.kochen_stone) out << r.kochen_stone->ratio.str();
        out << ',';
        if (r.frolov && r.frolov->bound) out << r.frolov->bound->str();
        out << '\n';
    }
}

} // namespace limsup
