#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "limsup/json_io.hpp"
#include "limsup/measure_table.hpp"

namespace limsup {

/// Kochen-Stone ratio (sum mu(A_s))^2 / sum_{s,t} mu(A_s ∩ A_t) over the
/// first n sets. The double sum includes the diagonal s = t.
struct KochenStone {
    std::size_t n = 0;
    Rational s1;
    Rational s2_full;
    Rational ratio;            ///< 0 when degenerate
    bool degenerate = false;   ///< every measure is zero
};

/// Needs every singleton and pair of 1..n; throws MissingTupleError.
KochenStone kochen_stone_prefix(const MeasureTable& table, std::size_t n);

struct FrolovQuantities {
    std::size_t n = 0;
    Rational s1;      ///< sum_i mu(A_i)
    Rational s2;      ///< 2 sum_{i<j} mu(A_i ∩ A_j)
    Rational s3;      ///< 6 sum_{i<j<k} mu(A_i ∩ A_j ∩ A_k)
    Rational delta1;  ///< (n-1) s1 - s2
    Rational delta2;  ///< (n-2) s2 - s3
    /// delta1^2 / (n (delta1 + delta2)) + s1/n; absent when degenerate.
    std::optional<Rational> bound;
    bool degenerate = false;  ///< delta1 + delta2 == 0
    /// The bound is asymptotic: it needs delta1/n -> oo and s2 = o(delta1 + delta2).
    /// These are the finite-n values of those two ratios, for inspection only.
    std::optional<Rational> delta1_over_n;
    std::optional<Rational> s2_over_delta_sum;
};

/// Needs n >= 3 and every singleton, pair and triple of 1..n.
FrolovQuantities frolov_quantities(const MeasureTable& table, std::size_t n);

struct BoundsRow {
    std::size_t n = 0;
    std::optional<KochenStone> kochen_stone;
    std::optional<Rational> ks_running_max;
    std::optional<FrolovQuantities> frolov;
};

struct BoundsReport {
    std::size_t upto = 0;
    std::vector<BoundsRow> rows;
    Rational s1_total;
    /// sum mu(A_i) > 1 over the prefix: a finite hint that the divergence
    /// side of the theory applies, not a proof of divergence.
    bool divergence_hint = false;
};

/// One row per prefix n = 1..upto (Frolov from n = 3).
BoundsReport bounds_report(const MeasureTable& table, std::size_t upto, bool kochen_stone, bool frolov);

Json to_json(const KochenStone& ks);
Json to_json(const FrolovQuantities& fq);
Json to_json(const BoundsReport& report);
/// Plot-ready rows `n,ks_ratio,frolov_bound` (empty cells when absent).
void write_bounds_csv(std::ostream& out, const BoundsReport& report);

} // namespace limsup
