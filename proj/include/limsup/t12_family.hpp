#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "limsup/caps.hpp"
#include "limsup/interval_set.hpp"
#include "limsup/json_io.hpp"
#include "limsup/nested_family.hpp"
#include "limsup/rational.hpp"

namespace limsup {

enum class Strategy { paper, compact };

/// How the (2,1) / (1,2) multiplier pair is assigned to column a.
enum class MultiplierRule {
    /// By the parity of the row m-a+1 that column a dominates. Works for all m.
    row,
    /// By the parity of a itself (c_1 = 2, alternating). Agrees with `row`
    /// only when m is odd.
    column,
};

/// Constants for the alternating construction. p_i = 1 throughout; q_i are
/// powers of ten (paper) or of two (compact). All of c, c_tilde and delta are
/// stored after normalization.
struct T12Constants {
    unsigned m = 0;
    unsigned b = 0;
    Strategy strategy = Strategy::paper;
    MultiplierRule rule = MultiplierRule::row;
    std::vector<BigInt> q;
    std::vector<Rational> c;
    std::vector<Rational> c_tilde;
    Rational delta;
    /// Exponents used by the paper strategy; empty for compact constants.
    std::vector<BigInt> gamma;
    std::vector<BigInt> alpha;  ///< alpha[n-1] for n >= 2; alpha[0] = 0
    /// Factor that all raw constants were divided by.
    Rational normalization = 1;

    Rational x(std::size_t j) const { return Rational(BigInt(1), q[j]); }
};

/// Paper strategy: b = m, q_i = 10^{(b+i-1)!}, multipliers per `rule`, delta
/// from the smallest dominant term, then normalization. Compact strategy:
/// bounded search over small powers of two (ignores `rule`, always row).
/// Throws std::invalid_argument for m == 0, or m > 4 under the paper strategy,
/// and std::runtime_error("no compact witness found") when the search fails.
T12Constants make_constants(unsigned m, Strategy strategy, MultiplierRule rule = MultiplierRule::row);

/// Caller-chosen constants, normalized as is (no search). Used for explicit
/// experiments such as forcing an early wraparound of the float.
T12Constants custom_constants(std::vector<BigInt> q, std::vector<Rational> c, std::vector<Rational> c_tilde,
                              Rational delta);

struct RowCheck {
    unsigned r = 0;
    bool odd = false;
    Rational lhs;             ///< sum_j c_j x_j^r
    Rational rhs;             ///< sum_j c~_j x_j^r (+ delta on odd rows)
    Rational margin;          ///< lhs - rhs (odd) or rhs - lhs (even)
    bool holds = false;       ///< margin >= 0
    bool strict = false;      ///< margin > 0
    std::size_t dominant = 0; ///< 1-based column m - r + 1
    Rational dominant_term;   ///< c_a x_a^r
    Rational others;          ///< sum_{i != a} c_i x_i^r + delta
    bool dominates = false;   ///< dominant_term > others
    /// others <= 10^{-alpha} m dominant_term, the bound claimed for the
    /// dominance step; reported, not required.
    bool paper_factor_ok = false;
    double log10_margin = 0;
};

struct InequalityReport {
    bool pass = false;  ///< every row strict and dominated
    std::vector<RowCheck> rows;
    std::size_t first_violated_row = 0;  ///< 0 when pass
};

InequalityReport verify_inequality_system(const T12Constants& constants);

enum class T12Backend { explicit_sets, formula };

struct FloatStep {
    unsigned n = 0;
    Rational start;
    Rational end;          ///< cursor after placement
    Rational cumulative;   ///< sum_{i <= n} delta/i
    unsigned wraps = 0;    ///< times the cursor has passed 1 so far
};

/// A_n and B_n for n = 1..n_max, each a disjoint union of scaled and shifted
/// nested G-levels; B_n additionally carries the float K_n. Sets are stored
/// after the final scaling by c_limsup.
struct T12Family {
    T12Constants constants;
    unsigned n_max = 0;
    T12Backend backend = T12Backend::formula;
    Rational c_limsup = 1;
    std::vector<Rational> d;        ///< offsets of the A components (unit frame)
    std::vector<Rational> d_tilde;  ///< offsets of the B components (unit frame)
    std::vector<IntervalSet> A;     ///< explicit backend only
    std::vector<IntervalSet> B;
    std::vector<IntervalSet> K;     ///< the float of each B_n
    /// Union of the scaled H_n copies of the B components, per n.
    std::vector<IntervalSet> H_copies;
    std::vector<FloatStep> float_steps;
    Rational cursor = 0;            ///< unit-frame cursor after K_{n_max}
};

/// Throws std::invalid_argument when c_limsup is outside (0,1] or the
/// components do not fit, and ResourceError when an explicit level would
/// exceed the caps.
T12Family build_t12_family(const T12Constants& constants, unsigned n_max, T12Backend backend,
                           const Rational& c_limsup = 1, const ResourceCaps& caps = ResourceCaps{});

/// Next float for level n (unit frame): greedy fill of [0,1) minus `blocked`
/// from `cursor`, wrapping at 1, up to total length `length`. Advances the
/// cursor and counts wraps. Throws std::logic_error when the free space is
/// smaller than `length`.
IntervalSet place_floating_interval(const IntervalSet& blocked, const Rational& length, Rational& cursor,
                                    unsigned& wraps);

struct T12Measure {
    Rational a;        ///< closed form, exact
    Rational b_lower;
    Rational b_upper;
    std::optional<Rational> a_explicit;
    std::optional<Rational> b_explicit;
};

/// Indices are 1-based and strictly increasing.
T12Measure t12_intersection_measure(const T12Family& family, std::span<const std::size_t> indices);

struct T12Report {
    bool pass = false;
    InequalityReport system;
    std::size_t tuples_checked = 0;
    /// First tuple whose alternating inequality or cross-check failed.
    std::optional<std::vector<std::size_t>> failing_tuple;
    std::string failure;
    bool explicit_checked = false;
    bool float_ok = true;  ///< mu(K_n) = delta/n and K_n misses the H_n copies
    struct Tail {
        unsigned N;
        Rational bound;                  ///< c_limsup * sum_j c_j / N
        std::optional<Rational> explicit_union;  ///< mu(U_{N<=i<=n_max} A_i)
    };
    std::vector<Tail> tail;
    std::vector<FloatStep> float_steps;
};

/// Checks every increasing tuple of 1..depth with length r <= m: r odd needs
/// A > B_upper, r even needs A < B_lower. On the explicit backend also checks
/// the materialized measures against the closed forms and the float.
T12Report verify_t12_claims(const T12Family& family, unsigned depth);

/// Smallest N with sum_{i<=N} delta/i > 1 (the first forced wraparound when
/// nothing is blocked). Throws std::invalid_argument for delta <= 0 and
/// std::runtime_error when N would exceed `limit`.
std::size_t harmonic_wrap_index(const Rational& delta, std::size_t limit = 10'000'000);

std::string to_string(Strategy s);
std::string to_string(MultiplierRule r);

Json to_json(const T12Constants& constants);
Json to_json(const InequalityReport& report);
Json to_json(const T12Family& family);
Json to_json(const T12Report& report);

} // namespace limsup
