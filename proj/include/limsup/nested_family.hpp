#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "limsup/caps.hpp"
#include "limsup/interval_set.hpp"
#include "limsup/json_io.hpp"
#include "limsup/tuple_scan.hpp"

namespace limsup {

/// How G_1 is laid out inside H_1 = [0,1).
enum class FirstLevel {
    /// G_1 takes the left p/q share of every leaf of H_depth and of every gap
    /// left between consecutive levels, so it meets each H_n interval in
    /// exactly p/q of its length. Keeps the product rule exact for tuples
    /// that start at index 1.
    balanced,
    /// G_1 = [0, p/q). Coincides with G_2's parent intervals, so the product
    /// rule fails on tuples containing both 1 and 2 whenever p < q.
    literal,
};

struct NestedParams {
    std::uint64_t p = 1;
    std::uint64_t q = 1;
    unsigned depth = 1;
    FirstLevel first_level = FirstLevel::balanced;
};

/// One level: H_n is q^{n-1} equal intervals of total measure 1/n; G_n keeps
/// the first p of every q consecutive intervals of H_n (n >= 2).
struct NestedLevel {
    unsigned n = 0;
    IntervalSet H;
    IntervalSet G;
};

/// Throws std::invalid_argument for p > q, p == 0 or depth == 0 and
/// ResourceError when q^{depth-1} exceeds caps.max_intervals.
std::vector<NestedLevel> build_nested_explicit(const NestedParams& params,
                                               const ResourceCaps& caps = ResourceCaps{});

/// p^r / (q^r i_r) for strictly increasing 1-based indices i_1 < ... < i_r.
/// Throws std::invalid_argument for empty or non-increasing input.
Rational nested_intersection_measure_formula(std::uint64_t p, std::uint64_t q, std::span<const unsigned> indices);

/// Measures of a nested family, answered either from materialized sets or
/// from the closed forms.
class NestedMeasures {
public:
    virtual ~NestedMeasures() = default;
    virtual Rational measure_H(unsigned n) const = 0;
    virtual Rational measure_G(unsigned n) const = 0;
    virtual Rational intersection(std::span<const unsigned> indices) const = 0;
};

class FormulaNested final : public NestedMeasures {
public:
    FormulaNested(std::uint64_t p, std::uint64_t q);
    Rational measure_H(unsigned n) const override;
    Rational measure_G(unsigned n) const override;
    Rational intersection(std::span<const unsigned> indices) const override;

private:
    std::uint64_t p_, q_;
};

class ExplicitNested final : public NestedMeasures {
public:
    explicit ExplicitNested(std::vector<NestedLevel> levels);
    Rational measure_H(unsigned n) const override;
    Rational measure_G(unsigned n) const override;
    Rational intersection(std::span<const unsigned> indices) const override;
    const std::vector<NestedLevel>& levels() const { return levels_; }

private:
    const NestedLevel& level(unsigned n) const;
    std::vector<NestedLevel> levels_;
};

struct NestedReport {
    bool pass = false;
    bool measures_ok = false;    ///< mu(H_n) = 1/n and mu(G_n) = p/(qn)
    bool containment_ok = false; ///< H_{n+1} ⊂ H_n and G_n ⊆ H_n
    EqualityReport tuples;       ///< explicit (lhs) vs formula (rhs)
    /// (N, mu(U_{N<=i<=depth} G_i), 1/N) for every N <= depth.
    struct Tail {
        unsigned N;
        Rational union_measure;
        Rational bound;
    };
    std::vector<Tail> tail;
    bool tail_ok = false;
};

NestedReport verify_nested(const NestedParams& params, const ResourceCaps& caps = ResourceCaps{});
/// Same checks over caller-supplied levels (which may have been altered).
NestedReport verify_nested_levels(std::uint64_t p, std::uint64_t q, std::span<const NestedLevel> levels);

Json to_json(const NestedReport& report);
Json nested_levels_to_json(const NestedParams& params, std::span<const NestedLevel> levels);

} // namespace limsup
