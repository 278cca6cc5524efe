#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "limsup/caps.hpp"
#include "limsup/parity_family.hpp"

namespace limsup {

/// Tiled copies of the first-block sets used to generate block `level`.
/// E_j^{level} places C_j, shrunk by 2^{(level-1)m}, into every dyadic cell of
/// that length; F_j does the same with D_j. Held in the unscaled (c = 1) frame.
struct Replicators {
    unsigned level = 0;
    std::vector<IntervalSet> E;
    std::vector<IntervalSet> F;
};

/// Sequences A_i, B_i built block by block: block 1 is the parity family and
/// every later set is a replicator intersected with one set of the previous
/// block. Indices are 1-based in every report; vectors are 0-based.
struct BlockFamily {
    unsigned m = 0;
    unsigned K = 0;
    Rational c = 1;
    /// Published sets, every point multiplied by c.
    std::vector<IntervalSet> A;
    std::vector<IntervalSet> B;
    /// The same sets before scaling by c.
    std::vector<IntervalSet> unit_A;
    std::vector<IntervalSet> unit_B;
    ParityFamily base;
    /// replicators[k] serves block k + 2.
    std::vector<Replicators> replicators;

    std::size_t size() const { return A.size(); }
    bool degenerate() const { return c.is_zero(); }
    /// Finest dyadic level 2^-(K m) used by the construction.
    unsigned finest_level() const { return K * m; }
};

struct BlockBounds {
    std::size_t first = 0;
    std::size_t last = 0;
};

/// 1-based index range of block k (k >= 1).
BlockBounds block_bounds(unsigned m, unsigned k);
/// Block containing 1-based index n.
unsigned block_of(unsigned m, std::size_t n);

struct IndexMap {
    std::size_t f = 0;  ///< index of the parent set in block k
    std::size_t g = 0;  ///< replicator index j in 1..m+1
    unsigned k = 0;     ///< n lies in block k + 1
};

/// Throws std::invalid_argument when n lies in block 1.
IndexMap index_maps(unsigned m, std::size_t n);

/// Throws std::invalid_argument for m == 0, K == 0 or c outside [0,1], and
/// ResourceError when the caps are exceeded.
BlockFamily build_block_family(unsigned m, unsigned K, const Rational& c,
                               const ResourceCaps& caps = ResourceCaps{});

enum class Engine { intervals, dyadic };

/// Exhaustive A/B intersection comparison over every increasing tuple of
/// 1..l_max indices. Equality is only guaranteed for l_max <= m; larger
/// l_max turns the scan into a counterexample search.
EqualityReport verify_block_equalities(const BlockFamily& family, std::size_t l_max,
                                       Engine engine = Engine::dyadic);

struct IndependenceReport {
    bool precondition_ok = false;
    std::string note;
    bool holds = false;
    Rational lhs_E, rhs_E;
    Rational lhs_F, rhs_F;
};

/// Checks mu(E_j ∩ A_{i1} ∩ ...) = mu(E_j) mu(A_{i1} ∩ ...) and the F/B
/// analogue at `level` (2..K), evaluated in the unscaled frame.
IndependenceReport verify_replicator_independence(const BlockFamily& family, unsigned level,
                                                  std::span<const std::size_t> prior, std::size_t j);

struct BlockUnion {
    unsigned k = 0;
    Rational union_A;
    Rational union_B;
    Rational expected_A;  ///< c (1 - 2^-m)^k
    Rational expected_B;  ///< c
};

std::vector<BlockUnion> tail_union_measures(const BlockFamily& family);

struct StructureReport {
    bool nested = true;              ///< U(block k+1 of A) ⊆ U(block k of A)
    bool recurrence = true;          ///< A_n == E_{g(n)} ∩ A_{f(n)}, B likewise
    std::size_t first_bad_index = 0; ///< 0 when recurrence holds
};

StructureReport verify_block_structure(const BlockFamily& family);

Json to_json(const BlockFamily& family);
Json to_json(const IndependenceReport& report);
Json to_json(std::span<const BlockUnion> unions);

} // namespace limsup
