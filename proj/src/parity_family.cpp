#include "limsup/parity_family.hpp"

#include <bit>
#include <stdexcept>

namespace limsup {

ParityFamily build_parity_family(unsigned m)
{
    if (m == 0) throw std::invalid_argument("parity family needs m >= 1");
    if (m > kMaxParityM) throw std::invalid_argument("parity family m exceeds cap " + std::to_string(kMaxParityM));

    ParityFamily fam;
    fam.m = m;
    const std::uint32_t elements = m + 1;
    const std::uint32_t cells = std::uint32_t{1} << m;
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << elements); ++mask) {
        if (std::popcount(mask) % 2 == 1) fam.d_assignment.push_back(mask);
        else fam.c_assignment.push_back(mask);
    }
    // 2^m odd subsets and 2^m - 1 nonempty even subsets of an (m+1)-set.
    if (fam.d_assignment.size() != cells || fam.c_assignment.size() != cells - 1)
        throw std::logic_error("parity subset count mismatch");

    const Rational width(BigInt(1), BigInt(cells));
    auto assemble = [&](const std::vector<std::uint32_t>& assignment) {
        std::vector<IntervalSet> out;
        for (std::uint32_t i = 0; i < elements; ++i) {
            IntervalSetBuilder b;
            for (std::uint32_t t = 0; t < assignment.size(); ++t)
                if (assignment[t] >> i & 1U) b.append(width * Rational(t), width * Rational(t + 1));
            out.push_back(std::move(b).finish());
        }
        return out;
    };
    fam.D = assemble(fam.d_assignment);
    fam.C = assemble(fam.c_assignment);
    return fam;
}

ParityReport verify_parity_properties(const ParityFamily& family)
{
    ParityReport r;
    const auto measure = [](const IntervalSet& s) { return s.measure(); };
    r.equalities = compare_intersections<IntervalSet>(family.C, family.D, 1, family.m, measure);

    r.union_C = unite_all(family.C).measure();
    r.union_D = unite_all(family.D).measure();
    const Rational cell(BigInt(1), BigInt(1) << family.m);
    r.union_property = r.union_D == 1 && r.union_D == r.union_C + cell;

    IntervalSet all_c = IntervalSet::unit();
    IntervalSet all_d = IntervalSet::unit();
    for (std::size_t i = 0; i < family.C.size(); ++i) {
        all_c = intersect(all_c, family.C[i]);
        all_d = intersect(all_d, family.D[i]);
        r.full_intersection.indices.push_back(i + 1);
    }
    r.full_intersection.lhs = all_c.measure();
    r.full_intersection.rhs = all_d.measure();

    r.pass = r.equalities.pass && r.union_property;
    return r;
}

Json to_json(const ParityFamily& f)
{
    Json j;
    j["m"] = f.m;
    j["C"] = sets_to_json(f.C);
    j["D"] = sets_to_json(f.D);
    return j;
}

Json to_json(const ParityReport& r)
{
    Json j;
    j["pass"] = r.pass;
    j["equalities"] = to_json(r.equalities);
    j["union_C"] = r.union_C;
    j["union_D"] = r.union_D;
    j["union_property"] = r.union_property;
    Json full = to_json(r.full_intersection);
    full["equal"] = r.full_intersection.lhs == r.full_intersection.rhs;
    j["full_intersection"] = std::move(full);
    return j;
}

} // namespace limsup
