#include "limsup/tuple_scan.hpp"

namespace limsup {

Json to_json(const TupleWitness& w)
{
    Json j;
    j["indices"] = indices_to_json(w.indices);
    j["lhs"] = w.lhs;
    j["rhs"] = w.rhs;
    return j;
}

Json to_json(const EqualityReport& r)
{
    Json j;
    j["pass"] = r.pass;
    j["tuples_checked"] = r.tuples_checked;
    j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
    return j;
}

} // namespace limsup
