#pragma once

// JSON encoding shared by every module: a Rational is the string "p/q" and an
// IntervalSet is {"intervals": [["lo","hi"], ...]} in canonical order.

#include <string>
#include <vector>

#include <json.hpp>

#include "limsup/interval_set.hpp"
#include "limsup/rational.hpp"

namespace limsup {

using Json = nlohmann::ordered_json;

template <class BasicJson>
void to_json(BasicJson& j, const Rational& r) { j = r.str(); }

template <class BasicJson>
void from_json(const BasicJson& j, Rational& r)
{
    if (j.is_string()) r = Rational::parse(j.template get<std::string>());
    else if (j.is_number_integer()) r = Rational(j.template get<long long>());
    else throw std::invalid_argument("expected a rational string \"p/q\"");
}

template <class BasicJson>
void to_json(BasicJson& j, const IntervalSet& s)
{
    BasicJson pairs = BasicJson::array();
    for (const auto& iv : s.intervals()) pairs.push_back(BasicJson::array({iv.lo.str(), iv.hi.str()}));
    j = BasicJson::object();
    j["intervals"] = std::move(pairs);
}

template <class BasicJson>
void from_json(const BasicJson& j, IntervalSet& s)
{
    std::vector<Interval> raw;
    for (const auto& pair : j.at("intervals")) {
        if (!pair.is_array() || pair.size() != 2) throw std::invalid_argument("interval must be a [lo, hi] pair");
        raw.push_back({pair[0].template get<Rational>(), pair[1].template get<Rational>()});
    }
    s = IntervalSet::canonicalize(std::move(raw));
}

inline Json sets_to_json(std::span<const IntervalSet> sets)
{
    Json arr = Json::array();
    for (const auto& s : sets) arr.push_back(s);
    return arr;
}

inline std::vector<IntervalSet> sets_from_json(const Json& arr)
{
    std::vector<IntervalSet> out;
    out.reserve(arr.size());
    for (const auto& s : arr) out.push_back(s.get<IntervalSet>());
    return out;
}

inline Json indices_to_json(std::span<const std::size_t> idx)
{
    Json arr = Json::array();
    for (auto i : idx) arr.push_back(i);
    return arr;
}

} // namespace limsup
