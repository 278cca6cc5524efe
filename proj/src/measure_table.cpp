#include "limsup/measure_table.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace limsup {

std::string tuple_str(std::span<const std::size_t> tuple)
{
    std::string s = "(";
    for (std::size_t t = 0; t < tuple.size(); ++t) {
        if (t) s += ",";
        s += std::to_string(tuple[t]);
    }
    return s + ")";
}

namespace {

std::string with_line(const std::string& what, std::size_t line)
{
    return line ? "line " + std::to_string(line) + ": " + what : what;
}

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

IndexTuple parse_indices(const std::string& field, std::size_t line)
{
    IndexTuple out;
    std::stringstream ss(field);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            throw TableError("bad index '" + tok + "'", line);
        out.push_back(std::stoull(tok));
    }
    if (out.empty()) throw TableError("missing indices", line);
    return out;
}

} // namespace

TableError::TableError(const std::string& what, std::size_t line)
    : std::invalid_argument(with_line(what, line)), line_(line)
{
}

MissingTupleError::MissingTupleError(IndexTuple tuple)
    : std::out_of_range("measure table has no entry for " + tuple_str(tuple)), tuple_(std::move(tuple))
{
}

void MeasureTable::insert(IndexTuple tuple, Rational measure)
{
    if (tuple.empty()) throw TableError("empty index tuple");
    for (std::size_t t = 0; t < tuple.size(); ++t) {
        if (tuple[t] == 0) throw TableError("indices are 1-based: " + tuple_str(tuple));
        if (t > 0 && tuple[t] <= tuple[t - 1])
            throw TableError("indices must be strictly increasing: " + tuple_str(tuple));
    }
    if (measure.sign() < 0 || measure > 1)
        throw TableError("measure " + measure.str() + " of " + tuple_str(tuple) + " outside [0,1]");
    n_ = std::max(n_, tuple.back());
    auto [it, fresh] = entries_.emplace(std::move(tuple), std::move(measure));
    if (!fresh) throw TableError("duplicate tuple " + tuple_str(it->first));
}

bool MeasureTable::contains(std::span<const std::size_t> tuple) const
{
    return entries_.contains(IndexTuple(tuple.begin(), tuple.end()));
}

const Rational& MeasureTable::at(std::span<const std::size_t> tuple) const
{
    IndexTuple key(tuple.begin(), tuple.end());
    const auto it = entries_.find(key);
    if (it == entries_.end()) throw MissingTupleError(std::move(key));
    return it->second;
}

const Rational& MeasureTable::at(std::initializer_list<std::size_t> tuple) const
{
    return at(std::span<const std::size_t>(tuple.begin(), tuple.size()));
}

std::optional<IndexTuple> MeasureTable::monotonicity_violation() const
{
    for (const auto& [tuple, mu] : entries_) {
        if (tuple.size() < 2) continue;
        for (std::size_t drop = 0; drop < tuple.size(); ++drop) {
            IndexTuple sub;
            for (std::size_t t = 0; t < tuple.size(); ++t)
                if (t != drop) sub.push_back(tuple[t]);
            const auto it = entries_.find(sub);
            if (it != entries_.end() && mu > it->second) return tuple;
        }
    }
    return std::nullopt;
}

MeasureTable read_table_csv(std::istream& in)
{
    MeasureTable table;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string row = trim(raw);
        if (row.empty() || row.front() == '#') continue;
        const auto semi = row.find(';');
        if (semi == std::string::npos) throw TableError("expected 'indices;measure'", line);
        IndexTuple tuple = parse_indices(row.substr(0, semi), line);
        Rational mu;
        try {
            mu = Rational::parse(row.substr(semi + 1));
        } catch (const std::invalid_argument& e) {
            throw TableError(e.what(), line);
        }
        try {
            table.insert(std::move(tuple), std::move(mu));
        } catch (const TableError& e) {
            throw TableError(e.what(), line);
        }
    }
    return table;
}

MeasureTable read_table_json(const Json& j)
{
    MeasureTable table;
    const auto& entries = j.at("entries");
    for (std::size_t e = 0; e < entries.size(); ++e) {
        try {
            table.insert(entries[e].at("indices").get<IndexTuple>(), entries[e].at("measure").get<Rational>());
        } catch (const std::exception& ex) {
            throw TableError("entry " + std::to_string(e) + ": " + ex.what());
        }
    }
    if (j.contains("n") && j["n"].get<std::size_t>() < table.n())
        throw TableError("declared n is smaller than the largest index");
    return table;
}

MeasureTable load_table(const std::string& path, std::optional<TableFormat> format)
{
    std::ifstream in(path);
    if (!in) throw TableError("cannot open " + path);
    if (!format) format = path.ends_with(".json") ? TableFormat::json : TableFormat::csv;
    MeasureTable table;
    if (*format == TableFormat::json) {
        Json j;
        try {
            j = Json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw TableError(path + ": " + e.what());
        }
        table = read_table_json(j);
    } else {
        table = read_table_csv(in);
    }
    if (auto bad = table.monotonicity_violation())
        throw TableError(path + ": " + tuple_str(*bad) + " has a larger measure than one of its sub-tuples");
    return table;
}

void write_table_csv(std::ostream& out, const MeasureTable& table)
{
    for (const auto& [tuple, mu] : table.entries()) {
        for (std::size_t t = 0; t < tuple.size(); ++t) out << (t ? "," : "") << tuple[t];
        out << ';' << mu.str() << '\n';
    }
}

Json to_json(const MeasureTable& table)
{
    Json entries = Json::array();
    for (const auto& [tuple, mu] : table.entries()) entries.push_back({{"indices", tuple}, {"measure", mu}});
    return {{"n", table.n()}, {"entries", std::move(entries)}};
}

MeasureTable tabulate_intersections(std::span<const IntervalSet> sets, std::size_t max_len, std::size_t max_span)
{
    MeasureTable table;
    const std::size_t n = sets.size();
    IndexTuple idx;
    std::vector<IntervalSet> prefix;
    // depth-first over extensions of idx, reusing the prefix intersection
    auto extend = [&](auto&& self, std::size_t from) -> void {
        for (std::size_t i = from; i < n; ++i) {
            if (max_span && !idx.empty() && i + 1 - idx.front() >= max_span) break;
            idx.push_back(i + 1);
            prefix.push_back(prefix.empty() ? sets[i] : intersect(prefix.back(), sets[i]));
            table.insert(idx, prefix.back().measure());
            if (idx.size() < max_len) self(self, i + 1);
            idx.pop_back();
            prefix.pop_back();
        }
    };
    if (max_len > 0) extend(extend, 0);
    return table;
}

} // namespace limsup
