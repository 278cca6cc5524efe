#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "limsup/interval_set.hpp"
#include "limsup/json_io.hpp"
#include "limsup/rational.hpp"

namespace limsup {

using IndexTuple = std::vector<std::size_t>;

std::string tuple_str(std::span<const std::size_t> tuple);

/// Malformed or inconsistent table input. `line` is 0 when not applicable.
class TableError : public std::invalid_argument {
public:
    TableError(const std::string& what, std::size_t line = 0);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// A required tuple is absent from a table.
class MissingTupleError : public std::out_of_range {
public:
    explicit MissingTupleError(IndexTuple tuple);
    const IndexTuple& tuple() const { return tuple_; }

private:
    IndexTuple tuple_;
};

/// Intersection measures keyed by strictly increasing 1-based index tuples.
class MeasureTable {
public:
    std::size_t n() const { return n_; }
    std::size_t size() const { return entries_.size(); }
    const std::map<IndexTuple, Rational>& entries() const { return entries_; }

    /// Throws TableError for an empty, unsorted or repeated tuple, a measure
    /// outside [0,1] or a tuple that is already present.
    void insert(IndexTuple tuple, Rational measure);
    bool contains(std::span<const std::size_t> tuple) const;
    /// Throws MissingTupleError.
    const Rational& at(std::span<const std::size_t> tuple) const;
    const Rational& at(std::initializer_list<std::size_t> tuple) const;

    /// First stored tuple whose measure exceeds that of a stored sub-tuple
    /// missing one index; empty when the table is consistent.
    std::optional<IndexTuple> monotonicity_violation() const;

    friend bool operator==(const MeasureTable&, const MeasureTable&) = default;

private:
    std::size_t n_ = 0;
    std::map<IndexTuple, Rational> entries_;
};

enum class TableFormat { csv, json };

/// Rows `i1,i2,...,ik;p/q`. Blank lines and lines starting with '#' are
/// skipped. Errors carry the 1-based line number.
MeasureTable read_table_csv(std::istream& in);
/// {"n": N, "entries": [{"indices": [1,2], "measure": "1/4"}, ...]}
MeasureTable read_table_json(const Json& j);
/// Reads and validates (including monotonicity). The format is taken from
/// the extension unless given.
MeasureTable load_table(const std::string& path, std::optional<TableFormat> format = std::nullopt);

void write_table_csv(std::ostream& out, const MeasureTable& table);
Json to_json(const MeasureTable& table);

/// Table of mu(S_{i1} ∩ ... ∩ S_{ik}) for every increasing tuple with at most
/// `max_len` indices and i_k - i_1 < `max_span` (0 = unlimited).
MeasureTable tabulate_intersections(std::span<const IntervalSet> sets, std::size_t max_len, std::size_t max_span = 0);

} // namespace limsup
