#pragma once

// Tables: sets of solved-form substitutions over a common heading.

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "tra/terms.hpp"

namespace tra {

/// Right-hand sides of one table row, aligned with the table heading.
/// Variables inside a row are always local to that row; they never denote
/// heading variables.
using Row = std::vector<Term>;

/// Renames every variable of `row` to `_R1, _R2, ...` in first-occurrence
/// order. Two rows are alpha-equivalent iff their canonical forms are equal.
Row canonical_row(std::span<const Term> row);

bool is_canonical_name(const std::string& name);

/// Row for `heading` read off `b`: each heading variable resolved through
/// the bindings, then canonicalized. Heading variables left unbound or
/// appearing on a right-hand side become row-local variables.
Row make_row(std::span<const std::string> heading, const Bindings& b);
Row make_row(std::span<const std::string> heading, const Substitution& s);

class Table {
public:
    /// The empty table with an empty heading.
    Table() = default;
    /// Throws std::invalid_argument on duplicate heading variables, reserved
    /// `_R<n>` heading names, or rows of the wrong width.
    Table(std::vector<std::string> heading, std::vector<Row> rows);

    /// Heading {} with the single empty row.
    static Table top();
    /// No rows. Equal to every other empty table whatever its heading.
    static Table bottom() { return Table(); }

    const std::vector<std::string>& heading() const noexcept { return heading_; }
    const std::set<Row>& rows() const noexcept { return rows_; }
    std::size_t size() const noexcept { return rows_.size(); }
    bool empty() const noexcept { return rows_.empty(); }
    bool is_top() const noexcept { return heading_.empty() && rows_.size() == 1; }

    std::optional<std::size_t> column(const std::string& var) const;

    /// The row as a substitution `heading[i] = row[i]`.
    Substitution substitution(const Row& row) const;

private:
    std::vector<std::string> heading_;
    std::set<Row> rows_;
};

/// phi(s u t) for every row pair whose union is solvable.
Table intersect(const Table& s, const Table& t);

/// Equal headings as sets (or both empty) and alpha-equal row sets.
bool table_equal(const Table& s, const Table& t);

/// Rows sorted lexicographically by their printed terms.
std::vector<std::vector<std::string>> printed_rows(const Table& t);

/// `| X | Y |` layout; `<empty>` for an empty table, `<unit>` for top.
std::string format_table(const Table& t);

/// {"heading":[...],"rows":[[...],...]}
std::string table_json(const Table& t);

} // namespace tra
