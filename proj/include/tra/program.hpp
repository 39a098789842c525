#pragma once

// Definite-clause programs.

#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tra/terms.hpp"

namespace tra {

struct SearchLimits {
    std::size_t max_depth = 64;
    std::size_t max_answers = 10000;
};

/// Predicate symbol of an atom (a constant or compound term).
const std::string& predicate_of(const Term& atom);
/// Argument tuple of an atom; empty for a constant atom.
std::span<const Term> arguments_of(const Term& atom);
Term make_atom(const std::string& predicate, std::vector<Term> args);

struct Clause {
    Term head;
    std::vector<Term> body;
};

std::string to_string(const Clause& c);

/// Ordered clauses plus the relation variables the program leaves free.
/// Immutable; clauses are indexed by head predicate on construction.
class Program {
public:
    Program() = default;
    /// Throws EvalError when a head predicate is a declared relation
    /// variable, when an atom is not a constant or compound, or when one
    /// predicate name is used with two arities.
    Program(std::vector<Clause> clauses, std::map<std::string, std::size_t> relation_vars = {});

    const std::vector<Clause>& clauses() const noexcept { return clauses_; }
    const std::map<std::string, std::size_t>& relation_vars() const noexcept {
        return relation_vars_;
    }

    /// Indices of the clauses whose head predicate is `predicate`.
    std::span<const std::size_t> clauses_for(const std::string& predicate) const;

    /// Head predicates with their arities.
    const std::map<std::string, std::size_t>& defined() const noexcept { return defined_; }
    bool defines(const std::string& predicate) const { return defined_.count(predicate) != 0; }
    std::optional<std::size_t> arity_of(const std::string& predicate) const;

    /// Every predicate used in a body that is neither defined here nor a
    /// declared relation variable.
    std::set<std::string> undefined_body_predicates() const;

private:
    std::vector<Clause> clauses_;
    std::map<std::string, std::size_t> relation_vars_;
    std::map<std::string, std::size_t> defined_;
    std::map<std::string, std::size_t> arities_;
    std::map<std::string, std::vector<std::size_t>> index_;
};

std::string to_string(const Program& p);

using Query = std::vector<Term>;

} // namespace tra
