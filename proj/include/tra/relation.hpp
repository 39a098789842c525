#pragma once

// First-class relations, application `:` and projection `/`.

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>

#include "tra/program.hpp"
#include "tra/table.hpp"
#include "tra/terms.hpp"
#include "tra/universe.hpp"

namespace tra {

struct Module;

/// An n-ary relation: a finite set of ground tuples, or a predicate of a
/// program module evaluated on demand.
class Relation {
public:
    /// Throws std::invalid_argument on non-ground tuples or wrong widths.
    static Relation extensional(std::size_t arity, std::set<Tuple> tuples = {});
    /// Throws EvalError when the module does not define `predicate` with
    /// that arity.
    static Relation intensional(std::shared_ptr<const Module> module, std::string predicate);

    std::size_t arity() const noexcept { return arity_; }
    bool is_extensional() const noexcept { return module_ == nullptr; }

    /// Throws std::logic_error for an intensional relation.
    const std::set<Tuple>& tuples() const;
    const Module& module() const;
    const std::shared_ptr<const Module>& module_ptr() const noexcept { return module_; }
    const std::string& predicate() const noexcept { return predicate_; }

private:
    Relation() = default;

    std::size_t arity_ = 0;
    std::shared_ptr<const std::set<Tuple>> tuples_;
    std::shared_ptr<const Module> module_;
    std::string predicate_;
};

/// A program together with values for its relation variables.
struct Module {
    std::shared_ptr<const Program> program;
    std::map<std::string, Relation> bindings;
    /// Display name only.
    std::string name;
};

std::shared_ptr<const Module> make_module(Program program, std::string name = {});

struct MaterializeOptions {
    SearchLimits limits;
    const Universe* universe = nullptr;
};

/// Table of solved matches of `args` against the tuples of `r`. Intensional
/// relations are queried through SLD resolution.
Table apply(const Relation& r, std::span<const Term> args, const SearchLimits& limits = {});

/// Ground instances of `args` instantiated by every row of `table`.
Relation project(std::span<const Term> args, const Table& table, const Universe* universe = nullptr,
                 std::size_t limit = 1000000);

/// Extensional copy; intensional relations go through the least model.
Relation materialize(const Relation& r, const MaterializeOptions& options = {});

Relation rel_union(const Relation& a, const Relation& b, const MaterializeOptions& options = {});
bool rel_subset(const Relation& a, const Relation& b, const MaterializeOptions& options = {});
bool rel_equal(const Relation& a, const Relation& b, const MaterializeOptions& options = {});

/// Variables of a term tuple that head the table it produces: first
/// occurrence order, engine-fresh names excluded.
std::vector<std::string> heading_of(std::span<const Term> args);

/// `{(a,b),(b,c)}` with tuples sorted by their printed form.
std::string format_relation(const Relation& r);
/// {"arity":n,"tuples":[[...],...]}
std::string relation_json(const Relation& r);

} // namespace tra
