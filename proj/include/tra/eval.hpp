#pragma once

// Evaluation of table/relation expressions.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>

#include "tra/engine.hpp"
#include "tra/expr.hpp"
#include "tra/relation.hpp"
#include "tra/table.hpp"
#include "tra/universe.hpp"

namespace tra {

using ModulePtr = std::shared_ptr<const Module>;
using Value = std::variant<Table, Relation, ModulePtr>;

enum class Sort { Table, Relation, Program };

std::string to_string(Sort s);
Sort sort_of(const Value& v);

/// Lexically scoped bindings. `bind` returns an extended copy.
class Env {
public:
    Env bind(const std::string& name, Value value) const;
    const Value* find(const std::string& name) const;
    const std::map<std::string, Value>& values() const noexcept { return values_; }

private:
    std::map<std::string, Value> values_;
};

enum class MuStrategy { Auto, BottomUp, GoalDirected };

struct EvalConfig {
    std::optional<Universe> universe;
    SearchLimits limits;
    std::size_t fix_cap = 1000;
    MuStrategy mu_strategy = MuStrategy::Auto;

    const Universe* universe_ptr() const { return universe ? &*universe : nullptr; }
    MaterializeOptions materialize_options() const { return {limits, universe_ptr()}; }
};

/// Infers the sort of `e`; throws TypeMismatch on ill-sorted operands and
/// EvalError on unbound identifiers.
Sort check_sorts(const Expr& e, const Env& env);

/// Type checks, then evaluates structurally.
Value eval(const Expr& e, const Env& env, const EvalConfig& config = {});

Table eval_table(const Expr& e, const Env& env, const EvalConfig& config = {});
Relation eval_relation(const Expr& e, const Env& env, const EvalConfig& config = {});
ModulePtr eval_program(const Expr& e, const Env& env, const EvalConfig& config = {});

struct MuSolution {
    std::map<std::string, Relation> relations;
    /// The strategy that produced `relations` (never Auto).
    MuStrategy strategy = MuStrategy::BottomUp;
    /// Bottom-up iterations performed; 0 for goal-directed.
    std::size_t iterations = 0;
};

/// Least solution of the inclusions of `group`, solved jointly.
///
/// Bottom-up iterates every right-hand side from empty relations until two
/// successive iterates are equal, asserting that iterates only grow.
/// Goal-directed translates the group to clauses and returns intensional
/// relations over them. Auto tries bottom-up and falls back to
/// goal-directed when that needs a universe it lacks or exhausts a limit.
///
/// Throws NonMonotone when a group variable occurs in a program position,
/// ResourceExceeded when `config.fix_cap` iterations do not converge.
MuSolution solve_mu(std::span<const Inclusion> group, const Env& env, const EvalConfig& config = {});

Relation solve_mu(const std::string& name, const ExprPtr& rhs, const Env& env,
                  const EvalConfig& config = {});

/// Whether `rhs_value` is included in `lhs`, i.e. `lhs >= rhs_value` holds.
bool check_inclusion(const Relation& lhs, const Relation& rhs_value, const EvalConfig& config = {});

/// Tables and relations in their print formats; relations are materialized.
std::string format_value(const Value& v, const EvalConfig& config = {});
std::string value_json(const Value& v, const EvalConfig& config = {});

} // namespace tra
