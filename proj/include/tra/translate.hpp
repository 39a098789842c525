#pragma once

// Two-way translation between definite clauses and inclusions.

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "tra/expr.hpp"
#include "tra/program.hpp"
#include "tra/relation.hpp"

namespace tra {

/// `p(t) :- b1, ..., bk.` becomes `p >= (t)/(B1 /\ ... /\ Bk)`. A body atom
/// whose predicate is in `relation_vars` becomes `r:(args)`; any other atom
/// becomes the one-goal table `(?- atom where program)`. An empty body gives
/// `(t)/top`.
Inclusion clause_to_tra(const Clause& clause, const std::set<std::string>& relation_vars,
                        const ExprPtr& program);

/// One inclusion per head predicate in order of first appearance, the
/// clauses of a predicate joined by `\/`.
std::vector<Inclusion> program_to_tra(const Program& program,
                                      const std::set<std::string>& relation_vars,
                                      const ExprPtr& program_ref);

struct ClauseTranslation {
    Program program;
    /// Values for the relation variables the translation introduced itself:
    /// those of inlined `where` modules and relation literals.
    std::map<std::string, Relation> bindings;
    /// Relation variables referenced but not defined by the group; the
    /// caller supplies their values.
    std::map<std::string, std::size_t> free_relations;
};

using ModuleResolver = std::function<std::shared_ptr<const Module>(const Expr&)>;

/// Clauses whose least model is the least solution of `group`. Each group
/// name becomes a predicate. Every `where` operand is inlined with its
/// predicates and relation variables renamed apart per module, so names
/// stay local to the table they came from.
///
/// Accepted right-hand sides: `\/` of `(t)/E`, `bot`, and relation
/// literals, where E is `/\` of `top`, `bot`, `r:(t)` over a name or a
/// literal, and `where` tables. Throws UnsupportedExpression otherwise.
ClauseTranslation tra_to_clauses(std::span<const Inclusion> group, const ModuleResolver& resolve);

} // namespace tra
