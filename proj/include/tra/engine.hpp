#pragma once

// SLD resolution (`where`) and the bottom-up least model.

#include <map>
#include <string>

#include "tra/program.hpp"
#include "tra/relation.hpp"
#include "tra/table.hpp"
#include "tra/universe.hpp"

namespace tra {

enum class SelectionRule { Leftmost, Rightmost };

/// Table of the answer substitutions of every success leaf of the SLD tree
/// for `query` against `module`, restricted to the query variables.
///
/// The tree is searched by iterative deepening on derivation length, so a
/// table is only returned once a search finished without cutting any branch.
/// Goals on a bound relation variable resolve against that relation: tuples
/// of an extensional one, the clauses of an intensional one's own module.
/// Predicates that are neither defined nor bound have no clauses.
///
/// Throws Incomplete when branches remain at `limits.max_depth`,
/// ResourceExceeded past `limits.max_answers` distinct rows, EvalError when
/// a declared relation variable is unbound.
Table where(const Query& query, const Module& module, const SearchLimits& limits = {},
            SelectionRule rule = SelectionRule::Leftmost);

using Model = std::map<std::string, Relation>;

/// Naive bottom-up iteration of the immediate-consequence operator from the
/// empty interpretation. Every defined predicate gets an entry. Non-ground
/// derived heads are grounded over `universe`.
///
/// Throws ResourceExceeded once any predicate exceeds `limits.max_answers`
/// tuples, UniverseRequired for a non-ground head without a universe.
Model least_model(const Module& module, const SearchLimits& limits = {},
                  const Universe* universe = nullptr);

} // namespace tra
