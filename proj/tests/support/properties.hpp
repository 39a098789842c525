#pragma once

// Randomized property checks shared by the unit tests and the acceptance
// runner. Each returns how many cases ran and what failed.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace tra::props {

struct Report {
    std::string name;
    std::size_t cases = 0;
    std::size_t violations = 0;
    /// Cases whose compared values were nonempty.
    std::size_t nonempty = 0;
    std::vector<std::string> failures; // first few only

    void fail(std::string what);
    bool ok() const { return cases > 0 && violations == 0; }
};

/// Commutativity, associativity, unit and null of intersection, plus the
/// table invariants of every result.
Report intersection_laws(std::uint64_t seed, std::size_t cases);

/// to_cylinder(S /\ T) = to_cylinder(S) & to_cylinder(T), and every
/// cylinder equals the enumeration oracle.
Report cylinder_homomorphism(std::uint64_t seed, std::size_t cases);

/// where(G1) /\ where(G2) = where(G1, G2) on hierarchical programs.
Report two_goals(std::uint64_t seed, std::size_t cases);

/// apply(project(t, T), t) = ground_table(T) when vars(t) = heading(T).
Report project_apply_inverse(std::uint64_t seed, std::size_t cases);
/// project(t, apply(r, t)) is included in r; ground t gives top or bottom.
Report apply_project_subset(std::uint64_t seed, std::size_t cases);
/// project(x, apply(r, x)) = r for distinct variables x.
Report apply_project_distinct(std::uint64_t seed, std::size_t cases);

/// Soundness and completeness of where against the model oracle, and
/// independence of the selection rule. Returns three reports.
std::vector<Report> where_laws(std::uint64_t seed, std::size_t cases);

/// clause_to_tra of random programs solved by solve_mu agrees with the
/// model oracle, for each strategy that terminates. Returns one report per
/// strategy.
std::vector<Report> mu_round_trip(std::uint64_t seed, std::size_t cases);

/// mu-defined transitive closure of a random 5-node graph.
Report transitive_closure(std::uint64_t seed, std::size_t cases);

} // namespace tra::props
