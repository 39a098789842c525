#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tra/terms.hpp"

namespace tra {

/// Finite slice of a Herbrand universe: declared constants closed under the
/// declared functors up to `depth_bound` nesting levels.
struct Universe {
    std::set<Term> constants;
    std::set<std::pair<std::string, std::size_t>> functors;
    std::size_t depth_bound = 2;

    static Universe of_constants(std::initializer_list<const char*> names);

    /// Every ground term of depth <= depth_bound, in term order.
    /// Throws ResourceExceeded past `limit` terms.
    std::vector<Term> ground_terms(std::size_t limit = 100000) const;

    friend bool operator==(const Universe&, const Universe&) = default;
};

std::string to_string(const Universe& u);

/// Ground instances of `tuple` obtained by substituting ground terms of `u`
/// for its variables. A ground tuple needs no universe and yields itself.
/// Throws UniverseRequired when `tuple` is non-ground and `u` is null, and
/// ResourceExceeded when the instance set would exceed `limit`.
std::set<Tuple> ground_instances(std::span<const Term> tuple, const Universe* u,
                                 std::size_t limit = 1000000);

} // namespace tra
