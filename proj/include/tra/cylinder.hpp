#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "tra/table.hpp"
#include "tra/universe.hpp"

namespace tra {

/// Tarski cylinder over the domain product D^width where D is the ground
/// term set of a universe. Membership depends only on the selector
/// coordinates (0-based, ascending).
struct Cylinder {
    std::vector<std::size_t> selector;
    std::size_t width = 0;
    std::set<Tuple> tuples;

    friend bool operator==(const Cylinder&, const Cylinder&) = default;
};

/// Materializes the cylinder denoted by `t` under a variable enumeration.
/// Throws std::invalid_argument when the heading is not covered by
/// `enumeration`.
Cylinder to_cylinder(const Table& t, const Universe& u, std::span<const std::string> enumeration);

/// Set intersection of the tuple sets; selectors are merged.
Cylinder cylinder_intersection(const Cylinder& a, const Cylinder& b);

/// Distinct tuples of the coordinates `positions` (0-based), in that order.
std::set<Tuple> cylinder_projection(const Cylinder& c, std::span<const std::size_t> positions);

} // namespace tra
