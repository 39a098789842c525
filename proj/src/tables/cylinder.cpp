#include "tra/cylinder.hpp"

#include <algorithm>
#include <stdexcept>

namespace tra {

Cylinder to_cylinder(const Table& t, const Universe& u, std::span<const std::string> enumeration) {
    Cylinder c;
    c.width = enumeration.size();
    // column of the table for each selector position
    std::vector<std::size_t> columns;
    for (std::size_t pos = 0; pos < enumeration.size(); ++pos) {
        if (auto col = t.column(enumeration[pos])) {
            c.selector.push_back(pos);
            columns.push_back(*col);
        }
    }
    if (c.selector.size() != t.heading().size()) {
        throw std::invalid_argument("to_cylinder: enumeration does not cover the table heading");
    }
    const auto domain = u.ground_terms();
    const std::set<Term> in_domain(domain.begin(), domain.end());

    std::set<Tuple> base;
    for (const auto& row : t.rows()) {
        for (const auto& inst : ground_instances(row, &u)) {
            if (!std::all_of(inst.begin(), inst.end(),
                             [&](const Term& x) { return in_domain.count(x) != 0; })) {
                continue;
            }
            Tuple ordered;
            ordered.reserve(columns.size());
            for (auto col : columns) {
                ordered.push_back(inst[col]);
            }
            base.insert(std::move(ordered));
        }
    }
    if (base.empty()) {
        return c;
    }

    std::vector<std::size_t> free;
    for (std::size_t pos = 0; pos < c.width; ++pos) {
        if (!std::binary_search(c.selector.begin(), c.selector.end(), pos)) {
            free.push_back(pos);
        }
    }
    if (!free.empty() && domain.empty()) {
        return c;
    }
    for (const auto& b : base) {
        std::vector<std::size_t> idx(free.size(), 0);
        while (true) {
            Tuple full(c.width, Term::nil());
            for (std::size_t i = 0; i < c.selector.size(); ++i) {
                full[c.selector[i]] = b[i];
            }
            for (std::size_t i = 0; i < free.size(); ++i) {
                full[free[i]] = domain[idx[i]];
            }
            c.tuples.insert(std::move(full));
            std::size_t k = 0;
            while (k < idx.size() && ++idx[k] == domain.size()) {
                idx[k++] = 0;
            }
            if (k == idx.size()) {
                break;
            }
        }
    }
    return c;
}

Cylinder cylinder_intersection(const Cylinder& a, const Cylinder& b) {
    if (a.width != b.width) {
        throw std::invalid_argument("cylinder_intersection: width mismatch");
    }
    Cylinder c;
    c.width = a.width;
    std::set_union(a.selector.begin(), a.selector.end(), b.selector.begin(), b.selector.end(),
                   std::back_inserter(c.selector));
    std::set_intersection(a.tuples.begin(), a.tuples.end(), b.tuples.begin(), b.tuples.end(),
                          std::inserter(c.tuples, c.tuples.end()));
    return c;
}

std::set<Tuple> cylinder_projection(const Cylinder& c, std::span<const std::size_t> positions) {
    std::set<Tuple> out;
    for (const auto& t : c.tuples) {
        Tuple p;
        p.reserve(positions.size());
        for (auto i : positions) {
            p.push_back(t.at(i));
        }
        out.insert(std::move(p));
    }
    return out;
}

} // namespace tra
