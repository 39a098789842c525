#include "tra/universe.hpp"

#include <sstream>

#include "tra/error.hpp"

namespace tra {

Universe Universe::of_constants(std::initializer_list<const char*> names) {
    Universe u;
    for (const char* n : names) {
        u.constants.insert(Term::constant(n));
    }
    return u;
}

std::vector<Term> Universe::ground_terms(std::size_t limit) const {
    std::set<Term> level(constants.begin(), constants.end());
    for (std::size_t d = 1; d <= depth_bound && !functors.empty(); ++d) {
        std::vector<Term> prev(level.begin(), level.end());
        std::set<Term> next = level;
        for (const auto& [f, n] : functors) {
            // odometer over prev^n
            std::vector<std::size_t> idx(n, 0);
            if (prev.empty()) {
                break;
            }
            while (true) {
                std::vector<Term> args;
                args.reserve(n);
                for (auto i : idx) {
                    args.push_back(prev[i]);
                }
                next.insert(Term::compound(f, std::move(args)));
                if (next.size() > limit) {
                    throw ResourceExceeded("universe", "more than " + std::to_string(limit) +
                                                           " ground terms");
                }
                std::size_t k = 0;
                while (k < n && ++idx[k] == prev.size()) {
                    idx[k++] = 0;
                }
                if (k == n) {
                    break;
                }
            }
        }
        if (next.size() == level.size()) {
            break;
        }
        level = std::move(next);
    }
    return {level.begin(), level.end()};
}

std::string to_string(const Universe& u) {
    std::ostringstream os;
    os << "constants {";
    bool first = true;
    for (const auto& c : u.constants) {
        os << (first ? "" : ", ") << c;
        first = false;
    }
    os << "}, functors {";
    first = true;
    for (const auto& [f, n] : u.functors) {
        os << (first ? "" : ", ") << f << '/' << n;
        first = false;
    }
    os << "}, depth " << u.depth_bound;
    return os.str();
}

std::set<Tuple> ground_instances(std::span<const Term> tuple, const Universe* u, std::size_t limit) {
    Tuple base(tuple.begin(), tuple.end());
    if (is_ground(base)) {
        return {base};
    }
    if (u == nullptr) {
        throw UniverseRequired("ground_instances", "non-ground tuple " + to_string(tuple));
    }
    const auto vars = variables(tuple);
    const auto domain = u->ground_terms();
    std::set<Tuple> out;
    if (domain.empty()) {
        return out;
    }
    std::vector<std::size_t> idx(vars.size(), 0);
    while (true) {
        std::map<std::string, Term> m;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            m.emplace(vars[i], domain[idx[i]]);
        }
        out.insert(Substitution(std::move(m)).apply(tuple));
        if (out.size() > limit) {
            throw ResourceExceeded("ground_instances",
                                   "more than " + std::to_string(limit) + " instances");
        }
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == domain.size()) {
            idx[k++] = 0;
        }
        if (k == idx.size()) {
            break;
        }
    }
    return out;
}

} // namespace tra
