#include "oracle.hpp"

#include <functional>

namespace tra::oracle {

bool match(const Term& pattern, const Term& ground, Assignment& a) {
    if (pattern.is_variable()) {
        auto [it, inserted] = a.emplace(pattern.name(), ground);
        return inserted || it->second == ground;
    }
    if (pattern.kind() != ground.kind() || pattern.name() != ground.name() ||
        pattern.arity() != ground.arity()) {
        return false;
    }
    for (std::size_t i = 0; i < pattern.arity(); ++i) {
        if (!match(pattern.args()[i], ground.args()[i], a)) {
            return false;
        }
    }
    return true;
}

Term substitute(const Term& t, const Assignment& a) {
    if (t.is_variable()) {
        auto it = a.find(t.name());
        return it == a.end() ? t : it->second;
    }
    if (!t.is_compound()) {
        return t;
    }
    std::vector<Term> args;
    for (const auto& x : t.args()) {
        args.push_back(substitute(x, a));
    }
    return Term::compound(t.name(), std::move(args));
}

std::vector<Assignment> assignments(const std::vector<std::string>& vars,
                                    const std::vector<Term>& domain) {
    std::vector<Assignment> out{Assignment{}};
    for (const auto& v : vars) {
        std::vector<Assignment> next;
        for (const auto& a : out) {
            for (const auto& d : domain) {
                Assignment b = a;
                b.emplace(v, d);
                next.push_back(std::move(b));
            }
        }
        out = std::move(next);
    }
    return out;
}

std::vector<Term> domain(const std::vector<Term>& constants,
                         const std::vector<std::pair<std::string, std::size_t>>& functors,
                         std::size_t depth) {
    std::set<Term> all(constants.begin(), constants.end());
    for (std::size_t level = 0; level < depth; ++level) {
        const std::vector<Term> previous(all.begin(), all.end());
        for (const auto& [f, n] : functors) {
            std::vector<std::vector<Term>> argsets{{}};
            for (std::size_t i = 0; i < n; ++i) {
                std::vector<std::vector<Term>> next;
                for (const auto& partial : argsets) {
                    for (const auto& t : previous) {
                        auto extended = partial;
                        extended.push_back(t);
                        next.push_back(std::move(extended));
                    }
                }
                argsets = std::move(next);
            }
            for (auto& args : argsets) {
                all.insert(Term::compound(f, std::move(args)));
            }
        }
    }
    return {all.begin(), all.end()};
}

std::set<Tuple> cylinder(const Table& t, const std::vector<Term>& domain,
                         const std::vector<std::string>& enumeration) {
    std::set<Tuple> out;
    for (const auto& a : assignments(enumeration, domain)) {
        bool member = false;
        for (const auto& row : t.rows()) {
            Assignment local;
            bool ok = true;
            for (std::size_t i = 0; ok && i < row.size(); ++i) {
                ok = match(row[i], a.at(t.heading()[i]), local);
            }
            if (ok) {
                member = true;
                break;
            }
        }
        if (member) {
            Tuple tuple;
            for (const auto& v : enumeration) {
                tuple.push_back(a.at(v));
            }
            out.insert(std::move(tuple));
        }
    }
    return out;
}

Table ground_table(const Table& t, const std::vector<Term>& domain) {
    std::vector<Row> rows;
    for (const auto& row : t.rows()) {
        std::vector<std::string> locals;
        for (const auto& term : row) {
            collect_variables(term, locals);
        }
        for (const auto& a : assignments(locals, domain)) {
            Row g;
            for (const auto& term : row) {
                g.push_back(substitute(term, a));
            }
            rows.push_back(std::move(g));
        }
    }
    return rows.empty() ? Table::bottom() : Table(t.heading(), std::move(rows));
}

namespace {

std::vector<std::string> clause_variables(const Clause& c) {
    std::vector<std::string> vars;
    collect_variables(c.head, vars);
    for (const auto& b : c.body) {
        collect_variables(b, vars);
    }
    return vars;
}

bool holds(const Term& ground_atom, const Facts& model) {
    Tuple args;
    std::string pred = ground_atom.name();
    for (const auto& a : ground_atom.args()) {
        args.push_back(a);
    }
    auto it = model.find(pred);
    return it != model.end() && it->second.count(args) != 0;
}

} // namespace

Facts least_model(const std::vector<Clause>& clauses, const std::vector<Term>& domain) {
    Facts model;
    for (const auto& c : clauses) {
        model[c.head.name()];
    }
    std::vector<std::vector<Assignment>> instances;
    for (const auto& c : clauses) {
        instances.push_back(assignments(clause_variables(c), domain));
    }
    bool changed = true;
    while (changed) {
        changed = false;
        Facts next = model;
        for (std::size_t i = 0; i < clauses.size(); ++i) {
            const Clause& c = clauses[i];
            for (const auto& a : instances[i]) {
                bool body = true;
                for (const auto& b : c.body) {
                    if (!holds(substitute(b, a), model)) {
                        body = false;
                        break;
                    }
                }
                if (body) {
                    const Term head = substitute(c.head, a);
                    Tuple args(head.args().begin(), head.args().end());
                    changed = next[head.name()].insert(std::move(args)).second || changed;
                }
            }
        }
        model = std::move(next);
    }
    return model;
}

std::set<Tuple> answers(const std::vector<Term>& goals, const std::vector<std::string>& heading,
                        const Facts& model, const std::vector<Term>& domain) {
    std::vector<std::string> vars;
    for (const auto& g : goals) {
        collect_variables(g, vars);
    }
    std::set<Tuple> out;
    for (const auto& a : assignments(vars, domain)) {
        bool ok = true;
        for (const auto& g : goals) {
            if (!holds(substitute(g, a), model)) {
                ok = false;
                break;
            }
        }
        if (ok) {
            Tuple t;
            for (const auto& v : heading) {
                t.push_back(a.at(v));
            }
            out.insert(std::move(t));
        }
    }
    return out;
}

bool instance_of(const Tuple& g, const Tuple& row) {
    if (g.size() != row.size()) {
        return false;
    }
    Assignment a;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!match(row[i], g[i], a)) {
            return false;
        }
    }
    return true;
}

std::set<std::pair<int, int>> transitive_closure(const std::set<std::pair<int, int>>& edges,
                                                 int nodes) {
    std::vector<std::vector<bool>> reach(nodes, std::vector<bool>(nodes, false));
    for (const auto& [a, b] : edges) {
        reach[a][b] = true;
    }
    for (int k = 0; k < nodes; ++k) {
        for (int i = 0; i < nodes; ++i) {
            for (int j = 0; j < nodes; ++j) {
                if (reach[i][k] && reach[k][j]) {
                    reach[i][j] = true;
                }
            }
        }
    }
    std::set<std::pair<int, int>> out;
    for (int i = 0; i < nodes; ++i) {
        for (int j = 0; j < nodes; ++j) {
            if (reach[i][j]) {
                out.emplace(i, j);
            }
        }
    }
    return out;
}

} // namespace tra::oracle
