#include <algorithm>
#include <set>

#include "tra/engine.hpp"
#include "tra/error.hpp"

namespace tra {

namespace {

constexpr std::size_t kInitialDepth = 8;

struct Goal {
    Term atom;
    const Module* module;
};

void check_bound(const Module& m, const char* op) {
    for (const auto& [name, arity] : m.program->relation_vars()) {
        auto it = m.bindings.find(name);
        if (it == m.bindings.end()) {
            throw EvalError(op, "relation variable " + name + " is unbound" +
                                    (m.name.empty() ? "" : " in " + m.name));
        }
        if (it->second.arity() != arity) {
            throw ArityMismatch(op, arity, it->second.arity());
        }
    }
}

class Search {
public:
    Search(std::vector<std::string> heading, const SearchLimits& limits, SelectionRule rule)
        : heading_(std::move(heading)), limits_(limits), rule_(rule) {}

    /// True when the tree was exhausted below `bound` without cut branches.
    bool run(const std::vector<Goal>& goals, std::size_t bound) {
        bound_ = bound;
        cutoff_ = false;
        rows_.clear();
        step(goals, 0);
        return !cutoff_;
    }

    std::vector<Row> rows() const { return {rows_.begin(), rows_.end()}; }

private:
    void step(const std::vector<Goal>& goals, std::size_t depth) {
        if (goals.empty()) {
            rows_.insert(make_row(heading_, bindings_));
            if (rows_.size() > limits_.max_answers) {
                throw ResourceExceeded("where", "more than " + std::to_string(limits_.max_answers) +
                                                    " answers");
            }
            return;
        }
        if (depth >= bound_) {
            cutoff_ = true;
            return;
        }
        const std::size_t pick = rule_ == SelectionRule::Leftmost ? 0 : goals.size() - 1;
        const Goal& goal = goals[pick];
        const std::string& pred = predicate_of(goal.atom);
        const Module& module = *goal.module;

        auto without = [&](std::span<const Goal> insert) {
            std::vector<Goal> next;
            next.reserve(goals.size() - 1 + insert.size());
            next.insert(next.end(), goals.begin(), goals.begin() + pick);
            next.insert(next.end(), insert.begin(), insert.end());
            next.insert(next.end(), goals.begin() + pick + 1, goals.end());
            return next;
        };

        if (auto bound = module.bindings.find(pred); bound != module.bindings.end()) {
            const Relation& rel = bound->second;
            const auto args = arguments_of(goal.atom);
            if (args.size() != rel.arity()) {
                throw ArityMismatch("where", rel.arity(), args.size());
            }
            if (rel.is_extensional()) {
                const auto rest = without({});
                for (const auto& tuple : rel.tuples()) {
                    const auto mark = bindings_.mark();
                    bool ok = true;
                    for (std::size_t i = 0; ok && i < args.size(); ++i) {
                        ok = bindings_.unify(args[i], tuple[i]);
                    }
                    if (ok) {
                        step(rest, depth + 1);
                    }
                    bindings_.undo(mark);
                }
            } else {
                check_bound(rel.module(), "where");
                const Goal inner{make_atom(rel.predicate(), {args.begin(), args.end()}),
                                 rel.module_ptr().get()};
                step(without({&inner, 1}), depth + 1);
            }
            return;
        }
        if (module.program->relation_vars().count(pred) != 0) {
            throw EvalError("where", "relation variable " + pred + " is unbound");
        }
        for (auto ci : module.program->clauses_for(pred)) {
            const Clause& clause = module.program->clauses()[ci];
            const VarSet none;
            Renamer rename(none, none);
            const Term head = rename(clause.head);
            const auto mark = bindings_.mark();
            if (bindings_.unify(goal.atom, head)) {
                std::vector<Goal> body;
                body.reserve(clause.body.size());
                for (const auto& b : clause.body) {
                    body.push_back({rename(b), goal.module});
                }
                step(without(body), depth + 1);
            }
            bindings_.undo(mark);
        }
    }

    std::vector<std::string> heading_;
    SearchLimits limits_;
    SelectionRule rule_;
    std::size_t bound_ = 0;
    bool cutoff_ = false;
    Bindings bindings_;
    std::set<Row> rows_;
};

} // namespace

Table where(const Query& query, const Module& module, const SearchLimits& limits, SelectionRule rule) {
    if (query.empty()) {
        throw EvalError("where", "empty query");
    }
    if (limits.max_depth == 0 || limits.max_answers == 0) {
        throw std::invalid_argument("where: search limits must be positive");
    }
    check_bound(module, "where");
    const auto heading = heading_of(query);
    std::vector<Goal> goals;
    for (const auto& atom : query) {
        if (atom.is_variable()) {
            throw EvalError("where", "goal is a variable: " + atom.name());
        }
        goals.push_back({atom, &module});
    }
    Search search(heading, limits, rule);
    std::size_t bound = std::min(kInitialDepth, limits.max_depth);
    while (true) {
        if (search.run(goals, bound)) {
            return Table(heading, search.rows());
        }
        if (bound == limits.max_depth) {
            throw Incomplete(limits.max_depth);
        }
        bound = std::min(bound * 2, limits.max_depth);
    }
}

} // namespace tra
