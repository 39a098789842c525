#include <set>

#include "tra/engine.hpp"
#include "tra/error.hpp"

namespace tra {

namespace {

using Facts = std::map<std::string, std::set<Tuple>>;

class Consequences {
public:
    Consequences(const Facts& bound, const Facts& current, const Facts& delta, const Universe* universe)
        : bound_(bound), current_(current), delta_(delta), universe_(universe) {}

    /// Heads derivable with body atom `pivot` drawn from the delta and the
    /// others from the current facts; every atom from the current facts
    /// when `pivot` is past the body.
    void derive(const Clause& clause, std::size_t pivot, Facts& out) {
        clause_ = &clause;
        pivot_ = pivot;
        out_ = &out;
        join(0);
    }

private:
    const std::set<Tuple>* lookup(const std::string& pred, bool from_delta) const {
        if (auto it = bound_.find(pred); it != bound_.end()) {
            return from_delta ? nullptr : &it->second;
        }
        const Facts& facts = from_delta ? delta_ : current_;
        if (auto it = facts.find(pred); it != facts.end()) {
            return &it->second;
        }
        return nullptr;
    }

    void join(std::size_t i) {
        if (i == clause_->body.size()) {
            const Term head = bindings_.resolve(clause_->head);
            const auto args = arguments_of(head);
            auto& target = (*out_)[predicate_of(head)];
            try {
                for (auto& g : ground_instances(args, universe_)) {
                    target.insert(std::move(g));
                }
            } catch (const UniverseRequired&) {
                throw UniverseRequired("least_model", "derived head " + to_string(head));
            }
            return;
        }
        const Term& atom = clause_->body[i];
        const auto* tuples = lookup(predicate_of(atom), i == pivot_);
        if (tuples == nullptr) {
            return;
        }
        const auto args = arguments_of(atom);
        for (const auto& t : *tuples) {
            const auto mark = bindings_.mark();
            bool ok = t.size() == args.size();
            for (std::size_t k = 0; ok && k < args.size(); ++k) {
                ok = bindings_.unify(args[k], t[k]);
            }
            if (ok) {
                join(i + 1);
            }
            bindings_.undo(mark);
        }
    }

    const Facts& bound_;
    const Facts& current_;
    const Facts& delta_;
    const Universe* universe_;
    const Clause* clause_ = nullptr;
    std::size_t pivot_ = 0;
    Facts* out_ = nullptr;
    Bindings bindings_;
};

} // namespace

Model least_model(const Module& module, const SearchLimits& limits, const Universe* universe) {
    const Program& program = *module.program;
    Facts bound;
    for (const auto& [name, arity] : program.relation_vars()) {
        auto it = module.bindings.find(name);
        if (it == module.bindings.end()) {
            throw EvalError("least_model", "relation variable " + name + " is unbound");
        }
        bound[name] = materialize(it->second, {limits, universe}).tuples();
    }
    for (const auto& [name, rel] : module.bindings) {
        if (bound.count(name) == 0 && !program.defines(name)) {
            bound[name] = materialize(rel, {limits, universe}).tuples();
        }
    }

    // Semi-naive: after the first round a new fact needs some body atom
    // from the previous round's new facts, so each round yields exactly the
    // facts the naive iteration would add.
    Facts current;
    for (const auto& [name, arity] : program.defined()) {
        current[name];
    }
    Facts delta;
    bool first = true;
    while (true) {
        Facts derived;
        Consequences step(bound, current, delta, universe);
        for (const auto& clause : program.clauses()) {
            if (first) {
                step.derive(clause, clause.body.size(), derived);
                continue;
            }
            for (std::size_t i = 0; i < clause.body.size(); ++i) {
                if (bound.count(predicate_of(clause.body[i])) == 0) {
                    step.derive(clause, i, derived);
                }
            }
        }
        first = false;
        Facts fresh;
        for (auto& [name, tuples] : derived) {
            auto& known = current[name];
            for (auto& t : tuples) {
                if (known.count(t) == 0) {
                    fresh[name].insert(t);
                }
            }
        }
        if (fresh.empty()) {
            break;
        }
        for (const auto& [name, tuples] : fresh) {
            auto& known = current[name];
            known.insert(tuples.begin(), tuples.end());
            if (known.size() > limits.max_answers) {
                throw ResourceExceeded("least_model", "predicate " + name + " exceeds " +
                                                          std::to_string(limits.max_answers) +
                                                          " tuples");
            }
        }
        delta = std::move(fresh);
    }

    Model model;
    for (const auto& [name, arity] : program.defined()) {
        model.emplace(name, Relation::extensional(arity, std::move(current[name])));
    }
    return model;
}

} // namespace tra
