#include "tra/eval.hpp"

#include <json.hpp>

#include <algorithm>

#include "tra/error.hpp"
#include "tra/translate.hpp"

namespace tra {

std::string to_string(Sort s) {
    switch (s) {
    case Sort::Table:
        return "table";
    case Sort::Relation:
        return "relation";
    case Sort::Program:
        return "program";
    }
    return "?";
}

Sort sort_of(const Value& v) {
    if (std::holds_alternative<Table>(v)) {
        return Sort::Table;
    }
    if (std::holds_alternative<Relation>(v)) {
        return Sort::Relation;
    }
    return Sort::Program;
}

Env Env::bind(const std::string& name, Value value) const {
    Env out = *this;
    out.values_.insert_or_assign(name, std::move(value));
    return out;
}

const Value* Env::find(const std::string& name) const {
    auto it = values_.find(name);
    return it == values_.end() ? nullptr : &it->second;
}

namespace {

using SortEnv = std::map<std::string, Sort>;

void require(Sort actual, Sort wanted, const char* where, const Expr& e) {
    if (actual != wanted) {
        throw TypeMismatch(where, "expected a " + to_string(wanted) + ", found a " +
                                      to_string(actual) + " in " + to_string(e));
    }
}

Sort infer(const Expr& e, const SortEnv& env) {
    if (const auto* n = e.as<ast::Var>()) {
        auto it = env.find(n->name);
        if (it == env.end()) {
            throw EvalError("eval", "unbound identifier " + n->name);
        }
        return it->second;
    }
    if (const auto* n = e.as<ast::Where>()) {
        require(infer(*n->program, env), Sort::Program, "where", *n->program);
        return Sort::Table;
    }
    if (const auto* n = e.as<ast::Intersect>()) {
        require(infer(*n->left, env), Sort::Table, "intersect", *n->left);
        require(infer(*n->right, env), Sort::Table, "intersect", *n->right);
        return Sort::Table;
    }
    if (const auto* n = e.as<ast::Apply>()) {
        require(infer(*n->relation, env), Sort::Relation, "apply", *n->relation);
        return Sort::Table;
    }
    if (const auto* n = e.as<ast::Project>()) {
        require(infer(*n->table, env), Sort::Table, "project", *n->table);
        return Sort::Relation;
    }
    if (const auto* n = e.as<ast::Union>()) {
        require(infer(*n->left, env), Sort::Relation, "union", *n->left);
        require(infer(*n->right, env), Sort::Relation, "union", *n->right);
        return Sort::Relation;
    }
    if (e.is<ast::Top>() || e.is<ast::Bottom>()) {
        return Sort::Table;
    }
    if (e.is<ast::RelLit>()) {
        return Sort::Relation;
    }
    if (const auto* n = e.as<ast::Mu>()) {
        SortEnv inner = env;
        bool found = false;
        for (const auto& inc : n->group) {
            inner[inc.name] = Sort::Relation;
            found = found || inc.name == n->result;
        }
        if (!found) {
            throw EvalError("mu", n->result + " has no inclusion in its group");
        }
        for (const auto& inc : n->group) {
            require(infer(*inc.rhs, inner), Sort::Relation, "mu", *inc.rhs);
        }
        return Sort::Relation;
    }
    if (const auto* n = e.as<ast::Nu>()) {
        require(infer(*n->program, env), Sort::Program, "nu", *n->program);
        return Sort::Relation;
    }
    if (e.is<ast::Lam>()) {
        throw TypeMismatch("lam", "a lambda abstraction must be applied to a relation");
    }
    if (const auto* n = e.as<ast::App>()) {
        const auto* lam = n->lambda->as<ast::Lam>();
        if (lam == nullptr) {
            throw TypeMismatch("app", "only lambda abstractions can be applied");
        }
        require(infer(*lam->program, env), Sort::Program, "lam", *lam->program);
        require(infer(*n->argument, env), Sort::Relation, "app", *n->argument);
        return Sort::Program;
    }
    return Sort::Program; // ProgLit
}

/// True when one of `names` is used where a program is expected.
bool in_program_position(const Expr& e, std::set<std::string> names, bool program_pos) {
    if (names.empty()) {
        return false;
    }
    auto rec = [&](const ExprPtr& sub, bool pos) { return in_program_position(*sub, names, pos); };
    if (const auto* n = e.as<ast::Var>()) {
        return program_pos && names.count(n->name) != 0;
    }
    if (const auto* n = e.as<ast::Where>()) {
        return rec(n->program, true);
    }
    if (const auto* n = e.as<ast::Intersect>()) {
        return rec(n->left, program_pos) || rec(n->right, program_pos);
    }
    if (const auto* n = e.as<ast::Union>()) {
        return rec(n->left, program_pos) || rec(n->right, program_pos);
    }
    if (const auto* n = e.as<ast::Apply>()) {
        return rec(n->relation, program_pos);
    }
    if (const auto* n = e.as<ast::Project>()) {
        return rec(n->table, program_pos);
    }
    if (const auto* n = e.as<ast::Mu>()) {
        for (const auto& inc : n->group) {
            names.erase(inc.name);
        }
        for (const auto& inc : n->group) {
            if (in_program_position(*inc.rhs, names, program_pos)) {
                return true;
            }
        }
        return false;
    }
    if (const auto* n = e.as<ast::Nu>()) {
        return rec(n->program, true);
    }
    if (const auto* n = e.as<ast::Lam>()) {
        return rec(n->program, true);
    }
    if (const auto* n = e.as<ast::App>()) {
        return rec(n->lambda, true) || rec(n->argument, true);
    }
    return false;
}

std::optional<std::size_t> arity_hint(const Expr& e, const std::map<std::string, std::size_t>& known,
                                      const Env& env) {
    if (const auto* n = e.as<ast::Project>()) {
        return n->args.size();
    }
    if (const auto* n = e.as<ast::RelLit>()) {
        return n->arity;
    }
    if (const auto* n = e.as<ast::Union>()) {
        if (auto a = arity_hint(*n->left, known, env)) {
            return a;
        }
        return arity_hint(*n->right, known, env);
    }
    if (const auto* n = e.as<ast::Var>()) {
        if (auto it = known.find(n->name); it != known.end()) {
            return it->second;
        }
        if (const Value* v = env.find(n->name)) {
            if (const auto* r = std::get_if<Relation>(v)) {
                return r->arity();
            }
        }
    }
    return std::nullopt;
}

/// Whether a name of `names` occurs free in `e`.
bool mentions(const Expr& e, std::set<std::string> names) {
    if (names.empty()) {
        return false;
    }
    auto rec = [&](const ExprPtr& sub) { return mentions(*sub, names); };
    if (const auto* n = e.as<ast::Var>()) {
        return names.count(n->name) != 0;
    }
    if (const auto* n = e.as<ast::Where>()) {
        return rec(n->program);
    }
    if (const auto* n = e.as<ast::Intersect>()) {
        return rec(n->left) || rec(n->right);
    }
    if (const auto* n = e.as<ast::Union>()) {
        return rec(n->left) || rec(n->right);
    }
    if (const auto* n = e.as<ast::Apply>()) {
        return rec(n->relation);
    }
    if (const auto* n = e.as<ast::Project>()) {
        return rec(n->table);
    }
    if (const auto* n = e.as<ast::Mu>()) {
        for (const auto& inc : n->group) {
            names.erase(inc.name);
        }
        return std::any_of(n->group.begin(), n->group.end(),
                           [&](const Inclusion& inc) { return mentions(*inc.rhs, names); });
    }
    if (const auto* n = e.as<ast::Nu>()) {
        return rec(n->program);
    }
    if (const auto* n = e.as<ast::Lam>()) {
        return rec(n->program);
    }
    if (const auto* n = e.as<ast::App>()) {
        return rec(n->lambda) || rec(n->argument);
    }
    return false;
}

ExprPtr eta_expand(const std::string& name, std::size_t arity) {
    Tuple vars;
    for (std::size_t i = 1; i <= arity; ++i) {
        vars.push_back(Term::variable("A" + std::to_string(i)));
    }
    return make_project(vars, make_apply(make_var(name), vars));
}

class Evaluator {
public:
    explicit Evaluator(const EvalConfig& config) : config_(config) {}

    Value eval(const Expr& e, const Env& env) {
        return std::visit([&](const auto& n) { return this->node(n, env); }, e.node);
    }

    Table table(const Expr& e, const Env& env) { return std::get<Table>(eval(e, env)); }
    Relation relation(const Expr& e, const Env& env) { return std::get<Relation>(eval(e, env)); }
    ModulePtr program(const Expr& e, const Env& env) { return std::get<ModulePtr>(eval(e, env)); }

    MuSolution mu(std::span<const Inclusion> group, const Env& env) {
        std::set<std::string> names;
        for (const auto& inc : group) {
            names.insert(inc.name);
        }
        for (const auto& inc : group) {
            if (in_program_position(*inc.rhs, names, false)) {
                throw NonMonotone("mu", "a relation variable of the group is used as a program in " +
                                            to_string(inc));
            }
        }
        switch (config_.mu_strategy) {
        case MuStrategy::BottomUp:
            return bottom_up(group, env);
        case MuStrategy::GoalDirected:
            return goal_directed(group, env);
        case MuStrategy::Auto:
            break;
        }
        try {
            return bottom_up(group, env);
        } catch (const UniverseRequired&) {
        } catch (const ResourceExceeded&) {
        } catch (const Incomplete&) {
        }
        return goal_directed(group, env);
    }

private:
    Value node(const ast::Var& n, const Env& env) {
        const Value* v = env.find(n.name);
        if (v == nullptr) {
            throw EvalError("eval", "unbound identifier " + n.name);
        }
        return *v;
    }
    Value node(const ast::Where& n, const Env& env) {
        const ModulePtr m = program(*n.program, env);
        return where(n.query, *m, config_.limits);
    }
    Value node(const ast::Intersect& n, const Env& env) {
        Table left = table(*n.left, env);
        return intersect(left, table(*n.right, env));
    }
    Value node(const ast::Apply& n, const Env& env) {
        return apply(relation(*n.relation, env), n.args, config_.limits);
    }
    Value node(const ast::Project& n, const Env& env) {
        return project(n.args, table(*n.table, env), config_.universe_ptr());
    }
    Value node(const ast::Union& n, const Env& env) {
        Relation left = relation(*n.left, env);
        return rel_union(left, relation(*n.right, env), config_.materialize_options());
    }
    Value node(const ast::Top&, const Env&) { return Table::top(); }
    Value node(const ast::Bottom&, const Env&) { return Table::bottom(); }
    Value node(const ast::RelLit& n, const Env&) {
        return Relation::extensional(n.arity, std::set<Tuple>(n.tuples.begin(), n.tuples.end()));
    }
    Value node(const ast::Mu& n, const Env& env) {
        MuSolution s = mu(n.group, env);
        return s.relations.at(n.result);
    }
    Value node(const ast::Nu& n, const Env& env) {
        return Relation::intensional(program(*n.program, env), n.predicate);
    }
    Value node(const ast::Lam&, const Env&) {
        throw TypeMismatch("lam", "a lambda abstraction must be applied to a relation");
    }
    Value node(const ast::App& n, const Env& env) {
        const auto* lam = n.lambda->as<ast::Lam>();
        if (lam == nullptr) {
            throw TypeMismatch("app", "only lambda abstractions can be applied");
        }
        const ModulePtr body = program(*lam->program, env);
        const Relation arg = relation(*n.argument, env);
        auto declared = body->program->relation_vars().find(lam->param);
        if (declared == body->program->relation_vars().end()) {
            throw EvalError("app", "program" + (body->name.empty() ? "" : " " + body->name) +
                                       " does not declare relation variable " + lam->param);
        }
        if (declared->second != arg.arity()) {
            throw ArityMismatch("app", declared->second, arg.arity());
        }
        auto bound = std::make_shared<Module>(*body);
        bound->bindings.insert_or_assign(lam->param, arg);
        return ModulePtr(std::move(bound));
    }
    Value node(const ast::ProgLit& n, const Env&) {
        auto m = std::make_shared<Module>();
        m->program = n.program;
        return ModulePtr(std::move(m));
    }

    std::map<std::string, std::size_t> arities(std::span<const Inclusion> group, const Env& env) {
        std::map<std::string, std::size_t> known;
        bool progress = true;
        while (progress) {
            progress = false;
            for (const auto& inc : group) {
                if (known.count(inc.name) == 0) {
                    if (auto a = arity_hint(*inc.rhs, known, env)) {
                        known[inc.name] = *a;
                        progress = true;
                    }
                }
            }
        }
        return known;
    }

    MuSolution bottom_up(std::span<const Inclusion> group, const Env& env) {
        const auto arity = arities(group, env);
        MuSolution s;
        s.strategy = MuStrategy::BottomUp;
        for (const auto& inc : group) {
            auto it = arity.find(inc.name);
            if (it == arity.end()) {
                throw TypeMismatch("mu", "cannot infer the arity of " + inc.name);
            }
            s.relations.insert_or_assign(inc.name, Relation::extensional(it->second));
        }
        const auto opts = config_.materialize_options();
        for (std::size_t iter = 1; iter <= config_.fix_cap; ++iter) {
            Env inner = env;
            for (const auto& [name, rel] : s.relations) {
                inner = inner.bind(name, rel);
            }
            std::map<std::string, Relation> next;
            for (const auto& inc : group) {
                Relation r = materialize(relation(*inc.rhs, inner), opts);
                if (r.arity() != arity.at(inc.name)) {
                    throw ArityMismatch("mu", arity.at(inc.name), r.arity());
                }
                next.insert_or_assign(inc.name, std::move(r));
            }
            bool same = true;
            for (const auto& [name, rel] : next) {
                const Relation& prev = s.relations.at(name);
                if (!rel_subset(prev, rel)) {
                    throw NonMonotone("mu", "iterate for " + name + " shrank at step " +
                                                std::to_string(iter));
                }
                same = same && prev.tuples().size() == rel.tuples().size();
            }
            s.relations = std::move(next);
            s.iterations = iter;
            if (same) {
                return s;
            }
        }
        throw ResourceExceeded("mu", "no fixpoint within " + std::to_string(config_.fix_cap) +
                                         " iterations");
    }

    /// Brings a right-hand side into the shape the clause translation
    /// accepts: relation-valued operands that do not depend on the group
    /// are evaluated and bound in `env` under generated names, and bare
    /// relation names become `(A1..An)/r:(A1..An)`.
    ExprPtr normalize(const ExprPtr& e, const std::set<std::string>& names,
                      const std::map<std::string, std::size_t>& arity, Env& env) {
        if (const auto* u = e->as<ast::Union>()) {
            return make_union(normalize(u->left, names, arity, env),
                              normalize(u->right, names, arity, env));
        }
        if (e->is<ast::Bottom>() || e->is<ast::RelLit>()) {
            return e;
        }
        if (const auto* p = e->as<ast::Project>()) {
            return make_project(p->args, normalize_table(p->table, names, env));
        }
        if (const auto* v = e->as<ast::Var>()) {
            auto it = arity.find(v->name);
            if (it != arity.end()) {
                return eta_expand(v->name, it->second);
            }
            if (const Value* bound = env.find(v->name)) {
                if (const auto* r = std::get_if<Relation>(bound)) {
                    return eta_expand(v->name, r->arity());
                }
            }
            return e;
        }
        if (mentions(*e, names)) {
            return e;
        }
        const std::string name = bind_generated(relation(*e, env), env);
        return eta_expand(name, std::get<Relation>(*env.find(name)).arity());
    }

    ExprPtr normalize_table(const ExprPtr& e, const std::set<std::string>& names, Env& env) {
        if (const auto* i = e->as<ast::Intersect>()) {
            return make_intersect(normalize_table(i->left, names, env),
                                  normalize_table(i->right, names, env));
        }
        if (const auto* a = e->as<ast::Apply>()) {
            if (a->relation->is<ast::Var>() || a->relation->is<ast::RelLit>() ||
                mentions(*a->relation, names)) {
                return e;
            }
            return make_apply(make_var(bind_generated(relation(*a->relation, env), env)), a->args);
        }
        return e;
    }

    std::string bind_generated(Relation r, Env& env) {
        std::string name = "sub$" + std::to_string(++generated_);
        env = env.bind(name, std::move(r));
        return name;
    }

    MuSolution goal_directed(std::span<const Inclusion> group, const Env& outer) {
        const auto arity = arities(group, outer);
        std::set<std::string> names;
        for (const auto& inc : group) {
            names.insert(inc.name);
        }
        Env env = outer;
        std::vector<Inclusion> normal;
        for (const auto& inc : group) {
            normal.push_back({inc.name, normalize(inc.rhs, names, arity, env)});
        }
        ClauseTranslation tr =
            tra_to_clauses(normal, [&](const Expr& p) { return program(p, env); });
        auto module = std::make_shared<Module>();
        module->bindings = std::move(tr.bindings);
        for (const auto& [name, arity] : tr.free_relations) {
            const Value* v = env.find(name);
            if (v == nullptr) {
                throw EvalError("mu", "unbound identifier " + name);
            }
            const auto* rel = std::get_if<Relation>(v);
            if (rel == nullptr) {
                throw TypeMismatch("mu", name + " is a " + to_string(sort_of(*v)) + ", not a relation");
            }
            module->bindings.insert_or_assign(name, *rel);
        }
        module->program = std::make_shared<const Program>(std::move(tr.program));
        module->name = "mu " + group.front().name;
        const ModulePtr shared = module;

        MuSolution s;
        s.strategy = MuStrategy::GoalDirected;
        for (const auto& inc : group) {
            if (shared->program->defines(inc.name)) {
                s.relations.insert_or_assign(inc.name, Relation::intensional(shared, inc.name));
            } else {
                auto it = arity.find(inc.name);
                s.relations.insert_or_assign(
                    inc.name, Relation::extensional(it == arity.end() ? 0 : it->second));
            }
        }
        return s;
    }

    const EvalConfig& config_;
    std::size_t generated_ = 0;
};

SortEnv sorts_of(const Env& env) {
    SortEnv out;
    for (const auto& [name, v] : env.values()) {
        out.emplace(name, sort_of(v));
    }
    return out;
}

} // namespace

Sort check_sorts(const Expr& e, const Env& env) { return infer(e, sorts_of(env)); }

Value eval(const Expr& e, const Env& env, const EvalConfig& config) {
    check_sorts(e, env);
    return Evaluator(config).eval(e, env);
}

Table eval_table(const Expr& e, const Env& env, const EvalConfig& config) {
    require(check_sorts(e, env), Sort::Table, "eval", e);
    return Evaluator(config).table(e, env);
}

Relation eval_relation(const Expr& e, const Env& env, const EvalConfig& config) {
    require(check_sorts(e, env), Sort::Relation, "eval", e);
    return Evaluator(config).relation(e, env);
}

ModulePtr eval_program(const Expr& e, const Env& env, const EvalConfig& config) {
    require(check_sorts(e, env), Sort::Program, "eval", e);
    return Evaluator(config).program(e, env);
}

MuSolution solve_mu(std::span<const Inclusion> group, const Env& env, const EvalConfig& config) {
    if (group.empty()) {
        throw EvalError("mu", "empty inclusion group");
    }
    SortEnv sorts = sorts_of(env);
    for (const auto& inc : group) {
        sorts[inc.name] = Sort::Relation;
    }
    for (const auto& inc : group) {
        require(infer(*inc.rhs, sorts), Sort::Relation, "mu", *inc.rhs);
    }
    return Evaluator(config).mu(group, env);
}

Relation solve_mu(const std::string& name, const ExprPtr& rhs, const Env& env,
                  const EvalConfig& config) {
    const Inclusion group[] = {{name, rhs}};
    return solve_mu(group, env, config).relations.at(name);
}

bool check_inclusion(const Relation& lhs, const Relation& rhs_value, const EvalConfig& config) {
    return rel_subset(rhs_value, lhs, config.materialize_options());
}

std::string format_value(const Value& v, const EvalConfig& config) {
    if (const auto* t = std::get_if<Table>(&v)) {
        return format_table(*t);
    }
    if (const auto* r = std::get_if<Relation>(&v)) {
        return format_relation(materialize(*r, config.materialize_options())) + "\n";
    }
    const auto& m = std::get<ModulePtr>(v);
    std::string out = "program" + (m->name.empty() ? std::string() : " " + m->name) + "\n";
    for (const auto& [name, rel] : m->bindings) {
        out += "% " + name + " bound to a relation of arity " + std::to_string(rel.arity()) + "\n";
    }
    return out + to_string(*m->program);
}

std::string value_json(const Value& v, const EvalConfig& config) {
    if (const auto* t = std::get_if<Table>(&v)) {
        return table_json(*t);
    }
    if (const auto* r = std::get_if<Relation>(&v)) {
        return relation_json(materialize(*r, config.materialize_options()));
    }
    const auto& m = std::get<ModulePtr>(v);
    nlohmann::json j;
    j["program"] = to_string(*m->program);
    j["name"] = m->name;
    return j.dump();
}

} // namespace tra
