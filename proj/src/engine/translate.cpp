#include "tra/translate.hpp"

#include <optional>

#include "tra/error.hpp"

namespace tra {

Inclusion clause_to_tra(const Clause& clause, const std::set<std::string>& relation_vars,
                        const ExprPtr& program) {
    ExprPtr body;
    for (const auto& atom : clause.body) {
        const auto args = arguments_of(atom);
        ExprPtr conjunct = relation_vars.count(predicate_of(atom)) != 0
                               ? make_apply(make_var(predicate_of(atom)), Tuple(args.begin(), args.end()))
                               : make_where({atom}, program);
        body = body ? make_intersect(body, conjunct) : conjunct;
    }
    if (!body) {
        body = make_top();
    }
    const auto head_args = arguments_of(clause.head);
    return {predicate_of(clause.head),
            make_project(Tuple(head_args.begin(), head_args.end()), std::move(body))};
}

std::vector<Inclusion> program_to_tra(const Program& program,
                                      const std::set<std::string>& relation_vars,
                                      const ExprPtr& program_ref) {
    std::vector<Inclusion> out;
    std::map<std::string, std::size_t> slot;
    for (const auto& c : program.clauses()) {
        Inclusion inc = clause_to_tra(c, relation_vars, program_ref);
        auto [it, inserted] = slot.emplace(inc.name, out.size());
        if (inserted) {
            out.push_back(std::move(inc));
        } else {
            out[it->second].rhs = make_union(out[it->second].rhs, inc.rhs);
        }
    }
    return out;
}

namespace {

class Translator {
public:
    Translator(std::span<const Inclusion> group, const ModuleResolver& resolve)
        : group_(group), resolve_(resolve) {
        for (const auto& inc : group_) {
            if (!names_.insert(inc.name).second) {
                throw UnsupportedExpression("tra_to_clauses", "relation variable " + inc.name +
                                                                  " has two inclusions");
            }
        }
    }

    ClauseTranslation run() {
        for (const auto& inc : group_) {
            alternatives(inc.name, *inc.rhs);
        }
        ClauseTranslation out;
        std::map<std::string, std::size_t> relvars = free_;
        for (const auto& [name, rel] : bindings_) {
            relvars[name] = rel.arity();
        }
        out.program = Program(std::move(clauses_), std::move(relvars));
        out.bindings = std::move(bindings_);
        out.free_relations = std::move(free_);
        return out;
    }

private:
    void alternatives(const std::string& head, const Expr& e) {
        if (const auto* u = e.as<ast::Union>()) {
            alternatives(head, *u->left);
            alternatives(head, *u->right);
            return;
        }
        if (e.is<ast::Bottom>()) {
            return;
        }
        if (const auto* lit = e.as<ast::RelLit>()) {
            for (const auto& t : lit->tuples) {
                clauses_.push_back({make_atom(head, t), {}});
            }
            return;
        }
        if (const auto* p = e.as<ast::Project>()) {
            std::vector<Term> body;
            if (!conjuncts(*p->table, body)) {
                return;
            }
            clauses_.push_back({make_atom(head, p->args), std::move(body)});
            return;
        }
        throw UnsupportedExpression("tra_to_clauses", "right-hand side " + to_string(e));
    }

    /// False when the conjunction contains `bot`.
    bool conjuncts(const Expr& e, std::vector<Term>& body) {
        if (e.is<ast::Top>()) {
            return true;
        }
        if (e.is<ast::Bottom>()) {
            return false;
        }
        if (const auto* i = e.as<ast::Intersect>()) {
            const bool left = conjuncts(*i->left, body);
            const bool right = conjuncts(*i->right, body);
            return left && right;
        }
        if (const auto* a = e.as<ast::Apply>()) {
            body.push_back(make_atom(relation_name(*a->relation, a->args.size()), a->args));
            return true;
        }
        if (const auto* w = e.as<ast::Where>()) {
            const auto& prefix = inline_module(*w->program);
            for (const auto& atom : w->query) {
                const auto args = arguments_of(atom);
                body.push_back(make_atom(prefix + predicate_of(atom), {args.begin(), args.end()}));
            }
            return true;
        }
        throw UnsupportedExpression("tra_to_clauses", "table expression " + to_string(e));
    }

    std::string relation_name(const Expr& rel, std::size_t arity) {
        if (const auto* v = rel.as<ast::Var>()) {
            if (names_.count(v->name) == 0) {
                auto [it, inserted] = free_.emplace(v->name, arity);
                if (!inserted && it->second != arity) {
                    throw ArityMismatch("tra_to_clauses", it->second, arity);
                }
            }
            return v->name;
        }
        if (const auto* lit = rel.as<ast::RelLit>()) {
            std::string name = "lit$" + std::to_string(++literals_);
            bindings_.emplace(name, Relation::extensional(
                                        lit->arity, std::set<Tuple>(lit->tuples.begin(), lit->tuples.end())));
            return name;
        }
        throw UnsupportedExpression("tra_to_clauses", "applied relation " + to_string(rel));
    }

    /// Copies the module's clauses under a fresh prefix once per module.
    const std::string& inline_module(const Expr& program) {
        auto module = resolve_(program);
        if (auto it = inlined_.find(module.get()); it != inlined_.end()) {
            return it->second;
        }
        const std::string prefix = "w" + std::to_string(inlined_.size() + 1) + "$";
        auto rename = [&](const Term& atom) {
            const auto args = arguments_of(atom);
            return make_atom(prefix + predicate_of(atom), {args.begin(), args.end()});
        };
        for (const auto& c : module->program->clauses()) {
            Clause copy{rename(c.head), {}};
            for (const auto& b : c.body) {
                copy.body.push_back(rename(b));
            }
            clauses_.push_back(std::move(copy));
        }
        for (const auto& [name, rel] : module->bindings) {
            bindings_.emplace(prefix + name, rel);
        }
        for (const auto& [name, arity] : module->program->relation_vars()) {
            if (module->bindings.count(name) == 0) {
                throw EvalError("tra_to_clauses", "relation variable " + name + " is unbound" +
                                                      (module->name.empty() ? "" : " in " + module->name));
            }
        }
        keep_.push_back(module);
        return inlined_.emplace(module.get(), prefix).first->second;
    }

    std::span<const Inclusion> group_;
    const ModuleResolver& resolve_;
    std::set<std::string> names_;
    std::vector<Clause> clauses_;
    std::map<std::string, Relation> bindings_;
    std::map<std::string, std::size_t> free_;
    std::map<const Module*, std::string> inlined_;
    std::vector<std::shared_ptr<const Module>> keep_;
    std::size_t literals_ = 0;
};

} // namespace

ClauseTranslation tra_to_clauses(std::span<const Inclusion> group, const ModuleResolver& resolve) {
    return Translator(group, resolve).run();
}

} // namespace tra
