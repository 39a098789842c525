#include "tra/terms.hpp"

#include <sstream>

namespace tra {

Substitution::Substitution(std::map<std::string, Term> bindings) : bindings_(std::move(bindings)) {}

const Term* Substitution::find(const std::string& var) const {
    auto it = bindings_.find(var);
    return it == bindings_.end() ? nullptr : &it->second;
}

Term Substitution::apply(const Term& t) const {
    if (t.is_ground() || bindings_.empty()) {
        return t;
    }
    if (t.is_variable()) {
        const Term* v = find(t.name());
        return v ? *v : t;
    }
    std::vector<Term> args;
    args.reserve(t.arity());
    for (const auto& a : t.args()) {
        args.push_back(apply(a));
    }
    return Term::compound(t.name(), std::move(args));
}

Tuple Substitution::apply(std::span<const Term> tuple) const {
    Tuple out;
    out.reserve(tuple.size());
    for (const auto& t : tuple) {
        out.push_back(apply(t));
    }
    return out;
}

EquationSet Substitution::to_equations() const {
    EquationSet out;
    out.reserve(bindings_.size());
    for (const auto& [v, t] : bindings_) {
        out.push_back({Term::variable(v), t});
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Substitution& s) {
    os << '{';
    bool first = true;
    for (const auto& [v, t] : s.bindings()) {
        if (!first) {
            os << ", ";
        }
        first = false;
        os << v << '=' << t;
    }
    return os << '}';
}

bool is_solved_form(const EquationSet& equations) {
    VarSet lhs;
    for (const auto& e : equations) {
        if (!e.lhs.is_variable() || !lhs.insert(e.lhs.name()).second) {
            return false;
        }
    }
    for (const auto& e : equations) {
        for (const auto& v : variables(e.rhs)) {
            if (lhs.count(v) != 0) {
                return false;
            }
        }
    }
    return true;
}

Term Bindings::walk(Term t) const {
    while (t.is_variable()) {
        auto it = map_.find(t.name());
        if (it == map_.end()) {
            break;
        }
        t = it->second;
    }
    return t;
}

Term Bindings::resolve(const Term& t) const {
    if (t.is_ground() || map_.empty()) {
        return t;
    }
    Term w = walk(t);
    if (!w.is_compound() || w.is_ground()) {
        return w;
    }
    std::vector<Term> args;
    args.reserve(w.arity());
    for (const auto& a : w.args()) {
        args.push_back(resolve(a));
    }
    return Term::compound(w.name(), std::move(args));
}

bool Bindings::occurs(const std::string& var, const Term& t) const {
    if (t.is_ground()) {
        return false;
    }
    Term w = walk(t);
    if (w.is_variable()) {
        return w.name() == var;
    }
    for (const auto& a : w.args()) {
        if (occurs(var, a)) {
            return true;
        }
    }
    return false;
}

void Bindings::bind(const std::string& var, Term value) {
    map_.insert_or_assign(var, std::move(value));
    trail_.push_back(var);
}

void Bindings::undo(std::size_t mark) {
    while (trail_.size() > mark) {
        map_.erase(trail_.back());
        trail_.pop_back();
    }
}

bool Bindings::unify(const Term& a, const Term& b) {
    std::vector<std::pair<Term, Term>> work{{a, b}};
    while (!work.empty()) {
        auto [x, y] = std::move(work.back());
        work.pop_back();
        x = walk(x);
        y = walk(y);
        if (x.is_variable()) {
            if (y.is_variable() && x.name() == y.name()) {
                continue;
            }
            if (occurs(x.name(), y)) {
                return false;
            }
            bind(x.name(), y);
            continue;
        }
        if (y.is_variable()) {
            if (occurs(y.name(), x)) {
                return false;
            }
            bind(y.name(), x);
            continue;
        }
        if (x.kind() != y.kind() || x.name() != y.name() || x.arity() != y.arity()) {
            return false;
        }
        if (x.is_ground() && y.is_ground()) {
            if (x != y) {
                return false;
            }
            continue;
        }
        for (std::size_t i = x.arity(); i-- > 0;) {
            work.emplace_back(x.args()[i], y.args()[i]);
        }
    }
    return true;
}

Substitution Bindings::solved() const {
    std::map<std::string, Term> out;
    for (const auto& [v, t] : map_) {
        out.emplace(v, resolve(t));
    }
    return Substitution(std::move(out));
}

std::optional<Substitution> unify(const EquationSet& equations) {
    Bindings b;
    for (const auto& e : equations) {
        if (!b.unify(e.lhs, e.rhs)) {
            return std::nullopt;
        }
    }
    return b.solved();
}

} // namespace tra
