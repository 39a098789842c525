#include "tra/program.hpp"

#include <sstream>

#include "tra/error.hpp"

namespace tra {

const std::string& predicate_of(const Term& atom) { return atom.name(); }

std::span<const Term> arguments_of(const Term& atom) { return atom.args(); }

Term make_atom(const std::string& predicate, std::vector<Term> args) {
    if (args.empty()) {
        return Term::constant(predicate);
    }
    return Term::compound(predicate, std::move(args));
}

std::string to_string(const Clause& c) {
    std::ostringstream os;
    os << c.head;
    if (!c.body.empty()) {
        os << " :- ";
        for (std::size_t i = 0; i < c.body.size(); ++i) {
            os << (i ? ", " : "") << c.body[i];
        }
    }
    os << '.';
    return os.str();
}

Program::Program(std::vector<Clause> clauses, std::map<std::string, std::size_t> relation_vars)
    : clauses_(std::move(clauses)), relation_vars_(std::move(relation_vars)) {
    auto note_arity = [&](const Term& atom) {
        if (atom.is_variable()) {
            throw EvalError("program", "atom expected, found variable " + atom.name());
        }
        auto [it, inserted] = arities_.emplace(atom.name(), atom.arity());
        if (!inserted && it->second != atom.arity()) {
            throw EvalError("program", "predicate " + atom.name() + " used with arities " +
                                           std::to_string(it->second) + " and " +
                                           std::to_string(atom.arity()));
        }
    };
    for (const auto& [name, arity] : relation_vars_) {
        arities_.emplace(name, arity);
    }
    for (std::size_t i = 0; i < clauses_.size(); ++i) {
        const auto& c = clauses_[i];
        note_arity(c.head);
        if (relation_vars_.count(c.head.name()) != 0) {
            throw EvalError("program", "relation variable " + c.head.name() +
                                           " cannot head a clause");
        }
        for (const auto& b : c.body) {
            note_arity(b);
        }
        defined_.emplace(c.head.name(), c.head.arity());
        index_[c.head.name()].push_back(i);
    }
}

std::span<const std::size_t> Program::clauses_for(const std::string& predicate) const {
    auto it = index_.find(predicate);
    if (it == index_.end()) {
        return {};
    }
    return it->second;
}

std::optional<std::size_t> Program::arity_of(const std::string& predicate) const {
    auto it = arities_.find(predicate);
    if (it == arities_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::set<std::string> Program::undefined_body_predicates() const {
    std::set<std::string> out;
    for (const auto& c : clauses_) {
        for (const auto& b : c.body) {
            if (!defines(b.name()) && relation_vars_.count(b.name()) == 0) {
                out.insert(b.name());
            }
        }
    }
    return out;
}

std::string to_string(const Program& p) {
    std::ostringstream os;
    for (const auto& [name, arity] : p.relation_vars()) {
        os << "#rel " << name << '/' << arity << ".\n";
    }
    for (const auto& c : p.clauses()) {
        os << to_string(c) << '\n';
    }
    return os.str();
}

} // namespace tra
