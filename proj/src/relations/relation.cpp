#include "tra/relation.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "tra/engine.hpp"
#include "tra/error.hpp"

namespace tra {

Relation Relation::extensional(std::size_t arity, std::set<Tuple> tuples) {
    for (const auto& t : tuples) {
        if (t.size() != arity) {
            throw std::invalid_argument("relation tuple " + to_string(t) + " does not have arity " +
                                        std::to_string(arity));
        }
        if (!is_ground(t)) {
            throw std::invalid_argument("relation tuple " + to_string(t) + " is not ground");
        }
    }
    Relation r;
    r.arity_ = arity;
    r.tuples_ = std::make_shared<const std::set<Tuple>>(std::move(tuples));
    return r;
}

Relation Relation::intensional(std::shared_ptr<const Module> module, std::string predicate) {
    if (!module || !module->program) {
        throw std::invalid_argument("intensional relation needs a module");
    }
    auto arity = module->program->defined().find(predicate);
    if (arity == module->program->defined().end()) {
        throw EvalError("nu", "predicate " + predicate + " is not defined" +
                                  (module->name.empty() ? "" : " in " + module->name));
    }
    Relation r;
    r.arity_ = arity->second;
    r.module_ = std::move(module);
    r.predicate_ = std::move(predicate);
    return r;
}

const std::set<Tuple>& Relation::tuples() const {
    if (!tuples_) {
        throw std::logic_error("tuples() on intensional relation " + predicate_);
    }
    return *tuples_;
}

const Module& Relation::module() const {
    if (!module_) {
        throw std::logic_error("module() on extensional relation");
    }
    return *module_;
}

std::shared_ptr<const Module> make_module(Program program, std::string name) {
    auto m = std::make_shared<Module>();
    m->program = std::make_shared<const Program>(std::move(program));
    m->name = std::move(name);
    return m;
}

std::vector<std::string> heading_of(std::span<const Term> args) {
    auto vars = variables(args);
    vars.erase(std::remove_if(vars.begin(), vars.end(), is_fresh_name), vars.end());
    return vars;
}

Table apply(const Relation& r, std::span<const Term> args, const SearchLimits& limits) {
    if (args.size() != r.arity()) {
        throw ArityMismatch("apply", r.arity(), args.size());
    }
    if (!r.is_extensional()) {
        return where({make_atom(r.predicate(), {args.begin(), args.end()})}, r.module(), limits);
    }
    const auto heading = heading_of(args);
    std::vector<Row> rows;
    for (const auto& e : r.tuples()) {
        Bindings b;
        bool ok = true;
        for (std::size_t i = 0; ok && i < args.size(); ++i) {
            ok = b.unify(args[i], e[i]);
        }
        if (ok) {
            rows.push_back(make_row(heading, b));
        }
    }
    return Table(heading, std::move(rows));
}

Relation project(std::span<const Term> args, const Table& table, const Universe* universe,
                 std::size_t limit) {
    std::set<Tuple> out;
    for (const auto& row : table.rows()) {
        const Tuple inst = table.substitution(row).apply(args);
        try {
            for (auto& g : ground_instances(inst, universe, limit)) {
                out.insert(std::move(g));
            }
        } catch (const UniverseRequired&) {
            throw UniverseRequired("project", "non-ground tuple " + to_string(inst));
        }
        if (out.size() > limit) {
            throw ResourceExceeded("project", "more than " + std::to_string(limit) + " tuples");
        }
    }
    return Relation::extensional(args.size(), std::move(out));
}

Relation materialize(const Relation& r, const MaterializeOptions& options) {
    if (r.is_extensional()) {
        return r;
    }
    auto model = least_model(r.module(), options.limits, options.universe);
    auto it = model.find(r.predicate());
    if (it == model.end()) {
        return Relation::extensional(r.arity());
    }
    return it->second;
}

namespace {

void check_arity(const char* op, const Relation& a, const Relation& b) {
    if (a.arity() != b.arity()) {
        throw ArityMismatch(op, a.arity(), b.arity());
    }
}

} // namespace

Relation rel_union(const Relation& a, const Relation& b, const MaterializeOptions& options) {
    check_arity("union", a, b);
    const Relation ma = materialize(a, options);
    const Relation mb = materialize(b, options);
    std::set<Tuple> out = ma.tuples();
    out.insert(mb.tuples().begin(), mb.tuples().end());
    return Relation::extensional(a.arity(), std::move(out));
}

bool rel_subset(const Relation& a, const Relation& b, const MaterializeOptions& options) {
    check_arity("subset", a, b);
    const Relation ma = materialize(a, options);
    if (ma.tuples().empty()) {
        return true;
    }
    const Relation mb = materialize(b, options);
    return std::includes(mb.tuples().begin(), mb.tuples().end(), ma.tuples().begin(),
                         ma.tuples().end());
}

bool rel_equal(const Relation& a, const Relation& b, const MaterializeOptions& options) {
    if (a.arity() != b.arity()) {
        return false;
    }
    return materialize(a, options).tuples() == materialize(b, options).tuples();
}

namespace {

std::vector<std::vector<std::string>> printed_tuples(const Relation& r) {
    std::vector<std::vector<std::string>> out;
    for (const auto& t : r.tuples()) {
        std::vector<std::string> cells;
        for (const auto& x : t) {
            cells.push_back(to_string(x));
        }
        out.push_back(std::move(cells));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

std::string format_relation(const Relation& r) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const auto& cells : printed_tuples(r)) {
        os << (first ? "" : ",") << '(';
        first = false;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            os << (i ? "," : "") << cells[i];
        }
        os << ')';
    }
    os << '}';
    return os.str();
}

std::string relation_json(const Relation& r) {
    nlohmann::json j;
    j["arity"] = r.arity();
    j["tuples"] = nlohmann::json::array();
    for (const auto& cells : printed_tuples(r)) {
        j["tuples"].push_back(cells);
    }
    return j.dump();
}

} // namespace tra
