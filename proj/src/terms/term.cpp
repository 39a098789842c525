#include "tra/terms.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <unordered_set>

namespace tra {

// Nodes are hash-consed: structurally equal terms share one node, so
// equality is pointer identity and comparisons stop at shared subterms.
struct Term::Node : std::enable_shared_from_this<Term::Node> {
    Kind kind;
    std::string name;
    std::vector<Term> args;
    bool ground;
    std::size_t depth;
    std::size_t hash;

    Node(Kind k, std::string n, std::vector<Term> a, bool g, std::size_t d, std::size_t h)
        : kind(k), name(std::move(n)), args(std::move(a)), ground(g), depth(d), hash(h) {}
    Node(const Node&) = delete;
    Node& operator=(const Node&) = delete;
    ~Node();
};

struct Term::Interner {
    struct Probe {
        Kind kind;
        const std::string& name;
        const std::vector<Term>& args;
        std::size_t hash;
    };

    struct Hash {
        using is_transparent = void;
        std::size_t operator()(const Node* n) const noexcept { return n->hash; }
        std::size_t operator()(const Probe& p) const noexcept { return p.hash; }
    };

    struct Equal {
        using is_transparent = void;
        template <class A, class B>
        bool operator()(const A& a, const B& b) const noexcept {
            return fields(a) == fields(b);
        }
        static auto fields(const Node* n) { return std::tie(n->kind, n->name, n->args); }
        static auto fields(const Probe& p) { return std::tie(p.kind, p.name, p.args); }
    };

    std::shared_ptr<const Node> intern(Kind kind, std::string name, std::vector<Term> args, bool ground,
                                       std::size_t depth) {
        std::size_t h = std::hash<std::string>{}(name) * 31 + static_cast<std::size_t>(kind);
        for (const auto& a : args) {
            h = h * 1000003 ^ std::hash<const Node*>{}(a.node_.get());
        }
        const std::lock_guard<std::mutex> lock(mutex);
        if (auto it = nodes.find(Probe{kind, name, args, h}); it != nodes.end()) {
            if (auto live = (*it)->weak_from_this().lock()) {
                return live;
            }
            // Dying but not yet unregistered; its destructor then skips the erase.
            nodes.erase(it);
        }
        auto node = std::make_shared<const Node>(kind, std::move(name), std::move(args), ground, depth, h);
        nodes.insert(node.get());
        return node;
    }

    void forget(const Node* node) {
        const std::lock_guard<std::mutex> lock(mutex);
        if (auto it = nodes.find(node); it != nodes.end() && *it == node) {
            nodes.erase(it);
        }
    }

    static Interner& instance() {
        // Leaked so terms owned by other statics can still unregister at exit.
        static Interner* interner = new Interner;
        return *interner;
    }

    std::mutex mutex;
    std::unordered_set<const Node*, Hash, Equal> nodes;
};

Term::Node::~Node() { Interner::instance().forget(this); }

Term Term::variable(std::string name) {
    return Term(Interner::instance().intern(Kind::Variable, std::move(name), {}, false, 0));
}

Term Term::constant(std::string name) {
    return Term(Interner::instance().intern(Kind::Constant, std::move(name), {}, true, 0));
}

Term Term::integer(long long value) { return constant(std::to_string(value)); }

Term Term::compound(std::string functor, std::vector<Term> args) {
    if (args.empty()) {
        throw std::invalid_argument("compound term '" + functor + "' needs at least one argument");
    }
    bool ground = true;
    std::size_t depth = 0;
    for (const auto& a : args) {
        ground = ground && a.is_ground();
        depth = std::max(depth, a.depth());
    }
    return Term(Interner::instance().intern(Kind::Compound, std::move(functor), std::move(args), ground,
                                            depth + 1));
}

Term Term::nil() {
    static const Term n = constant(kNilName);
    return n;
}

Term Term::list(std::vector<Term> items, std::optional<Term> tail) {
    Term acc = tail ? *tail : nil();
    for (auto it = items.rbegin(); it != items.rend(); ++it) {
        acc = compound(kListFunctor, {*it, acc});
    }
    return acc;
}

Term Term::pair(Term left, Term right) {
    return compound(kPairFunctor, {std::move(left), std::move(right)});
}

Term::Kind Term::kind() const noexcept { return node_->kind; }
const std::string& Term::name() const noexcept { return node_->name; }
std::span<const Term> Term::args() const noexcept { return node_->args; }
bool Term::is_ground() const noexcept { return node_->ground; }
std::size_t Term::depth() const noexcept { return node_->depth; }

bool operator==(const Term& a, const Term& b) noexcept { return a.node_ == b.node_; }

std::strong_ordering operator<=>(const Term& a, const Term& b) noexcept {
    if (a.node_ == b.node_) {
        return std::strong_ordering::equal;
    }
    if (auto c = a.kind() <=> b.kind(); c != 0) {
        return c;
    }
    if (auto c = a.arity() <=> b.arity(); c != 0) {
        return c;
    }
    if (auto c = a.name().compare(b.name()); c != 0) {
        return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (auto c = a.depth() <=> b.depth(); c != 0) {
        return c;
    }
    auto xs = a.args();
    auto ys = b.args();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (auto c = xs[i] <=> ys[i]; c != 0) {
            return c;
        }
    }
    return std::strong_ordering::equal;
}

namespace {

bool is_list_cell(const Term& t) { return t.is_compound() && t.arity() == 2 && t.name() == kListFunctor; }
bool is_pair(const Term& t) { return t.is_compound() && t.arity() == 2 && t.name() == kPairFunctor; }

// Names that would not lex back as the same atom are written quoted.
bool needs_quotes(const std::string& name) {
    if (name.empty()) {
        return true;
    }
    if (name == kNilName) {
        return false;
    }
    const auto digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
    const auto word = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; };
    if (std::all_of(name.begin(), name.end(), digit)) {
        return false;
    }
    return !std::islower(static_cast<unsigned char>(name[0])) || !std::all_of(name.begin(), name.end(), word);
}

void write_name(std::ostream& os, const std::string& name) {
    if (needs_quotes(name)) {
        os << '\'' << name << '\'';
    } else {
        os << name;
    }
}

void write(std::ostream& os, const Term& t) {
    switch (t.kind()) {
    case Term::Kind::Variable:
        os << t.name();
        return;
    case Term::Kind::Constant:
        write_name(os, t.name());
        return;
    case Term::Kind::Compound:
        break;
    }
    if (is_list_cell(t)) {
        os << '[';
        Term cur = t;
        bool first = true;
        while (is_list_cell(cur)) {
            if (!first) {
                os << ',';
            }
            first = false;
            write(os, cur.args()[0]);
            cur = cur.args()[1];
        }
        if (!(cur.is_constant() && cur.name() == kNilName)) {
            os << '|';
            write(os, cur);
        }
        os << ']';
        return;
    }
    if (is_pair(t)) {
        // '-' is left associative, so only a right operand needs parentheses.
        write(os, t.args()[0]);
        os << '-';
        const Term& right = t.args()[1];
        if (is_pair(right)) {
            os << '(';
            write(os, right);
            os << ')';
        } else {
            write(os, right);
        }
        return;
    }
    write_name(os, t.name());
    os << '(';
    for (std::size_t i = 0; i < t.arity(); ++i) {
        if (i != 0) {
            os << ',';
        }
        write(os, t.args()[i]);
    }
    os << ')';
}

} // namespace

std::ostream& operator<<(std::ostream& os, const Term& t) {
    write(os, t);
    return os;
}

std::string to_string(const Term& t) {
    std::ostringstream os;
    write(os, t);
    return os.str();
}

std::string to_string(std::span<const Term> tuple) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i != 0) {
            os << ',';
        }
        write(os, tuple[i]);
    }
    os << ')';
    return os.str();
}

void collect_variables(const Term& t, std::vector<std::string>& out) {
    if (t.is_ground()) {
        return;
    }
    if (t.is_variable()) {
        if (std::find(out.begin(), out.end(), t.name()) == out.end()) {
            out.push_back(t.name());
        }
        return;
    }
    for (const auto& a : t.args()) {
        collect_variables(a, out);
    }
}

std::vector<std::string> variables(const Term& t) {
    std::vector<std::string> out;
    collect_variables(t, out);
    return out;
}

std::vector<std::string> variables(std::span<const Term> tuple) {
    std::vector<std::string> out;
    for (const auto& t : tuple) {
        collect_variables(t, out);
    }
    return out;
}

bool occurs_in(const std::string& var, const Term& t) {
    if (t.is_ground()) {
        return false;
    }
    if (t.is_variable()) {
        return t.name() == var;
    }
    return std::any_of(t.args().begin(), t.args().end(),
                       [&](const Term& a) { return occurs_in(var, a); });
}

bool is_ground(std::span<const Term> tuple) {
    return std::all_of(tuple.begin(), tuple.end(), [](const Term& t) { return t.is_ground(); });
}

namespace {
std::atomic<std::uint64_t> fresh_counter{0};
}

std::string fresh_variable_name() {
    return "_G" + std::to_string(fresh_counter.fetch_add(1, std::memory_order_relaxed) + 1);
}

Term fresh_variable() { return Term::variable(fresh_variable_name()); }

bool is_fresh_name(const std::string& name) {
    return name.size() > 2 && name[0] == '_' && name[1] == 'G' &&
           std::all_of(name.begin() + 2, name.end(), [](char c) { return c >= '0' && c <= '9'; });
}

Term Renamer::operator()(const Term& t) {
    if (t.is_ground()) {
        return t;
    }
    if (t.is_variable()) {
        if (protect_.count(t.name()) != 0) {
            return t;
        }
        auto it = map_.find(t.name());
        if (it != map_.end()) {
            return it->second;
        }
        std::string name = fresh_variable_name();
        while (avoid_.count(name) != 0) {
            name = fresh_variable_name();
        }
        return map_.emplace(t.name(), Term::variable(name)).first->second;
    }
    std::vector<Term> args;
    args.reserve(t.arity());
    for (const auto& a : t.args()) {
        args.push_back((*this)(a));
    }
    return Term::compound(t.name(), std::move(args));
}

Term rename_apart(const Term& t, const VarSet& avoid, const VarSet& protect) {
    Renamer r(avoid, protect);
    return r(t);
}

Tuple rename_apart(std::span<const Term> tuple, const VarSet& avoid, const VarSet& protect) {
    Renamer r(avoid, protect);
    Tuple out;
    out.reserve(tuple.size());
    for (const auto& t : tuple) {
        out.push_back(r(t));
    }
    return out;
}

EquationSet rename_apart(const EquationSet& equations, const VarSet& avoid, const VarSet& protect) {
    Renamer r(avoid, protect);
    EquationSet out;
    out.reserve(equations.size());
    for (const auto& e : equations) {
        out.push_back({r(e.lhs), r(e.rhs)});
    }
    return out;
}

} // namespace tra
