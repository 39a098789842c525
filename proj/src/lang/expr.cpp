#include "tra/expr.hpp"

#include <sstream>

namespace tra {

ExprPtr make_var(std::string name) { return make_expr(ast::Var{std::move(name)}); }
ExprPtr make_top() { return make_expr(ast::Top{}); }
ExprPtr make_bottom() { return make_expr(ast::Bottom{}); }
ExprPtr make_where(Query query, ExprPtr program) {
    return make_expr(ast::Where{std::move(query), std::move(program)});
}
ExprPtr make_intersect(ExprPtr left, ExprPtr right) {
    return make_expr(ast::Intersect{std::move(left), std::move(right)});
}
ExprPtr make_union(ExprPtr left, ExprPtr right) {
    return make_expr(ast::Union{std::move(left), std::move(right)});
}
ExprPtr make_apply(ExprPtr relation, Tuple args) {
    return make_expr(ast::Apply{std::move(relation), std::move(args)});
}
ExprPtr make_project(Tuple args, ExprPtr table) {
    return make_expr(ast::Project{std::move(args), std::move(table)});
}

namespace {

// Binding strength, loosest first.
enum Level { kMu = 0, kUnion = 1, kIntersect = 2, kPostfix = 3, kPrimary = 4 };

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Level level_of(const Expr& e) {
    return std::visit(overloaded{
                          [](const ast::Mu&) { return kMu; },
                          [](const ast::Lam&) { return kMu; },
                          [](const ast::Union&) { return kUnion; },
                          [](const ast::Intersect&) { return kIntersect; },
                          [](const ast::Apply&) { return kPostfix; },
                          [](const ast::Project&) { return kPostfix; },
                          [](const auto&) { return kPrimary; },
                      },
                      e.node);
}

class Printer {
public:
    explicit Printer(std::ostream& os) : os_(os) {}

    void print(const Expr& e, Level min) {
        const bool parens = level_of(e) < min;
        if (parens) {
            os_ << '(';
        }
        std::visit([&](const auto& n) { emit(n); }, e.node);
        if (parens) {
            os_ << ')';
        }
    }

    void inclusion(const Inclusion& inc) {
        os_ << inc.name << " >= ";
        print(*inc.rhs, kUnion);
    }

private:
    void emit(const ast::Where& n) {
        os_ << "(?- ";
        for (std::size_t i = 0; i < n.query.size(); ++i) {
            os_ << (i ? ", " : "") << n.query[i];
        }
        os_ << " where ";
        print(*n.program, kPrimary);
        os_ << ')';
    }
    void emit(const ast::Intersect& n) {
        print(*n.left, kIntersect);
        os_ << " /\\ ";
        print(*n.right, kPostfix);
    }
    void emit(const ast::Union& n) {
        print(*n.left, kUnion);
        os_ << " \\/ ";
        print(*n.right, kIntersect);
    }
    void emit(const ast::Apply& n) {
        print(*n.relation, kPrimary);
        os_ << ':' << to_string(n.args);
    }
    void emit(const ast::Project& n) {
        os_ << to_string(n.args) << '/';
        const Expr& t = *n.table;
        if (t.is<ast::Top>() || t.is<ast::Bottom>() || t.is<ast::Var>() || t.is<ast::Where>()) {
            print(t, kPrimary);
        } else {
            os_ << '(';
            print(t, kMu);
            os_ << ')';
        }
    }
    void emit(const ast::Top&) { os_ << "top"; }
    void emit(const ast::Bottom&) { os_ << "bot"; }
    void emit(const ast::RelLit& n) {
        os_ << '{';
        for (std::size_t i = 0; i < n.tuples.size(); ++i) {
            os_ << (i ? "," : "") << to_string(n.tuples[i]);
        }
        os_ << '}';
    }
    void emit(const ast::Var& n) { os_ << n.name; }
    void emit(const ast::Mu& n) {
        os_ << "mu " << n.result << " . ";
        for (std::size_t i = 0; i < n.group.size(); ++i) {
            if (i != 0) {
                os_ << " ; ";
            }
            inclusion(n.group[i]);
        }
    }
    void emit(const ast::Nu& n) {
        os_ << "nu " << n.predicate << " . ";
        print(*n.program, kPrimary);
    }
    void emit(const ast::Lam& n) {
        os_ << "lam " << n.param << " . ";
        print(*n.program, kPrimary);
    }
    void emit(const ast::App& n) {
        os_ << '(';
        print(*n.lambda, kMu);
        os_ << ")(";
        print(*n.argument, kMu);
        os_ << ')';
    }
    void emit(const ast::ProgLit& n) {
        os_ << '{';
        for (const auto& [name, arity] : n.program->relation_vars()) {
            os_ << " #rel " << name << '/' << arity << '.';
        }
        for (const auto& c : n.program->clauses()) {
            os_ << ' ' << to_string(c);
        }
        os_ << " }";
    }

    std::ostream& os_;
};

} // namespace

std::string to_string(const Expr& e) {
    std::ostringstream os;
    Printer(os).print(e, kMu);
    return os.str();
}

std::string to_string(const Inclusion& inc) {
    std::ostringstream os;
    Printer(os).inclusion(inc);
    return os.str();
}

} // namespace tra
