#pragma once

// AST of the table/relation expression language.

#include <cstddef>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "tra/program.hpp"
#include "tra/terms.hpp"

namespace tra {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// `name >= rhs`
struct Inclusion {
    std::string name;
    ExprPtr rhs;
};

namespace ast {

/// `(?- goals where program)`
struct Where {
    Query query;
    ExprPtr program;
};
/// `left /\ right`
struct Intersect {
    ExprPtr left;
    ExprPtr right;
};
/// `relation : (args)`
struct Apply {
    ExprPtr relation;
    Tuple args;
};
/// `(args) / table`
struct Project {
    Tuple args;
    ExprPtr table;
};
/// `left \/ right`
struct Union {
    ExprPtr left;
    ExprPtr right;
};
struct Top {};
struct Bottom {};
/// `{(a,b),(b,c)}`
struct RelLit {
    std::size_t arity = 0;
    std::vector<Tuple> tuples;
};
struct Var {
    std::string name;
};
/// `mu result . r1 >= e1 ; r2 >= e2 ...` solved jointly.
struct Mu {
    std::string result;
    std::vector<Inclusion> group;
};
/// `nu predicate . program`
struct Nu {
    std::string predicate;
    ExprPtr program;
};
/// `lam param . program`; only meaningful as the callee of App.
struct Lam {
    std::string param;
    ExprPtr program;
};
/// `(lam param . program)(argument)`
struct App {
    ExprPtr lambda;
    ExprPtr argument;
};
/// `{ clauses }` inline program.
struct ProgLit {
    std::shared_ptr<const Program> program;
};

} // namespace ast

struct Expr {
    using Node = std::variant<ast::Where, ast::Intersect, ast::Apply, ast::Project, ast::Union,
                              ast::Top, ast::Bottom, ast::RelLit, ast::Var, ast::Mu, ast::Nu,
                              ast::Lam, ast::App, ast::ProgLit>;
    Node node;

    template <typename T>
    const T* as() const noexcept {
        return std::get_if<T>(&node);
    }
    template <typename T>
    bool is() const noexcept {
        return std::holds_alternative<T>(node);
    }
};

template <typename T>
ExprPtr make_expr(T node) {
    return std::make_shared<const Expr>(Expr{Expr::Node(std::move(node))});
}

ExprPtr make_var(std::string name);
ExprPtr make_top();
ExprPtr make_bottom();
ExprPtr make_where(Query query, ExprPtr program);
ExprPtr make_intersect(ExprPtr left, ExprPtr right);
ExprPtr make_union(ExprPtr left, ExprPtr right);
ExprPtr make_apply(ExprPtr relation, Tuple args);
ExprPtr make_project(Tuple args, ExprPtr table);

/// Concrete ASCII syntax; parses back to an equal tree.
std::string to_string(const Expr& e);
std::string to_string(const Inclusion& inc);

} // namespace tra
