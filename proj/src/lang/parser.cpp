#include <cctype>
#include <sstream>

#include "tra/error.hpp"
#include "tra/syntax.hpp"

namespace tra {

namespace {

std::string describe(const std::string& found, const std::vector<std::string>& expected) {
    std::ostringstream os;
    os << "unexpected " << found;
    if (!expected.empty()) {
        os << "; expected " << (expected.size() == 1 ? "" : "one of ");
        for (std::size_t i = 0; i < expected.size(); ++i) {
            os << (i ? ", " : "") << expected[i];
        }
    }
    return os.str();
}

} // namespace

ParseError::ParseError(std::size_t line, std::size_t column, std::string found,
                       std::vector<std::string> expected)
    : Error("parse", "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                         describe(found, expected)),
      line_(line), column_(column), found_(std::move(found)), expected_(std::move(expected)) {}

namespace {

struct Token {
    enum class Kind { Var, Ident, Int, Punct, End };
    Kind kind;
    std::string text;
    std::size_t line;
    std::size_t column;
    bool quoted = false;
};

std::string show(const Token& t) {
    switch (t.kind) {
    case Token::Kind::End:
        return "end of input";
    case Token::Kind::Var:
        return "variable " + t.text;
    case Token::Kind::Int:
        return "integer " + t.text;
    case Token::Kind::Ident:
        return "'" + t.text + "'";
    case Token::Kind::Punct:
        break;
    }
    return "'" + t.text + "'";
}

std::vector<Token> tokenize(std::string_view src) {
    static constexpr std::string_view kPuncts[] = {":-", "?-", "/\\", "\\/", ">=", "(", ")", "[",
                                                   "]",  "{",  "}",   ",",  "|",  ".", ":", "/",
                                                   "-",  ";",  "#"};
    std::vector<Token> out;
    std::size_t i = 0;
    std::size_t line = 1;
    std::size_t col = 1;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < src.size()) {
        const char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '%') {
            while (i < src.size() && src[i] != '\n') {
                advance(1);
            }
            continue;
        }
        const std::size_t l = line;
        const std::size_t cl = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
                ++j;
            }
            const bool var = std::isupper(static_cast<unsigned char>(c)) || c == '_';
            out.push_back({var ? Token::Kind::Var : Token::Kind::Ident,
                           std::string(src.substr(i, j - i)), l, cl});
            advance(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
                ++j;
            }
            out.push_back({Token::Kind::Int, std::string(src.substr(i, j - i)), l, cl});
            advance(j - i);
            continue;
        }
        if (c == '\'') {
            std::size_t j = i + 1;
            std::string text;
            while (j < src.size() && src[j] != '\'') {
                text += src[j++];
            }
            if (j == src.size()) {
                throw ParseError(l, cl, "unterminated quoted atom", {"'"});
            }
            out.push_back({Token::Kind::Ident, text, l, cl, true});
            advance(j + 1 - i);
            continue;
        }
        bool matched = false;
        for (auto p : kPuncts) {
            if (src.substr(i, p.size()) == p) {
                out.push_back({Token::Kind::Punct, std::string(p), l, cl});
                advance(p.size());
                matched = true;
                break;
            }
        }
        if (!matched) {
            throw ParseError(l, cl, std::string("character '") + c + "'", {});
        }
    }
    out.push_back({Token::Kind::End, "", line, col});
    return out;
}

const std::set<std::string>& keywords() {
    static const std::set<std::string> k{"where", "top", "bot", "mu", "nu", "lam"};
    return k;
}

class Parser {
public:
    explicit Parser(std::string_view src) : tokens_(tokenize(src)) {}

    // ---- tokens ----

    const Token& peek(std::size_t k = 0) const {
        return tokens_[std::min(pos_ + k, tokens_.size() - 1)];
    }
    bool at(std::string_view punct, std::size_t k = 0) const {
        const Token& t = peek(k);
        return t.kind == Token::Kind::Punct && t.text == punct;
    }
    bool at_keyword(std::string_view kw, std::size_t k = 0) const {
        const Token& t = peek(k);
        return t.kind == Token::Kind::Ident && !t.quoted && t.text == kw;
    }
    bool at_end() const { return peek().kind == Token::Kind::End; }
    bool accept(std::string_view punct) {
        if (at(punct)) {
            ++pos_;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(std::vector<std::string> expected) const {
        const Token& t = peek();
        throw ParseError(t.line, t.column, show(t), std::move(expected));
    }
    void expect(std::string_view punct) {
        if (!accept(punct)) {
            fail({"'" + std::string(punct) + "'"});
        }
    }
    void expect_keyword(std::string_view kw) {
        if (!at_keyword(kw)) {
            fail({"'" + std::string(kw) + "'"});
        }
        ++pos_;
    }
    void expect_end() {
        if (!at_end()) {
            fail({"end of input"});
        }
    }
    /// An identifier or variable token used as a name.
    std::string name(const char* what) {
        const Token& t = peek();
        if ((t.kind == Token::Kind::Ident && !(keywords().count(t.text) && !t.quoted)) ||
            (t.kind == Token::Kind::Var && t.text != "_")) {
            ++pos_;
            return t.text;
        }
        fail({what});
    }
    std::size_t integer() {
        const Token& t = peek();
        if (t.kind != Token::Kind::Int) {
            fail({"integer"});
        }
        ++pos_;
        return std::stoul(t.text);
    }

    // ---- terms ----

    Term term() {
        Term t = term_primary();
        while (accept("-")) {
            t = Term::pair(t, term_primary());
        }
        return t;
    }

    Term term_primary() {
        const Token& t = peek();
        switch (t.kind) {
        case Token::Kind::Var:
            ++pos_;
            return t.text == "_" ? fresh_variable() : Term::variable(t.text);
        case Token::Kind::Int:
            ++pos_;
            return Term::constant(t.text);
        case Token::Kind::Ident: {
            ++pos_;
            const std::string f = t.text;
            if (at("(")) {
                return Term::compound(f, arguments());
            }
            return Term::constant(f);
        }
        case Token::Kind::Punct:
            if (accept("[")) {
                return list_rest();
            }
            if (accept("(")) {
                Term inner = term();
                expect(")");
                return inner;
            }
            break;
        case Token::Kind::End:
            break;
        }
        fail({"term"});
    }

    std::vector<Term> arguments() {
        expect("(");
        std::vector<Term> args{term()};
        while (accept(",")) {
            args.push_back(term());
        }
        if (!accept(")")) {
            fail({"','", "')'"});
        }
        return args;
    }

    Term list_rest() {
        if (accept("]")) {
            return Term::nil();
        }
        std::vector<Term> items{term()};
        while (accept(",")) {
            items.push_back(term());
        }
        std::optional<Term> tail;
        if (accept("|")) {
            tail = term();
        }
        if (!accept("]")) {
            fail(tail ? std::vector<std::string>{"']'"} : std::vector<std::string>{"','", "'|'", "']'"});
        }
        return Term::list(std::move(items), tail);
    }

    Tuple tuple() {
        expect("(");
        Tuple out;
        if (accept(")")) {
            return out;
        }
        out.push_back(term());
        while (accept(",")) {
            if (out.size() == 1 && accept(")")) {
                return out; // `(a,)`
            }
            out.push_back(term());
        }
        if (!accept(")")) {
            fail({"','", "')'"});
        }
        return out;
    }

    Term atom() {
        const Token& t = peek();
        const bool predicate = t.kind == Token::Kind::Ident && (t.quoted || t.text != "where");
        // relation variables may be spelled with a capital, `Order(X,Y)`
        const bool relation_var = t.kind == Token::Kind::Var && t.text != "_" && at("(", 1);
        if (!predicate && !relation_var) {
            fail({"atom"});
        }
        ++pos_;
        const std::string p = t.text;
        if (at("(")) {
            return Term::compound(p, arguments());
        }
        return Term::constant(p);
    }

    // ---- programs ----

    ProgramFile program_body(bool inline_program) {
        ProgramFile file;
        std::vector<Clause> clauses;
        std::map<std::string, std::size_t> relvars;
        while (!(inline_program ? at("}") : at_end())) {
            if (at_end()) {
                fail({"'}'"});
            }
            if (accept("#")) {
                directive(file, relvars, inline_program);
                continue;
            }
            Clause c{atom(), {}};
            if (accept(":-")) {
                c.body.push_back(atom());
                while (accept(",")) {
                    c.body.push_back(atom());
                }
            }
            if (!accept(".")) {
                fail(c.body.empty() ? std::vector<std::string>{"':-'", "'.'"}
                                    : std::vector<std::string>{"','", "'.'"});
            }
            clauses.push_back(std::move(c));
        }
        file.program = Program(std::move(clauses), std::move(relvars));
        return file;
    }

    void directive(ProgramFile& file, std::map<std::string, std::size_t>& relvars, bool inline_program) {
        const Token& t = peek();
        if (at_keyword("rel")) {
            ++pos_;
            do {
                std::string n = name("relation variable name");
                expect("/");
                relvars[n] = integer();
            } while (accept(","));
        } else if (!inline_program && at_keyword("universe")) {
            ++pos_;
            do {
                if (peek().kind == Token::Kind::Ident && at("/", 1)) {
                    std::string f = peek().text;
                    pos_ += 2;
                    file.universe_functors.emplace(std::move(f), integer());
                } else {
                    Term c = term_primary();
                    if (!c.is_constant()) {
                        --pos_;
                        fail({"constant", "functor/arity"});
                    }
                    file.universe_constants.insert(c);
                }
            } while (accept(","));
        } else if (!inline_program && at_keyword("depth")) {
            ++pos_;
            file.depth = integer();
        } else {
            if (inline_program) {
                fail({"'rel'"});
            }
            throw ParseError(t.line, t.column, show(t), {"'rel'", "'universe'", "'depth'"});
        }
        expect(".");
    }

    // ---- expressions ----

    ExprPtr expr() {
        if (at_keyword("mu")) {
            return mu();
        }
        return union_expr();
    }

    ExprPtr union_expr() {
        ExprPtr e = intersect_expr();
        while (accept("\\/")) {
            e = make_union(e, intersect_expr());
        }
        return e;
    }

    ExprPtr intersect_expr() {
        ExprPtr e = postfix();
        while (accept("/\\")) {
            e = make_intersect(e, postfix());
        }
        return e;
    }

    ExprPtr postfix() {
        ExprPtr e = primary();
        while (accept(":")) {
            e = make_apply(e, tuple());
        }
        return e;
    }

    ExprPtr mu() {
        expect_keyword("mu");
        ast::Mu m;
        m.result = name("relation variable");
        expect(".");
        m.group.push_back(inclusion());
        while (accept(";")) {
            m.group.push_back(inclusion());
        }
        return make_expr(std::move(m));
    }

    Inclusion inclusion() {
        Inclusion inc;
        inc.name = name("relation variable");
        expect(">=");
        inc.rhs = union_expr();
        return inc;
    }

    ExprPtr primary() {
        const Token& t = peek();
        if (at_keyword("top")) {
            ++pos_;
            return make_top();
        }
        if (at_keyword("bot")) {
            ++pos_;
            return make_bottom();
        }
        if (at_keyword("mu")) {
            return mu();
        }
        if (at_keyword("nu")) {
            ++pos_;
            ast::Nu n;
            n.predicate = name("predicate");
            expect(".");
            n.program = progref();
            return make_expr(std::move(n));
        }
        if ((t.kind == Token::Kind::Ident && (t.quoted || !keywords().count(t.text))) ||
            (t.kind == Token::Kind::Var && t.text != "_")) {
            ++pos_;
            return make_var(t.text);
        }
        if (at("{")) {
            return relation_literal();
        }
        if (at("(")) {
            if (at("?-", 1)) {
                return where();
            }
            if (at_keyword("lam", 1)) {
                return application();
            }
            const std::size_t save = pos_;
            std::optional<Tuple> args;
            try {
                args = tuple();
            } catch (const ParseError&) {
                args.reset();
            }
            if (args && accept("/")) {
                ExprPtr table = postfix();
                return make_project(std::move(*args), std::move(table));
            }
            pos_ = save;
            expect("(");
            ExprPtr inner = expr();
            expect(")");
            return inner;
        }
        fail({"identifier", "'('", "'{'", "'top'", "'bot'", "'mu'", "'nu'"});
    }

    ExprPtr where() {
        expect("(");
        expect("?-");
        Query q{atom()};
        while (accept(",")) {
            q.push_back(atom());
        }
        if (!at_keyword("where")) {
            fail({"','", "'where'"});
        }
        ++pos_;
        ExprPtr prog = progref();
        expect(")");
        return make_where(std::move(q), std::move(prog));
    }

    ExprPtr application() {
        expect("(");
        expect_keyword("lam");
        ast::Lam lam;
        lam.param = name("relation variable");
        expect(".");
        lam.program = progref();
        expect(")");
        expect("(");
        ExprPtr arg = expr();
        expect(")");
        return make_expr(ast::App{make_expr(std::move(lam)), std::move(arg)});
    }

    ExprPtr progref() {
        if (at("{")) {
            ++pos_;
            ProgramFile f = program_body(true);
            expect("}");
            return make_expr(ast::ProgLit{std::make_shared<const Program>(std::move(f.program))});
        }
        if (at("(") && at_keyword("lam", 1)) {
            return application();
        }
        return make_var(name("program name"));
    }

    ExprPtr relation_literal() {
        expect("{");
        ast::RelLit lit;
        if (accept("}")) {
            return make_expr(std::move(lit));
        }
        bool first = true;
        do {
            const Token& start = peek();
            Tuple t = tuple();
            if (first) {
                lit.arity = t.size();
                first = false;
            } else if (t.size() != lit.arity) {
                throw ParseError(start.line, start.column, "tuple of arity " + std::to_string(t.size()),
                                 {"tuple of arity " + std::to_string(lit.arity)});
            }
            if (!is_ground(t)) {
                throw ParseError(start.line, start.column, "non-ground tuple " + to_string(t),
                                 {"ground tuple"});
            }
            lit.tuples.push_back(std::move(t));
        } while (accept(","));
        expect("}");
        return make_expr(std::move(lit));
    }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

} // namespace

Term parse_term(std::string_view src) {
    Parser p(src);
    Term t = p.term();
    p.expect_end();
    return t;
}

Tuple parse_tuple(std::string_view src) {
    Parser p(src);
    Tuple t = p.tuple();
    p.expect_end();
    return t;
}

ProgramFile parse_program(std::string_view src) {
    Parser p(src);
    return p.program_body(false);
}

ExprPtr parse_expr(std::string_view src) {
    Parser p(src);
    ExprPtr e = p.expr();
    p.expect_end();
    return e;
}

Inclusion parse_inclusion(std::string_view src) {
    Parser p(src);
    Inclusion inc = p.inclusion();
    p.expect_end();
    return inc;
}

} // namespace tra
