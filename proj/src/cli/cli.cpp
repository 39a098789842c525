#include "tra/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tra/error.hpp"
#include "tra/syntax.hpp"

namespace tra::cli {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw EvalError("load", "cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

bool is_identifier(const std::string& s) {
    return !s.empty() && (std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_') &&
           std::all_of(s.begin(), s.end(), [](char c) {
               return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
           });
}

std::string describe_limits(const EvalConfig& c) {
    return "max_depth=" + std::to_string(c.limits.max_depth) +
           " max_answers=" + std::to_string(c.limits.max_answers) +
           " fix_cap=" + std::to_string(c.fix_cap);
}

struct Flags {
    std::vector<std::string> programs;
    std::optional<std::size_t> max_depth;
    std::optional<std::size_t> max_answers;
    std::optional<std::size_t> fix_cap;
    std::optional<std::size_t> universe_depth;
    std::string mu_strategy = "auto";
};

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("-p,--program", f.programs, "Program file to load")->allow_extra_args(false);
    cmd->add_option("--max-depth", f.max_depth, "SLD depth bound")->check(CLI::PositiveNumber);
    cmd->add_option("--max-answers", f.max_answers, "Answer bound per query")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--fix-cap", f.fix_cap, "Fixpoint iteration cap")->check(CLI::PositiveNumber);
    cmd->add_option("--universe-depth", f.universe_depth, "Nesting depth of the universe");
    cmd->add_option("--mu", f.mu_strategy, "Fixpoint strategy")
        ->check(CLI::IsMember({"auto", "bottom-up", "goal-directed"}));
}

/// Loads the programs, then applies the flags so they override directives.
void prepare(Session& s, const Flags& f) {
    for (const auto& path : f.programs) {
        s.load(path);
    }
    auto& c = s.config();
    if (f.max_depth) {
        c.limits.max_depth = *f.max_depth;
    }
    if (f.max_answers) {
        c.limits.max_answers = *f.max_answers;
    }
    if (f.fix_cap) {
        c.fix_cap = *f.fix_cap;
    }
    if (f.universe_depth) {
        if (!c.universe) {
            c.universe = Universe{};
        }
        c.universe->depth_bound = *f.universe_depth;
    }
    c.mu_strategy = f.mu_strategy == "bottom-up"       ? MuStrategy::BottomUp
                    : f.mu_strategy == "goal-directed" ? MuStrategy::GoalDirected
                                                       : MuStrategy::Auto;
}

/// Runs `body`, reporting kernel errors on `err` with their exit code.
template <typename F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kParseFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
}

void set_limit(EvalConfig& c, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) {
        throw EvalError("limits", "expected key=value, got " + assignment);
    }
    const std::string key = assignment.substr(0, eq);
    std::size_t value = 0;
    try {
        value = std::stoul(assignment.substr(eq + 1));
    } catch (const std::exception&) {
        throw EvalError("limits", "not a number: " + assignment.substr(eq + 1));
    }
    if (value == 0) {
        throw EvalError("limits", key + " must be positive");
    }
    if (key == "max_depth") {
        c.limits.max_depth = value;
    } else if (key == "max_answers") {
        c.limits.max_answers = value;
    } else if (key == "fix_cap") {
        c.fix_cap = value;
    } else {
        throw EvalError("limits", "unknown limit " + key);
    }
}

void repl_line(Session& s, const std::string& line, std::ostream& out, bool& quit) {
    std::istringstream words(line);
    std::string cmd;
    words >> cmd;
    if (cmd == ":quit" || cmd == ":q") {
        quit = true;
    } else if (cmd == ":load") {
        std::string path;
        words >> path;
        if (path.empty()) {
            throw EvalError("load", "missing file name");
        }
        s.load(path);
        out << "loaded " << path << '\n';
    } else if (cmd == ":let") {
        const std::string rest = line.substr(line.find(":let") + 4);
        const auto eq = rest.find('=');
        const std::string name = trim(rest.substr(0, eq));
        if (eq == std::string::npos || !is_identifier(name)) {
            throw EvalError("let", "expected :let <ident> = <expr>");
        }
        s.let(name, rest.substr(eq + 1));
        out << name << " : " << to_string(sort_of(*s.env().find(name))) << '\n';
    } else if (cmd == ":limits") {
        std::string assignment;
        while (words >> assignment) {
            set_limit(s.config(), assignment);
        }
        out << describe_limits(s.config()) << '\n';
    } else if (cmd == ":universe") {
        out << (s.config().universe ? to_string(*s.config().universe) : std::string("<none>"))
            << '\n';
    } else if (!cmd.empty() && cmd[0] == ':') {
        throw EvalError("repl", "unknown command " + cmd);
    } else {
        out << format_value(s.evaluate(line), s.config());
    }
}

int run_repl(Session& s, std::istream& in, std::ostream& out, std::ostream& err, bool interactive) {
    std::string line;
    bool quit = false;
    while (!quit) {
        if (interactive) {
            out << "tra> " << std::flush;
        }
        if (!std::getline(in, line)) {
            break;
        }
        if (trim(line).empty() || trim(line)[0] == '%') {
            continue;
        }
        guarded(err, [&] {
            repl_line(s, trim(line), out, quit);
            return kOk;
        });
    }
    return kOk;
}

} // namespace

void Session::load(const std::string& path) {
    load_source(std::filesystem::path(path).stem().string(), read_file(path));
}

void Session::load_source(const std::string& name, const std::string& source) {
    ProgramFile file = parse_program(source);
    if (file.declares_universe() || file.depth) {
        if (!config_.universe) {
            config_.universe = Universe{};
        }
        config_.universe->constants.insert(file.universe_constants.begin(),
                                           file.universe_constants.end());
        config_.universe->functors.insert(file.universe_functors.begin(),
                                          file.universe_functors.end());
        if (file.depth) {
            config_.universe->depth_bound = *file.depth;
        }
    }
    auto module = make_module(std::move(file.program), name);
    env_ = env_.bind(name, module);
    for (const auto& [pred, arity] : module->program->defined()) {
        if (env_.find(pred) == nullptr) {
            env_ = env_.bind(pred, Relation::intensional(module, pred));
        }
    }
}

void Session::let(const std::string& name, const std::string& expr_source) {
    env_ = env_.bind(name, evaluate(expr_source));
}

Value Session::evaluate(const std::string& expr_source) const {
    return eval(*parse_expr(expr_source), env_, config_);
}

bool Session::check(const std::string& inclusion_source) const {
    const Inclusion inc = parse_inclusion(inclusion_source);
    const Value* lhs = env_.find(inc.name);
    if (lhs == nullptr) {
        throw EvalError("check", "unbound identifier " + inc.name);
    }
    const auto* rel = std::get_if<Relation>(lhs);
    if (rel == nullptr) {
        throw TypeMismatch("check", inc.name + " is a " + to_string(sort_of(*lhs)) +
                                        ", not a relation");
    }
    return check_inclusion(*rel, eval_relation(*inc.rhs, env_, config_), config_);
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err, bool interactive) {
    CLI::App app{"Table/relation algebra over logic programs", "tra"};
    app.require_subcommand(1);

    Flags eval_flags;
    std::string eval_text;
    std::string eval_file;
    bool json = false;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate an expression and print its value");
    add_common(eval_cmd, eval_flags);
    auto* text_opt = eval_cmd->add_option("-e,--expr", eval_text, "Expression text");
    eval_cmd->add_option("exprfile", eval_file, "File holding the expression")
        ->excludes(text_opt);
    eval_cmd->add_flag("--json", json, "Print JSON");

    Flags repl_flags;
    auto* repl_cmd = app.add_subcommand("repl", "Interactive session");
    add_common(repl_cmd, repl_flags);

    Flags check_flags;
    std::string inclusion;
    auto* check_cmd = app.add_subcommand("check", "Test an inclusion NAME >= EXPR");
    add_common(check_cmd, check_flags);
    check_cmd->add_option("-e,--expr", inclusion, "Inclusion text")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kParseFailure;
    }

    Session session;
    if (eval_cmd->parsed()) {
        return guarded(err, [&] {
            prepare(session, eval_flags);
            std::string source = eval_text;
            if (!eval_file.empty()) {
                source = read_file(eval_file);
            } else if (eval_cmd->count("--expr") == 0) {
                std::ostringstream ss;
                ss << in.rdbuf();
                source = ss.str();
            }
            const Value v = session.evaluate(source);
            out << (json ? value_json(v, session.config()) + "\n" : format_value(v, session.config()));
            return kOk;
        });
    }
    if (repl_cmd->parsed()) {
        return guarded(err, [&] {
            prepare(session, repl_flags);
            return run_repl(session, in, out, err, interactive);
        });
    }
    return guarded(err, [&] {
        prepare(session, check_flags);
        const bool holds = session.check(inclusion);
        out << (holds ? "holds" : "does not hold") << '\n';
        return holds ? kOk : kFailure;
    });
}

} // namespace tra::cli
