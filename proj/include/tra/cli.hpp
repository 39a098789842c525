#pragma once

// The `tra` command line: eval, repl and check subcommands.

#include <iosfwd>
#include <string>
#include <vector>

#include "tra/eval.hpp"

namespace tra::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kParseFailure = 2 };

/// Bindings and configuration shared by the subcommands and the REPL.
class Session {
public:
    /// Parses a program file and binds it under its file stem. Each predicate
    /// it defines is also bound as a relation unless the name is taken.
    /// A `#universe` directive extends the session universe.
    void load(const std::string& path);
    void load_source(const std::string& name, const std::string& source);

    void let(const std::string& name, const std::string& expr_source);
    Value evaluate(const std::string& expr_source) const;
    /// Evaluates `name >= expr` against the current bindings.
    bool check(const std::string& inclusion_source) const;

    const Env& env() const noexcept { return env_; }
    EvalConfig& config() noexcept { return config_; }
    const EvalConfig& config() const noexcept { return config_; }

private:
    Env env_;
    EvalConfig config_;
};

/// Runs the tool with `args` (excluding the program name). Never throws.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err, bool interactive = false);

} // namespace tra::cli
