#pragma once

// Concrete syntax: terms, program files and expressions.
//
//   term     := prim { "-" prim }                      (left associative)
//   prim     := Var | int | ident [ "(" term {"," term} ")" ]
//             | "[" [ term {"," term} [ "|" term ] ] "]" | "(" term ")"
//   program  := { clause | directive }
//   clause   := atom [ ":-" atom {"," atom} ] "."
//   directive:= "#rel" name "/" int {"," name "/" int} "."
//             | "#universe" item {"," item} "."      item := constant | name "/" int
//             | "#depth" int "."
//
// `_` is an anonymous variable; each occurrence is distinct. `%` starts a
// comment running to the end of the line.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>

#include "tra/expr.hpp"
#include "tra/program.hpp"
#include "tra/terms.hpp"
#include "tra/universe.hpp"

namespace tra {

struct ProgramFile {
    Program program;
    std::set<Term> universe_constants;
    std::set<std::pair<std::string, std::size_t>> universe_functors;
    std::optional<std::size_t> depth;

    bool declares_universe() const {
        return !universe_constants.empty() || !universe_functors.empty();
    }
};

Term parse_term(std::string_view src);
Tuple parse_tuple(std::string_view src);
ProgramFile parse_program(std::string_view src);
ExprPtr parse_expr(std::string_view src);
/// `name >= expr`
Inclusion parse_inclusion(std::string_view src);

} // namespace tra
