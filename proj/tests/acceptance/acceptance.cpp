// Runs every acceptance criterion and prints one PASS/FAIL line for each.
// Exits nonzero when any criterion fails.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "../support/properties.hpp"
#include "tra/cli.hpp"
#include "tra/cylinder.hpp"
#include "tra/engine.hpp"
#include "tra/eval.hpp"
#include "tra/syntax.hpp"

namespace fs = std::filesystem;
using namespace tra;

namespace {

const fs::path kTestsDir = TRA_TESTS_DIR;

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void expect(bool condition, const std::string& what) {
        if (!condition) {
            pass = false;
            notes.push_back(what);
        }
    }
    void add(const props::Report& r, std::size_t min_cases) {
        expect(r.cases >= min_cases, r.name + ": only " + std::to_string(r.cases) + " cases");
        expect(r.violations == 0, r.name + ": " + std::to_string(r.violations) + " violations");
        for (const auto& f : r.failures) {
            notes.push_back("  " + f);
        }
        // A suite whose cases are almost all empty proves little.
        expect(r.nonempty * 5 >= r.cases, r.name + ": too few nonempty cases");
        notes.push_back(r.name + ": " + std::to_string(r.cases) + " cases (" +
                        std::to_string(r.nonempty) + " nonempty), " +
                        std::to_string(r.violations) + " violations");
    }
};

Term c(const char* name) { return Term::constant(name); }

Tuple tup(std::initializer_list<const char*> names) {
    Tuple t;
    for (const char* n : names) {
        t.push_back(c(n));
    }
    return t;
}

std::set<Tuple> tuples(std::initializer_list<std::initializer_list<const char*>> rows) {
    std::set<Tuple> out;
    for (auto r : rows) {
        out.insert(tup(r));
    }
    return out;
}

std::string read(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome golden_examples() {
    Outcome o;
    const Relation r = Relation::extensional(2, tuples({{"a", "b"}, {"b", "c"}, {"c", "a"}}));
    const auto X = Term::variable("X");
    const auto Y = Term::variable("Y");
    const auto Z = Term::variable("Z");

    const Table cycle = tra::apply(r, Tuple{X, Y});
    o.expect(format_table(cycle) == "| X | Y |\n|---|---|\n| a | b |\n| b | c |\n| c | a |\n",
             "cycle table layout");
    o.expect(table_equal(cycle, Table({"X", "Y"}, {tup({"a", "b"}), tup({"b", "c"}), tup({"c", "a"})})),
             "cycle table rows");

    const Universe u = Universe::of_constants({"a", "b", "c"});
    const std::vector<std::string> xyz = {"X", "Y", "Z"};
    const Cylinder cyl_xy = to_cylinder(cycle, u, xyz);
    const Cylinder cyl_yz = to_cylinder(tra::apply(r, Tuple{Y, Z}), u, xyz);
    o.expect(cyl_xy.tuples == tuples({{"a", "b", "a"}, {"a", "b", "b"}, {"a", "b", "c"},
                                    {"b", "c", "a"}, {"b", "c", "b"}, {"b", "c", "c"},
                                    {"c", "a", "a"}, {"c", "a", "b"}, {"c", "a", "c"}}),
             "cylinder of q:(X,Y)");
    o.expect(cyl_yz.tuples == tuples({{"a", "a", "b"}, {"b", "a", "b"}, {"c", "a", "b"},
                                    {"a", "b", "c"}, {"b", "b", "c"}, {"c", "b", "c"},
                                    {"a", "c", "a"}, {"b", "c", "a"}, {"c", "c", "a"}}),
             "cylinder of q:(Y,Z)");
    const Cylinder both = cylinder_intersection(cyl_xy, cyl_yz);
    o.expect(both.tuples == tuples({{"a", "b", "c"}, {"b", "c", "a"}, {"c", "a", "b"}}),
             "cylinder intersection");
    const std::size_t outer[] = {0, 2};
    const auto composition = tuples({{"a", "c"}, {"b", "a"}, {"c", "b"}});
    o.expect(cylinder_projection(both, outer) == composition, "cylinder projection");
    o.expect(project(Tuple{X, Z}, intersect(cycle, tra::apply(r, Tuple{Y, Z}))).tuples() == composition,
             "table projection of the intersection");

    const auto chain = make_module(
        parse_program("q(a,b). q(b,c). q(c,d). q(d,e).").program, "P");
    const Table join = intersect(where({parse_term("q(X,Y)")}, *chain),
                               where({parse_term("q(Y,Z)")}, *chain));
    o.expect(format_table(join) ==
                 "| X | Y | Z |\n|---|---|---|\n| a | b | c |\n| b | c | d |\n| c | d | e |\n",
             "chain join layout");
    o.expect(table_equal(join, where({parse_term("q(X,Y)"), parse_term("q(Y,Z)")}, *chain)),
             "chain join from the joint query");

    const Relation pathological = eval_relation(*parse_expr("(c,d)/({(a,b)}:(c,d))"), Env());
    o.expect(pathological.arity() == 2 && pathological.tuples().empty(),
             "(c,d)/({(a,b)}:(c,d)) is empty");
    return o;
}

Outcome algebraic_laws() {
    Outcome o;
    o.add(props::intersection_laws(101, 600), 500);
    return o;
}

Outcome homomorphism() {
    Outcome o;
    o.add(props::cylinder_homomorphism(202, 300), 200);
    return o;
}

Outcome two_goals() {
    Outcome o;
    o.add(props::two_goals(303, 150), 100);
    return o;
}

Outcome inverses() {
    Outcome o;
    o.add(props::project_apply_inverse(404, 600), 500);
    o.add(props::apply_project_subset(405, 600), 500);
    o.add(props::apply_project_distinct(406, 600), 500);
    return o;
}

Outcome where_laws() {
    Outcome o;
    for (const auto& r : props::where_laws(505, 200)) {
        o.add(r, 100);
    }
    return o;
}

Outcome mu_round_trip() {
    Outcome o;
    const auto reports = props::mu_round_trip(606, 200);
    o.add(reports.at(0), 100);
    o.add(reports.at(1), 50);
    o.add(props::transitive_closure(607, 100), 50);
    return o;
}

Outcome qsort_orders() {
    Outcome o;
    cli::Session s;
    s.load((kTestsDir / "data" / "P.tra").string());
    s.load((kTestsDir / "data" / "Orderings.tra").string());
    std::string source = read(kTestsDir / "data" / "qsort.expr");
    auto sorted = [&](const std::string& text) {
        const Table t = std::get<Table>(s.evaluate(text));
        std::vector<std::string> out;
        for (const auto& row : t.rows()) {
            out.push_back(to_string(row[0]));
        }
        o.expect(t.heading() == std::vector<std::string>{"S"}, "heading is S");
        return out;
    };
    o.expect(sorted(source) == std::vector<std::string>{"[1,2,3]"}, "ascending sort");
    const auto at = source.find("nu leq");
    o.expect(at != std::string::npos, "query names leq");
    source.replace(at, 6, "nu geq");
    o.expect(sorted(source) == std::vector<std::string>{"[3,2,1]"}, "descending sort");
    return o;
}

struct CliCase {
    std::string name;
    std::vector<std::string> args;
    std::string input;
    int exit_code;
    std::string golden; // empty: stdout not compared
    std::string stderr_contains;
};

Outcome cli_goldens() {
    Outcome o;
    const auto previous = fs::current_path();
    fs::current_path(kTestsDir / "data");
    const std::vector<CliCase> cases = {
        {"table", {"eval", "-p", "facts.tra", "-e", "(?- q(X,Y) where facts)"}, "", 0, "eval_cycle.txt", ""},
        {"intersection", {"eval", "-p", "chain.tra", "-e", "(?- q(X,Y) where chain) /\\ (?- q(Y,Z) where chain)"}, "", 0, "eval_chain_join.txt", ""},
        {"relation", {"eval", "-p", "facts.tra", "-e", "(X,Z)/(q:(X,Y) /\\ q:(Y,Z))"}, "", 0, "eval_composition.txt", ""},
        {"json table", {"eval", "--json", "-p", "facts.tra", "-e", "(?- q(X,Y) where facts)"}, "", 0, "eval_cycle.json", ""},
        {"json relation", {"eval", "--json", "-p", "facts.tra", "-e", "(X,Z)/(q:(X,Y) /\\ q:(Y,Z))"}, "", 0, "eval_composition.json", ""},
        {"bot", {"eval", "-e", "bot"}, "", 0, "eval_bot.txt", ""},
        {"top", {"eval", "-e", "top"}, "", 0, "eval_top.txt", ""},
        {"expression file", {"eval", "-p", "P.tra", "-p", "Orderings.tra", "qsort.expr"}, "", 0, "eval_qsort.txt", ""},
        {"expression on stdin", {"eval", "-p", "facts.tra"}, "(?- q(X,Y) where facts)", 0, "eval_cycle.txt", ""},
        {"parse error", {"eval", "-e", "q : (X"}, "", 2, "", "line 1, column 7"},
        {"unbound", {"eval", "-e", "nothing"}, "", 1, "", "unbound identifier nothing"},
        {"missing file", {"eval", "-p", "absent.tra", "-e", "top"}, "", 1, "", "cannot read absent.tra"},
        {"usage", {"frobnicate"}, "", 2, "", ""},
        {"repl", {"repl", "-p", "graph.tra"}, read(kTestsDir / "golden" / "repl_input.txt"), 0, "repl_session.txt", "unbound identifier zz"},
        {"check holds", {"check", "-p", "graph.tra", "-e", "e >= {(a,b),(c,d)}"}, "", 0, "check_holds.txt", ""},
        {"check fails", {"check", "-p", "graph.tra", "-e", "e >= {(a,c)}"}, "", 1, "check_fails.txt", ""},
        {"check parse error", {"check", "-p", "graph.tra", "-e", "e >="}, "", 2, "", "parse"},
    };
    for (const auto& k : cases) {
        std::istringstream in(k.input);
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::run(k.args, in, out, err);
        o.expect(code == k.exit_code, k.name + ": exit " + std::to_string(code));
        if (!k.golden.empty()) {
            o.expect(out.str() == read(kTestsDir / "golden" / k.golden), k.name + ": output\n" + out.str());
        }
        if (!k.stderr_contains.empty()) {
            o.expect(err.str().find(k.stderr_contains) != std::string::npos, k.name + ": stderr " + err.str());
        }
    }
    fs::current_path(previous);
    return o;
}

struct Criterion {
    int id;
    std::string title;
    std::function<Outcome()> run;
    double max_seconds; // 0 means no time bound
};

} // namespace

int main(int argc, char** argv) {
    const bool verbose = argc > 1 && std::string(argv[1]) == "-v";
    const std::vector<Criterion> criteria = {
        {1, "golden examples", golden_examples, 1.0},
        {2, "intersection laws", algebraic_laws, 0},
        {3, "cylinder homomorphism", homomorphism, 10.0},
        {4, "two-goal intersection", two_goals, 0},
        {5, "projection/application inverses", inverses, 0},
        {6, "where soundness, completeness, selection rule", where_laws, 0},
        {7, "mu round trip and transitive closure", mu_round_trip, 0},
        {8, "qsort ascending and descending", qsort_orders, 1.0},
        {9, "command line goldens and exit codes", cli_goldens, 0},
    };
    int failed = 0;
    for (const auto& k : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = k.run();
        } catch (const std::exception& e) {
            o.expect(false, std::string("exception: ") + e.what());
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (k.max_seconds > 0) {
            o.expect(seconds < k.max_seconds, "took " + std::to_string(seconds) + " s");
        }
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << k.id << ". " << k.title << " ("
                  << static_cast<long>(seconds * 1000) << " ms)" << std::endl;
        if (!o.pass || verbose) {
            for (const auto& n : o.notes) {
                std::cout << "      " << n << std::endl;
            }
        }
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
