#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "tra/cli.hpp"
#include "tra/error.hpp"

using namespace tra;

namespace {

const std::filesystem::path kData = std::filesystem::path(TRA_TESTS_DIR) / "data";

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = {}, bool interactive = false) {
    std::istringstream in(input);
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, in, out, err, interactive);
    return {code, out.str(), err.str()};
}

std::string data(const char* name) { return (kData / name).string(); }

} // namespace

TEST(Session, LoadBindsProgramAndPredicates) {
    cli::Session s;
    s.load(data("facts.tra"));
    EXPECT_NE(s.env().find("facts"), nullptr);
    EXPECT_NE(s.env().find("q"), nullptr);
    EXPECT_EQ(format_value(s.evaluate("q")), "{(a,b),(b,c),(c,a)}\n");
    EXPECT_TRUE(s.check("q >= {(a,b)}"));
    EXPECT_FALSE(s.check("q >= {(a,c)}"));
}

TEST(Session, LetAndUniverse) {
    cli::Session s;
    s.load(data("graph.tra"));
    ASSERT_TRUE(s.config().universe.has_value());
    EXPECT_EQ(s.config().universe->constants.size(), 4u);
    s.let("r", "(X,Z)/(e:(X,Y) /\\ e:(Y,Z))");
    EXPECT_EQ(format_value(s.evaluate("r")), "{(a,c),(b,d)}\n");
    EXPECT_THROW(s.evaluate("zz"), EvalError);
}

TEST(Session, MissingFile) {
    cli::Session s;
    EXPECT_THROW(s.load(data("missing.tra")), std::exception);
}

TEST(Cli, EvalFlags) {
    const auto r = run({"eval", "-p", data("facts.tra"), "--json", "-e", "(a,)/top"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "{\"arity\":1,\"tuples\":[[\"a\"]]}\n");
    const auto stdin_expr = run({"eval", "-p", data("facts.tra")}, "q : (a, Y)\n");
    EXPECT_EQ(stdin_expr.code, 0) << stdin_expr.err;
    EXPECT_EQ(stdin_expr.out, "| Y |\n|---|\n| b |\n");
}

TEST(Cli, SearchLimitsApply) {
    const std::string src = "mu n . n >= {(z,)} \\/ (s(X),)/n:(X,)";
    const auto capped = run({"eval", "--mu", "bottom-up", "--fix-cap", "5", "-e", src});
    EXPECT_EQ(capped.code, 1);
    EXPECT_NE(capped.err.find("error: "), std::string::npos);
    const auto bad = run({"eval", "--mu", "sideways", "-e", "top"});
    EXPECT_EQ(bad.code, 2);
}

TEST(Cli, HelpExitsCleanly) {
    EXPECT_EQ(run({"--help"}).code, 0);
    EXPECT_EQ(run({}).code, 2);
}

TEST(Repl, CommandsAndErrors) {
    const auto r = run({"repl"}, ":let r = {(a,b)}\n:nope\n% comment\n\nr : (X, Y)\n:universe\n");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "r : relation\n| X | Y |\n|---|---|\n| a | b |\n<none>\n");
    EXPECT_NE(r.err.find(":nope"), std::string::npos);
}

TEST(Repl, PromptOnlyWhenInteractive) {
    EXPECT_EQ(run({"repl"}, "top\n", true).out, "tra> <unit>\ntra> ");
    EXPECT_EQ(run({"repl"}, "top\n").out, "<unit>\n");
}

TEST(Repl, LimitsCanBeChanged) {
    const auto r = run({"repl"}, ":limits max_answers=7 fix_cap=3\n:limits bogus=1\n");
    EXPECT_EQ(r.out, "max_depth=64 max_answers=7 fix_cap=3\n");
    EXPECT_FALSE(r.err.empty());
}
