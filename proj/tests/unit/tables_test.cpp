#include <gtest/gtest.h>

#include <json.hpp>

#include "oracle.hpp"
#include "properties.hpp"
#include "tra/cylinder.hpp"
#include "tra/syntax.hpp"
#include "tra/table.hpp"

using namespace tra;

namespace {

Term T(const char* src) { return parse_term(src); }

Row row(std::initializer_list<const char*> terms) {
    Row r;
    for (const char* t : terms) {
        r.push_back(T(t));
    }
    return r;
}

} // namespace

TEST(Table, TopIsTheEmptySubstitution) {
    const Table top = Table::top();
    EXPECT_TRUE(top.heading().empty());
    EXPECT_EQ(top.size(), 1u);
    EXPECT_TRUE(top.is_top());
    EXPECT_EQ(format_table(top), "<unit>\n");
}

TEST(Table, AllEmptyTablesAreEqual) {
    EXPECT_TRUE(table_equal(Table::bottom(), Table({"X", "Y"}, {})));
    EXPECT_TRUE(table_equal(Table({"Z"}, {}), Table::bottom()));
    EXPECT_EQ(format_table(Table({"X"}, {})), "<empty>\n");
    EXPECT_FALSE(table_equal(Table::bottom(), Table::top()));
}

TEST(Table, RejectsMalformedInput) {
    EXPECT_THROW(Table({"X", "X"}, {}), std::invalid_argument);
    EXPECT_THROW(Table({"X"}, {row({"a", "b"})}), std::invalid_argument);
    EXPECT_THROW(Table({"_R1"}, {}), std::invalid_argument);
}

TEST(Table, LocalVariablesAreCanonical) {
    const Table t({"X"}, {row({"f(Z)"})});
    EXPECT_EQ(to_string(*t.rows().begin()), "(f(_R1))");
    EXPECT_TRUE(table_equal(t, Table({"X"}, {row({"f(W)"})})));
    EXPECT_TRUE(table_equal(Table({"X"}, {row({"a"})}), Table({"X"}, {row({"a"})})));
    EXPECT_FALSE(table_equal(Table({"X"}, {row({"a"})}), Table({"Y"}, {row({"a"})})));
    // Rows that are renamings of each other collapse.
    EXPECT_EQ(Table({"X"}, {row({"f(U)"}), row({"f(V)"})}).size(), 1u);
    // Sharing is preserved by canonicalization.
    EXPECT_FALSE(table_equal(Table({"X", "Y"}, {row({"U", "U"})}), Table({"X", "Y"}, {row({"U", "V"})})));
}

TEST(Table, EqualityIgnoresColumnOrder) {
    const Table a({"X", "Y"}, {row({"a", "b"}), row({"c", "d"})});
    const Table b({"Y", "X"}, {row({"b", "a"}), row({"d", "c"})});
    EXPECT_TRUE(table_equal(a, b));
}

TEST(Intersect, TableFromTheChainExample) {
    const Table s({"X", "Y"}, {row({"a", "b"}), row({"b", "c"}), row({"c", "d"}), row({"d", "e"})});
    const Table t({"Y", "Z"}, {row({"a", "b"}), row({"b", "c"}), row({"c", "d"}), row({"d", "e"})});
    const Table st = intersect(s, t);
    EXPECT_EQ(st.heading(), (std::vector<std::string>{"X", "Y", "Z"}));
    EXPECT_TRUE(table_equal(st, Table({"X", "Y", "Z"}, {row({"a", "b", "c"}), row({"b", "c", "d"}),
                                                         row({"c", "d", "e"})})));
}

TEST(Intersect, BindsLocalVariables) {
    const Table s({"X"}, {row({"f(Y)"})});
    const Table t({"X"}, {row({"f(a)"})});
    EXPECT_TRUE(table_equal(intersect(s, t), Table({"X"}, {row({"f(a)"})})));
}

TEST(Intersect, RenamesRowsApart) {
    // U in each table is a different, unrelated variable.
    const Table s({"X"}, {row({"g(U,b)"})});
    const Table t({"X"}, {row({"g(a,U)"})});
    EXPECT_TRUE(table_equal(intersect(s, t), Table({"X"}, {row({"g(a,b)"})})));
    const Table u({"Y"}, {row({"U"})});
    const Table su = intersect(s, u);
    EXPECT_TRUE(table_equal(su, Table({"X", "Y"}, {row({"g(U,b)", "V"})})));
}

TEST(Intersect, OccursCheckDropsRows) {
    const Table s({"X", "Y"}, {row({"f(U)", "U"})});
    const Table t({"X", "Y"}, {row({"V", "V"})});
    EXPECT_TRUE(intersect(s, t).empty());
}

TEST(Intersect, UnitAndNull) {
    const Table s({"X"}, {row({"a"}), row({"f(U)"})});
    EXPECT_TRUE(table_equal(intersect(s, Table::top()), s));
    EXPECT_TRUE(table_equal(intersect(Table::bottom(), s), Table::bottom()));
}

TEST(Format, ColumnsArePadded) {
    const Table t({"X", "Long"}, {row({"[1,2,3]", "a"}), row({"b", "U"})});
    EXPECT_EQ(format_table(t), "| X       | Long |\n"
                               "|---------|------|\n"
                               "| [1,2,3] | a    |\n"
                               "| b       | _R1  |\n");
}

TEST(Format, Json) {
    const Table t({"X", "Y"}, {row({"a", "f(b)"})});
    const auto j = nlohmann::json::parse(table_json(t));
    EXPECT_EQ(j["heading"], nlohmann::json({"X", "Y"}));
    EXPECT_EQ(j["rows"], nlohmann::json::parse(R"j([["a","f(b)"]])j"));
    EXPECT_EQ(table_json(Table::top()), R"({"heading":[],"rows":[[]]})");
}

TEST(Cylinder, SelectorAndTuples) {
    const Table t({"Y", "Z"}, {row({"a", "b"})});
    const Universe u = Universe::of_constants({"a", "b"});
    const std::vector<std::string> enumeration = {"X", "Y", "Z"};
    const Cylinder c = to_cylinder(t, u, enumeration);
    EXPECT_EQ(c.selector, (std::vector<std::size_t>{1, 2}));
    EXPECT_EQ(c.width, 3u);
    EXPECT_EQ(c.tuples, (std::set<Tuple>{row({"a", "a", "b"}), row({"b", "a", "b"})}));
    EXPECT_TRUE(to_cylinder(Table::bottom(), u, enumeration).tuples.empty());
    EXPECT_EQ(to_cylinder(Table::top(), u, enumeration).tuples.size(), 8u);
}

TEST(Cylinder, LocalVariablesRangeOverTheDomain) {
    const Table t({"X", "Y"}, {row({"U", "U"})});
    const Universe u = Universe::of_constants({"a", "b", "c"});
    const std::vector<std::string> enumeration = {"X", "Y"};
    EXPECT_EQ(to_cylinder(t, u, enumeration).tuples,
              (std::set<Tuple>{row({"a", "a"}), row({"b", "b"}), row({"c", "c"})}));
    EXPECT_EQ(to_cylinder(t, u, enumeration).tuples,
              oracle::cylinder(t, u.ground_terms(), enumeration));
}

TEST(Cylinder, EnumerationMustCoverTheHeading) {
    const Table t({"X"}, {row({"a"})});
    const std::vector<std::string> enumeration = {"Y"};
    EXPECT_THROW(to_cylinder(t, Universe::of_constants({"a"}), enumeration), std::invalid_argument);
}

TEST(Cylinder, Projection) {
    Cylinder c;
    c.width = 3;
    c.selector = {0, 1, 2};
    c.tuples = {row({"a", "b", "c"}), row({"b", "c", "a"})};
    const std::size_t outer[] = {0, 2};
    EXPECT_EQ(cylinder_projection(c, outer), (std::set<Tuple>{row({"a", "c"}), row({"b", "a"})}));
}

TEST(Properties, IntersectionLaws) {
    const auto report = props::intersection_laws(31, 150);
    EXPECT_TRUE(report.ok()) << report.violations << " violations";
}

TEST(Properties, CylinderHomomorphism) {
    const auto report = props::cylinder_homomorphism(32, 60);
    EXPECT_TRUE(report.ok()) << report.violations << " violations";
}
