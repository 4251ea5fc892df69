#include <gtest/gtest.h>

#include "pathcur/pipeline.hpp"
#include "pathcur/standoff.hpp"

using namespace pathcur;

namespace {

const std::string kText = "mTOR phosphorylates AKT and induces S6K1.";

std::string fixture(const std::string& name) {
    return read_text_file(std::string(PATHCUR_FIXTURE_DIR) + "/standoff/" + name);
}

}  // namespace

TEST(Standoff, EntityLine) {
    auto doc = parse_standoff(kText, "T1\tProtein 0 4\tmTOR\n", "");
    ASSERT_EQ(doc.entities.size(), 1u);
    EXPECT_EQ(doc.entities[0].type, "Protein");
    EXPECT_EQ(doc.entities[0].start(), 0u);
    EXPECT_EQ(doc.entities[0].end(), 4u);
    EXPECT_TRUE(doc.entities[0].from_a1);
}

TEST(Standoff, EventLine) {
    auto doc = parse_standoff(kText, "T1\tProtein 20 23\tAKT\n",
                              "T2\tPhosphorylation 5 19\tphosphorylates\nE1\tPhosphorylation:T2 Theme:T1\n");
    ASSERT_EQ(doc.events.size(), 1u);
    const auto& e = doc.events[0];
    EXPECT_EQ(e.type, "Phosphorylation");
    EXPECT_EQ(e.trigger, "T2");
    ASSERT_EQ(e.args.size(), 1u);
    EXPECT_EQ(e.args[0].role, "Theme");
    EXPECT_EQ(e.args[0].target, "T1");
}

TEST(Standoff, NestedEventResolvesToEvent) {
    auto doc = parse_standoff(kText, "T1\tProtein 20 23\tAKT\nT4\tProtein 0 4\tmTOR\n",
                              "T2\tPhosphorylation 5 19\tphosphorylates\n"
                              "T3\tPositive_regulation 28 35\tinduces\n"
                              "E1\tPhosphorylation:T2 Theme:T1\n"
                              "E2\tPositive_regulation:T3 Theme:E1 Cause:T4\n");
    const auto* e2 = doc.event("E2");
    ASSERT_NE(e2, nullptr);
    auto themes = e2->targets("Theme");
    ASSERT_EQ(themes.size(), 1u);
    EXPECT_NE(doc.event(themes[0]), nullptr);
    EXPECT_EQ(doc.event(themes[0])->type, "Phosphorylation");
    EXPECT_NE(doc.entity(e2->targets("Cause")[0]), nullptr);
}

TEST(Standoff, NumberedRolesNormalized) {
    auto doc = parse_standoff("A binds B", "T1\tProtein 0 1\tA\nT2\tProtein 8 9\tB\n",
                              "T3\tBinding 2 7\tbinds\nE1\tBinding:T3 Theme:T1 Theme2:T2\n");
    ASSERT_EQ(doc.events[0].targets("Theme").size(), 2u);
    EXPECT_EQ(doc.events[0].args[1].raw_role, "Theme2");
}

TEST(Standoff, CodePointOffsets) {
    auto doc = parse_standoff("β-catenin binds", "T1\tProtein 0 9\tβ-catenin\n", "");
    EXPECT_EQ(doc.entities[0].surface, "β-catenin");
}

TEST(Standoff, Errors) {
    EXPECT_THROW(parse_standoff(kText, "T1\tProtein 0 4\tAKT\n", ""), ParseError);    // surface mismatch
    EXPECT_THROW(parse_standoff(kText, "T1\tProtein 0 99\tmTOR\n", ""), ParseError);  // out of range
    EXPECT_THROW(parse_standoff(kText, "T1\tProtein 0 4\tmTOR\nT1\tProtein 0 4\tmTOR\n", ""), ParseError);
    EXPECT_THROW(parse_standoff(kText, "", "E1\tPhosphorylation:T9 Theme:T1\n"), ParseError);
    EXPECT_THROW(parse_standoff(kText, "T1\tProtein 0 4\tmTOR\n", "T2\tRegulation 5 19\tphosphorylates\n"
                                "E1\tRegulation:T2 Theme:E2\nE2\tRegulation:T2 Theme:E1\n"),
                 ParseError);
    try {
        parse_standoff(kText, "T1\tProtein 0 4\tmTOR\nT2 broken\n", "", "doc");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_EQ(e.source(), "doc.a1");
    }
}

TEST(Standoff, ModifiersAndEquivs) {
    auto doc = parse_standoff(kText, "T1\tProtein 0 4\tmTOR\nT2\tProtein 36 40\tS6K1\n*\tEquiv T1 T2\n",
                              "T3\tPhosphorylation 5 19\tphosphorylates\nE1\tPhosphorylation:T3 Theme:T2\n"
                              "M1\tNegation E1\nA2\tSpeculation E1\n");
    ASSERT_EQ(doc.modifiers.size(), 2u);
    EXPECT_EQ(doc.modifiers[0].kind, ModifierKind::negation);
    ASSERT_EQ(doc.equivs.size(), 1u);
    EXPECT_EQ(doc.equivs[0].size(), 2u);
}

TEST(Standoff, ReserializationReproducesLines) {
    for (const auto* base : {"PMID-1001", "PMID-1002"}) {
        auto a1 = fixture(std::string(base) + ".a1");
        auto a2 = fixture(std::string(base) + ".a2");
        auto doc = parse_standoff(fixture(std::string(base) + ".txt"), a1, a2, base);
        EXPECT_EQ(write_standoff_file(doc, true), a1);
        EXPECT_EQ(write_standoff_file(doc, false), a2);
    }
}

TEST(Standoff, SpaceSeparatedInputNormalizesToTabs) {
    auto doc = parse_standoff(kText, "T1 Protein 0 4 mTOR\n", "");
    EXPECT_EQ(write_standoff_file(doc, true), "T1\tProtein 0 4\tmTOR\n");
}

TEST(Census, Counts) {
    EXPECT_TRUE(event_type_census({}).empty());
    std::string a1 = "T1\tProtein 0 4\tmTOR\n";
    std::string a2 = "T2\tPhosphorylation 5 19\tphosphorylates\n";
    for (int i = 1; i <= 3; ++i) a2 += "E" + std::to_string(i) + "\tPhosphorylation:T2 Theme:T1\n";
    a2 += "E4\tBinding:T2 Theme:T1\n";
    auto census = event_type_census({parse_standoff(kText, a1, a2)});
    EXPECT_EQ(census, (std::map<std::string, std::size_t>{{"Binding", 1}, {"Phosphorylation", 3}}));
}

TEST(Census, FixtureCorpus) {
    auto docs = load_standoff_dir(std::string(PATHCUR_FIXTURE_DIR) + "/standoff", nullptr);
    auto census = event_type_census(docs);
    EXPECT_EQ(census.at("Phosphorylation"), 1u);
    EXPECT_EQ(census.at("Negative_regulation"), 1u);
    EXPECT_EQ(census.size(), 6u);
}
