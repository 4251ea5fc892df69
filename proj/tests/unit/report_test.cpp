#include <gtest/gtest.h>

#include "pathcur/report.hpp"
#include "support/generators.hpp"

using namespace pathcur;

TEST(Report, FixedOneDecimal) {
    EXPECT_EQ(fixed1(100), "100.0");
    EXPECT_EQ(fixed1(66.666), "66.7");
    EXPECT_EQ(fixed1(0), "0.0");
    EXPECT_EQ(fixed1(-0.01), "0.0");
}

TEST(Report, CsvQuoting) {
    EXPECT_EQ(csv_field("plain"), "plain");
    EXPECT_EQ(csv_field("nmeq, sboeq"), "\"nmeq, sboeq\"");
    EXPECT_EQ(csv_field("a\"b"), "\"a\"\"b\"");
}

TEST(Report, ScoreCsvHasHeaderAndOneRowPerStrategy) {
    MatchReport r;
    r.strategy = "nmeq, sboeq";
    r.species = {1, 2, 1, 2};
    auto csv = scores_to_csv({score(r)});
    EXPECT_EQ(csv,
              "strategy,species_precision,species_recall,species_f,reaction_precision,reaction_recall,reaction_f,"
              "edge_precision,edge_recall,edge_f,macro_f\n"
              "\"nmeq, sboeq\",50.0,50.0,50.0,100.0,100.0,100.0,100.0,100.0,100.0,83.3\n");
}

TEST(Report, JsonCarriesCountsAndScores) {
    MatchReport r;
    r.strategy = "appeq, sboov";
    r.extracted_name = "e";
    r.target_name = "t";
    r.species = {1, 3, 2, 4};
    auto j = nlohmann::json::parse(reports_to_json({r}));
    ASSERT_EQ(j.size(), 1u);
    EXPECT_EQ(j[0]["strategy"], "appeq, sboov");
    EXPECT_EQ(j[0]["counts"]["species"]["total_target"], 4);
    EXPECT_DOUBLE_EQ(j[0]["scores"]["species"]["precision"].get<double>(), 33.3);
    EXPECT_DOUBLE_EQ(j[0]["scores"]["species"]["recall"].get<double>(), 50.0);
}

TEST(Report, StatsRow) {
    Pathway p("x");
    p.add_species({"a", "a", {}, {}, {}, {}});
    EXPECT_EQ(stats_csv_row("x", stats(p)), "x,1,0,0,0,0,0,0,1,1,0\n");
}

TEST(Report, GridSections) {
    gen::Rng rng(5);
    auto onto = gen::shipped_ontology();
    auto terms = gen::term_pool(onto);
    auto t = gen::random_pathway(rng, {}, terms, "t");
    auto a = gen::random_pathway(rng, {}, terms, "a");
    auto b = t;
    b.set_source_name("b");
    auto g = grid({&a, &b}, t, enumerate_strategies(), onto);
    auto csv = grid_to_csv(g);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 49);
    auto hist = histogram_to_csv(g);
    EXPECT_NE(hist.find("b,24\n"), std::string::npos);
    auto j = nlohmann::json::parse(grid_to_json(g));
    EXPECT_EQ(j["cells"].size(), 48u);
    EXPECT_EQ(j["histogram"]["b"], 24);
    EXPECT_EQ(j["best"]["nmeq, sboeq"][0], "b");
}
