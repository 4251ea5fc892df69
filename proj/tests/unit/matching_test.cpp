#include <gtest/gtest.h>

#include "pathcur/matching.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace pathcur;

namespace {

SpeciesMatcher matcher(std::vector<SpeciesKind> kinds, bool wc = false) {
    SpeciesMatcher m;
    m.kinds = std::move(kinds);
    m.with_constituents = wc;
    return m;
}

Species sp(std::string id, std::string name, EntrezSignature sig = {}) {
    Species s;
    s.id = std::move(id);
    s.name = std::move(name);
    s.normalized_name = normalize_name(s.name);
    s.entrez_signature = std::move(sig);
    return s;
}

}  // namespace

TEST(Strategies, TwentyFourInTableOrder) {
    const std::vector<std::string> expected{
        "nmeq, sboeq",          "nmeq, sboov",          "nmeq, sboisa",          "appeq, sboeq",
        "appeq, sboov",         "appeq, sboisa",        "appeq/enteq, sboeq",    "appeq/enteq, sboov",
        "appeq/enteq, sboisa",  "appeq/entov, sboeq",   "appeq/entov, sboov",    "appeq/entov, sboisa",
        "nmeq/wc, sboeq",       "nmeq/wc, sboov",       "nmeq/wc, sboisa",       "appeq/wc, sboeq",
        "appeq/wc, sboov",      "appeq/wc, sboisa",     "appeq/enteq/wc, sboeq", "appeq/enteq/wc, sboov",
        "appeq/enteq/wc, sboisa", "appeq/entov/wc, sboeq", "appeq/entov/wc, sboov", "appeq/entov/wc, sboisa"};
    std::vector<std::string> labels;
    for (const auto& s : enumerate_strategies()) labels.push_back(s.label());
    EXPECT_EQ(labels, expected);
}

TEST(Strategies, ParseRoundtripAndAlias) {
    for (const auto& s : enumerate_strategies()) EXPECT_EQ(MatchStrategy::parse(s.label()).label(), s.label());
    EXPECT_EQ(MatchStrategy::parse("appeq/entov/wc,sobisa").label(), "appeq/entov/wc, sboisa");
    EXPECT_THROW(MatchStrategy::parse("nmeq"), ConfigError);
    EXPECT_THROW(MatchStrategy::parse("foo, sboeq"), ConfigError);
    EXPECT_THROW(MatchStrategy::parse("nmeq, sboxx"), ConfigError);
    EXPECT_THROW(MatchStrategy::parse("nmeq/nmeq, sboeq"), ConfigError);
    EXPECT_EQ(parse_strategy_list("all24").size(), 24u);
    EXPECT_EQ(parse_strategy_list("nmeq, sboeq; appeq/wc, sboov").size(), 2u);
    EXPECT_THROW(parse_strategy_list(" ; "), ConfigError);
}

TEST(SpeciesMatch, PrefixRemovalMakesNamesEqual) {
    Pathway p;
    auto a = sp("a", "AKT"), b = sp("b", "phosphorylated AKT");
    EXPECT_TRUE(species_match(p, a, p, b, matcher({SpeciesKind::nmeq})));
}

TEST(SpeciesMatch, EntrezSemantics) {
    Pathway p;
    auto a = sp("a", "x", {1, 2}), b = sp("b", "y", {2, 3});
    EXPECT_FALSE(species_match(p, a, p, b, matcher({SpeciesKind::enteq})));
    EXPECT_TRUE(species_match(p, a, p, b, matcher({SpeciesKind::entov})));
    auto e1 = sp("e1", "p"), e2 = sp("e2", "q");
    EXPECT_FALSE(species_match(p, e1, p, e2, matcher({SpeciesKind::enteq})));
    EXPECT_FALSE(species_match(p, e1, p, e2, matcher({SpeciesKind::entov})));
}

TEST(SpeciesMatch, ApproximateNames) {
    Pathway p;
    EXPECT_FALSE(species_match(p, sp("a", "akt"), p, sp("b", "akt1"), matcher({SpeciesKind::appeq})));
    EXPECT_TRUE(species_match(p, sp("a", "insulin receptor"), p, sp("b", "insulin receptors"),
                              matcher({SpeciesKind::appeq})));
}

TEST(SpeciesMatch, Constituents) {
    Pathway p;
    p.add_species({"A", "A", {}, {}, {}, {}});
    p.add_species({"B", "B", {}, {}, {}, {}});
    p.add_species({"C", "C", {}, {}, {"A", "B"}, {}});
    EXPECT_TRUE(species_match(p, p.species("C"), p, p.species("A"), matcher({SpeciesKind::nmeq}, true)));
    EXPECT_FALSE(species_match(p, p.species("C"), p, p.species("A"), matcher({SpeciesKind::nmeq})));
}

TEST(ReactionMatch, Kinds) {
    auto onto = gen::shipped_ontology();
    const std::string phos = "SBO:0000216", conv = "SBO:0000182";
    EXPECT_TRUE(reaction_signatures_match({phos}, {conv}, ReactionKind::sboisa, onto));
    EXPECT_FALSE(reaction_signatures_match({phos}, {conv}, ReactionKind::sboov, onto));
    for (auto k : {ReactionKind::sboeq, ReactionKind::sboov, ReactionKind::sboisa})
        EXPECT_TRUE(reaction_signatures_match({"X"}, {"X"}, k, onto));
    EXPECT_FALSE(reaction_signatures_match({"X", "Y"}, {"Y", "Z"}, ReactionKind::sboeq, onto));
    EXPECT_TRUE(reaction_signatures_match({"X", "Y"}, {"Y", "Z"}, ReactionKind::sboov, onto));
}

TEST(EdgeMatch, Roles) {
    EXPECT_TRUE(edge_match(Role::reactant, Role::reactant));
    EXPECT_FALSE(edge_match(Role::reactant, Role::modifier));
    EXPECT_TRUE(edge_match(Role::modifier, Role::modifier));
}

TEST(Matchers, SymmetricMonotoneAndOracleEqual) {
    gen::Rng rng(41);
    auto onto = gen::shipped_ontology();
    auto terms = gen::term_pool(onto);
    auto strategies = enumerate_strategies();
    for (int round = 0; round < 20; ++round) {
        auto p = gen::random_pathway(rng, {}, terms, "a");
        auto q = gen::random_pathway(rng, {}, terms, "b");
        for (const auto& a : p.species())
            for (const auto& b : q.species())
                for (const auto& s : strategies) {
                    bool m = species_match(p, a, q, b, s.species);
                    ASSERT_EQ(m, species_match(q, b, p, a, s.species));
                    ASSERT_EQ(m, oracle::species(p, a, q, b, s.species)) << s.label() << " " << a.name << " " << b.name;
                    for (const auto& looser : strategies)
                        if (m && is_looser_or_equal(s, looser)) ASSERT_TRUE(species_match(p, a, q, b, looser.species));
                }
        for (const auto& a : p.reactions())
            for (const auto& b : q.reactions()) {
                bool eq = reaction_match(a, b, ReactionKind::sboeq, onto);
                bool ov = reaction_match(a, b, ReactionKind::sboov, onto);
                bool isa = reaction_match(a, b, ReactionKind::sboisa, onto);
                EXPECT_TRUE(!eq || ov);
                EXPECT_TRUE(!ov || isa);
                EXPECT_EQ(isa, reaction_match(b, a, ReactionKind::sboisa, onto));
                EXPECT_EQ(isa, oracle::signatures(a.sbo_signature, b.sbo_signature, ReactionKind::sboisa, onto));
            }
    }
}

TEST(Matchers, AppeqCoversNmeq) {
    gen::Rng rng(43);
    Pathway p;
    for (int i = 0; i < 300; ++i) {
        auto n = gen::name_variant(rng);
        auto a = sp("a", n), b = sp("b", n);
        EXPECT_TRUE(species_match(p, a, p, b, matcher({SpeciesKind::appeq})));
    }
}

TEST(Lattice, PartialOrder) {
    auto all = enumerate_strategies();
    auto find = [&](const std::string& label) { return MatchStrategy::parse(label); };
    EXPECT_TRUE(is_looser_or_equal(find("nmeq, sboeq"), find("appeq/entov/wc, sboisa")));
    EXPECT_TRUE(is_looser_or_equal(find("appeq/enteq, sboov"), find("appeq/entov, sboov")));
    EXPECT_FALSE(is_looser_or_equal(find("appeq/wc, sboeq"), find("appeq, sboeq")));
    EXPECT_FALSE(is_looser_or_equal(find("nmeq, sboisa"), find("nmeq, sboov")));
    for (const auto& s : all) EXPECT_TRUE(is_looser_or_equal(s, s));
}
