#include <gtest/gtest.h>

#include "pathcur/ontology.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace pathcur;

TEST(Obo, TwoTerms) {
    auto g = load_obo("format-version: 1.2\n\n[Term]\nid: A\nname: a\n\n[Term]\nid: B\nis_a: A ! a\n");
    EXPECT_EQ(g.size(), 2u);
    EXPECT_EQ(g.edge_count(), 1u);
}

TEST(Obo, CycleRejected) {
    EXPECT_THROW(load_obo("[Term]\nid: SBO:0000001\nis_a: SBO:0000002\n\n[Term]\nid: SBO:0000002\nis_a: SBO:0000001\n"),
                 ParseError);
}

TEST(Obo, MalformedLineCarriesLineNumber) {
    try {
        load_obo("[Term]\nid: A\nthis line has no tag\n", nullptr, "bad.obo");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_EQ(e.source(), "bad.obo");
    }
}

TEST(Obo, ObsoleteAndOtherStanzas) {
    Diagnostics diag;
    auto g = load_obo(
        "[Term]\nid: SBO:0000001\n\n[Term]\nid: SBO:0000002\nis_a: SBO:0000001\nis_a: SBO:0000009\n\n"
        "[Term]\nid: SBO:0000003\nis_obsolete: true\n\n[Typedef]\nid: part_of\n",
        &diag);
    EXPECT_EQ(g.size(), 2u);
    EXPECT_FALSE(g.contains("SBO:0000003"));
    EXPECT_EQ(g.edge_count(), 1u);  // dangling is_a dropped
    EXPECT_FALSE(diag.empty());
}

TEST(Obo, QualifiersAndComments) {
    auto g = load_obo("[Term]\nid: SBO:0000001\n\n[Term]\nid: SBO:0000002\nis_a: SBO:0000001 {source=x} ! parent\n");
    EXPECT_TRUE(g.is_ancestor("SBO:0000001", "SBO:0000002"));
}

class ShippedSubset : public ::testing::Test {
protected:
    OntologyGraph g = gen::shipped_ontology();

    std::string id_named(const std::string& name) const {
        for (const auto& t : g.terms())
            if (t.name == name) return t.id;
        return {};
    }
};

TEST_F(ShippedSubset, PhosphorylationIsAConversion) {
    auto phos = id_named("phosphorylation");
    auto conv = id_named("conversion");
    ASSERT_FALSE(phos.empty());
    ASSERT_FALSE(conv.empty());
    EXPECT_TRUE(oracle::reaches(g, phos, conv));
    EXPECT_TRUE(g.is_ancestor(conv, phos));
    EXPECT_TRUE(g.related_is_a(phos, conv));
    EXPECT_TRUE(g.related_is_a(conv, phos));
}

TEST_F(ShippedSubset, SiblingsUnrelated) {
    EXPECT_FALSE(g.related_is_a(id_named("phosphorylation"), id_named("ubiquitination")));
    EXPECT_FALSE(g.related_is_a(id_named("inhibition"), id_named("stimulation")));
    EXPECT_TRUE(g.related_is_a(id_named("catalysis"), id_named("control")));
}

TEST_F(ShippedSubset, GoTermsOnlyRelateToThemselves) {
    EXPECT_TRUE(g.related_is_a("GO:0010467", "GO:0010467"));
    EXPECT_FALSE(g.related_is_a("GO:0010467", "SBO:0000183"));
}

TEST(RelatedIsA, UnknownTermsAreReflexiveOnly) {
    OntologyGraph g;
    EXPECT_TRUE(g.related_is_a("SBO:9999999", "SBO:9999999"));
    EXPECT_FALSE(g.related_is_a("SBO:9999999", "SBO:9999998"));
}

TEST(RelatedIsA, DisjointRoots) {
    auto g = OntologyGraph::from_terms({{"SBO:0000001", "r1", {}},
                                        {"SBO:0000002", "r2", {}},
                                        {"SBO:0000003", "leaf1", {"SBO:0000001"}},
                                        {"SBO:0000004", "leaf2", {"SBO:0000002"}}});
    EXPECT_FALSE(g.related_is_a("SBO:0000003", "SBO:0000004"));
    EXPECT_EQ(g.related_is_a("SBO:0000003", "SBO:0000004"), oracle::related(g, "SBO:0000003", "SBO:0000004"));
}

TEST(RelatedIsA, MatchesPathSearchOnRandomDags) {
    gen::Rng rng(13);
    for (int round = 0; round < 20; ++round) {
        auto g = gen::random_dag(rng, 40, 0.08);
        auto ids = gen::term_pool(g);
        for (const auto& x : ids)
            for (const auto& y : ids) {
                ASSERT_EQ(g.related_is_a(x, y), oracle::related(g, x, y)) << x << " " << y;
                ASSERT_EQ(g.related_is_a(x, y), g.related_is_a(y, x));
            }
        for (const auto& x : ids) ASSERT_TRUE(g.related_is_a(x, x));
    }
}

TEST(RelatedIsA, ClosureAcrossWordBoundary) {
    // chains longer than 64 terms cross bitset words
    std::vector<OntologyTerm> terms;
    for (int i = 0; i < 150; ++i) {
        char id[16];
        std::snprintf(id, sizeof id, "SBO:%07d", i);
        terms.push_back({id, "", {}});
        if (i > 0) terms.back().parents.push_back(terms[i - 1].id);
    }
    auto g = OntologyGraph::from_terms(terms);
    EXPECT_TRUE(g.is_ancestor("SBO:0000000", "SBO:0000149"));
    EXPECT_FALSE(g.is_ancestor("SBO:0000149", "SBO:0000000"));
}
