#include <gtest/gtest.h>

#include <algorithm>

#include "pathcur/model.hpp"
#include "support/generators.hpp"

using namespace pathcur;

namespace {

Species named(std::string id, std::string name) {
    Species s;
    s.id = std::move(id);
    s.name = std::move(name);
    return s;
}

}  // namespace

TEST(Pathway, SingleSpecies) {
    Pathway p;
    p.add_species(named("s1", "mTOR"));
    EXPECT_EQ(p.species().size(), 1u);
    EXPECT_EQ(p.reactions().size(), 0u);
    EXPECT_EQ(p.species("s1").normalized_name, "mtor");
}

TEST(Pathway, DuplicateIdsRejected) {
    Pathway p;
    p.add_species(named("s1", "a"));
    EXPECT_THROW(p.add_species(named("s1", "b")), DuplicateIdError);
    p.add_reaction({"r1", {"SBO:0000216"}, {}});
    EXPECT_THROW(p.add_reaction({"r1", {}, {}}), DuplicateIdError);
    p.add_compartment({"c1", "cytosol"});
    EXPECT_THROW(p.add_compartment({"c1", "nucleus"}), DuplicateIdError);
}

TEST(Pathway, ManySpecies) {
    Pathway p;
    for (int i = 0; i < 2242; ++i) p.add_species(named("s" + std::to_string(i), "n" + std::to_string(i)));
    std::size_t expected = 0;
    for (int i = 0; i < 2242; ++i) ++expected;
    EXPECT_EQ(p.species().size(), expected);
}

TEST(Pathway, ReferentialIntegrity) {
    Pathway p;
    p.add_species(named("s1", "a"));
    p.add_reaction({"r1", {}, {}});
    EXPECT_THROW(p.add_edge("nope", "r1", Role::reactant), UnknownIdError);
    EXPECT_THROW(p.add_edge("s1", "nope", Role::reactant), UnknownIdError);
    Species c = named("c", "complex");
    c.constituents = {"missing"};
    EXPECT_THROW(p.add_species(c), UnknownIdError);
    Species loc = named("s2", "b");
    loc.compartment = "nowhere";
    EXPECT_THROW(p.add_species(loc), UnknownIdError);
    EXPECT_EQ(p.species().size(), 1u);
}

TEST(Pathway, DuplicateEdgeIgnored) {
    Pathway p;
    p.add_species(named("s1", "a"));
    p.add_reaction({"r1", {}, {}});
    EXPECT_TRUE(p.add_edge("s1", "r1", Role::reactant));
    EXPECT_FALSE(p.add_edge("s1", "r1", Role::reactant));
    EXPECT_TRUE(p.add_edge("s1", "r1", Role::modifier));
    EXPECT_EQ(p.edges().size(), 2u);
}

TEST(Pathway, ConstituentCyclesRejected) {
    Pathway p;
    p.add_species(named("a", "A"));
    p.add_species(named("b", "B"));
    p.set_constituents("a", {"b"});
    EXPECT_THROW(p.set_constituents("b", {"a"}), DataError);
    EXPECT_THROW(p.set_constituents("a", {"a"}), DataError);
    EXPECT_EQ(p.constituents_of("a"), std::vector<std::string>{"b"});
}

TEST(Neighbors, OrderedByRoleThenId) {
    Pathway p;
    for (auto id : {"S1", "S2", "S3"}) p.add_species(named(id, id));
    p.add_reaction({"R1", {}, {}});
    p.add_edge("S2", "R1", Role::product);
    p.add_edge("S1", "R1", Role::reactant);
    auto n = p.neighbors("R1");
    ASSERT_EQ(n.size(), 2u);
    EXPECT_EQ(n[0], (Neighbor{"S1", Role::reactant}));
    EXPECT_EQ(n[1], (Neighbor{"S2", Role::product}));
}

TEST(Neighbors, IsolatedReaction) {
    Pathway p;
    p.add_reaction({"R1", {}, {}});
    EXPECT_TRUE(p.neighbors("R1").empty());
    EXPECT_THROW(p.neighbors("R2"), UnknownIdError);
}

TEST(Neighbors, ThreeModifiersInIdOrder) {
    Pathway p;
    for (auto id : {"m3", "m1", "m2"}) p.add_species(named(id, id));
    p.add_reaction({"R1", {}, {}});
    for (auto id : {"m3", "m1", "m2"}) p.add_edge(id, "R1", Role::modifier);
    std::vector<Neighbor> direct;
    for (const auto& e : p.edges()) direct.push_back({e.species_id, e.role});
    std::sort(direct.begin(), direct.end(), [](auto& a, auto& b) { return a.species_id < b.species_id; });
    EXPECT_EQ(p.neighbors("R1"), direct);
}

TEST(Neighbors, EdgeMultisetRecoverable) {
    gen::Rng rng(3);
    auto onto = gen::shipped_ontology();
    auto terms = gen::term_pool(onto);
    for (int i = 0; i < 50; ++i) {
        auto p = gen::random_pathway(rng, {}, terms);
        std::vector<RoleEdge> rebuilt;
        for (const auto& r : p.reactions())
            for (const auto& n : p.neighbors(r.id)) rebuilt.push_back({n.species_id, r.id, n.role});
        auto original = p.edges();
        std::sort(original.begin(), original.end());
        std::sort(rebuilt.begin(), rebuilt.end());
        EXPECT_EQ(original, rebuilt);
    }
}

TEST(Pathway, RandomBuildSequencesKeepIntegrity) {
    gen::Rng rng(5);
    for (int round = 0; round < 100; ++round) {
        Pathway p;
        std::vector<std::string> species, reactions;
        for (int op = 0; op < 60; ++op) {
            auto id = std::to_string(gen::pick(rng, 0, 20));
            try {
                switch (gen::pick(rng, 0, 3)) {
                    case 0: {
                        Species s = named("s" + id, "n" + id);
                        if (!species.empty() && gen::coin(rng, 0.3))
                            s.constituents.push_back(species[gen::pick(rng, 0, species.size() - 1)]);
                        p.add_species(s);
                        species.push_back(s.id);
                        break;
                    }
                    case 1:
                        p.add_reaction({"r" + id, {}, {}});
                        reactions.push_back("r" + id);
                        break;
                    default:
                        p.add_edge("s" + id, "r" + std::to_string(gen::pick(rng, 0, 20)),
                                   static_cast<Role>(gen::pick(rng, 0, 2)));
                }
            } catch (const DataError&) {
            }
        }
        for (const auto& e : p.edges()) {
            EXPECT_NE(p.find_species(e.species_id), nullptr);
            EXPECT_NE(p.find_reaction(e.reaction_id), nullptr);
        }
        for (const auto& s : p.species())
            for (const auto& c : s.constituents) EXPECT_NE(p.find_species(c), nullptr);
    }
}

TEST(Role, Names) {
    EXPECT_EQ(to_string(Role::modifier), "modifier");
    EXPECT_EQ(parse_role("product"), Role::product);
    EXPECT_FALSE(parse_role("catalyst").has_value());
}
