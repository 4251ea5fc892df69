#include <gtest/gtest.h>

#include "pathcur/names.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace pathcur;

TEST(NormalizeName, StripsStatePrefix) {
    EXPECT_EQ(normalize_name("phosphorylated AKT"), "akt");
    EXPECT_EQ(normalize_name("AKT"), "akt");
}

TEST(NormalizeName, StripsRepeatedPrefixes) {
    EXPECT_EQ(normalize_name("phosphorylated phosphorylated X"), "x");
    EXPECT_EQ(normalize_name("Ubiquitinated  phosphorylated   mTOR"), "mtor");
}

TEST(NormalizeName, KeepsLastWord) {
    EXPECT_EQ(normalize_name("phosphorylated"), "phosphorylated");
    EXPECT_EQ(normalize_name("activated activated"), "activated");
}

TEST(NormalizeName, CollapsesWhitespaceAndCase) {
    EXPECT_EQ(normalize_name("  Rag\t A  "), "rag a");
    EXPECT_EQ(normalize_name(""), "");
}

TEST(NormalizeName, CustomVocabulary) {
    EXPECT_EQ(normalize_name("phosphorylated AKT", {}), "phosphorylated akt");
    EXPECT_EQ(normalize_name("mono-ubiquitinated PCNA", {"mono-ubiquitinated"}), "pcna");
}

TEST(NormalizeName, Idempotent) {
    gen::Rng rng(7);
    for (int i = 0; i < 500; ++i) {
        std::string n = gen::coin(rng, 0.5) ? gen::name_variant(rng) : gen::random_string(rng, 12, true);
        auto once = normalize_name(n);
        EXPECT_EQ(normalize_name(once), once) << n;
    }
}

TEST(Levenshtein, SpecExamples) {
    EXPECT_EQ(levenshtein_similarity("mtor", "mtor"), 100);
    EXPECT_EQ(levenshtein_similarity("akt1", "akt"), 75);
    EXPECT_EQ(levenshtein_similarity("abc", "xyz"), 0);
    EXPECT_EQ(levenshtein_similarity("", ""), 100);
    EXPECT_EQ(levenshtein_similarity("", "a"), 0);
}

TEST(Levenshtein, CountsCodePoints) {
    // one substitution in four code points, although the bytes differ by more
    EXPECT_EQ(levenshtein_similarity("αβγδ", "αβγd"), 75);
    EXPECT_EQ(levenshtein_distance(utf8_code_points("é"), utf8_code_points("e")), 1u);
}

TEST(Levenshtein, RoundsHalfUp) {
    // dist 1, max len 8 -> 87.5
    EXPECT_EQ(levenshtein_similarity("abcdefgh", "abcdefgx"), 88);
    // dist 1, max len 10 -> 90, the appeq boundary
    EXPECT_EQ(levenshtein_similarity("abcdefghij", "abcdefghix"), 90);
}

TEST(Levenshtein, MatchesFullTableOracle) {
    gen::Rng rng(11);
    for (int i = 0; i < 2000; ++i) {
        auto a = gen::random_string(rng, 14, true);
        auto b = gen::random_string(rng, 14, true);
        ASSERT_EQ(levenshtein_similarity(a, b), oracle::similarity(a, b)) << a << " | " << b;
        ASSERT_EQ(levenshtein_similarity(a, b), levenshtein_similarity(b, a));
    }
}

TEST(Levenshtein, DistanceBoundIsExact) {
    // max_distance_for is the largest distance still reaching the threshold.
    for (std::size_t len = 1; len < 60; ++len)
        for (int th : {0, 50, 89, 90, 95, 100}) {
            auto d = max_distance_for(th, len);
            EXPECT_GE(similarity_from_distance(d, len), th);
            if (d + 1 <= len) EXPECT_LT(similarity_from_distance(d + 1, len), th);
        }
}

TEST(Utf8, InvalidBytesDoNotThrow) {
    std::string bad = "a\xff\xc3";
    auto cps = utf8_code_points(bad);
    EXPECT_EQ(cps.size(), 3u);
    EXPECT_EQ(levenshtein_similarity(bad, bad), 100);
}
