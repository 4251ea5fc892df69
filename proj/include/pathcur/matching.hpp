#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "pathcur/errors.hpp"
#include "pathcur/model.hpp"
#include "pathcur/names.hpp"
#include "pathcur/ontology.hpp"

namespace pathcur {

enum class SpeciesKind { nmeq, appeq, enteq, entov };
enum class ReactionKind { sboeq, sboov, sboisa };

inline std::string_view to_string(SpeciesKind k) {
    switch (k) {
        case SpeciesKind::nmeq: return "nmeq";
        case SpeciesKind::appeq: return "appeq";
        case SpeciesKind::enteq: return "enteq";
        case SpeciesKind::entov: return "entov";
    }
    return "nmeq";
}

inline std::string_view to_string(ReactionKind k) {
    switch (k) {
        case ReactionKind::sboeq: return "sboeq";
        case ReactionKind::sboov: return "sboov";
        case ReactionKind::sboisa: return "sboisa";
    }
    return "sboeq";
}

inline constexpr int kDefaultSimilarityThreshold = 90;

// Disjunction of species kinds, optionally extended to complex constituents.
struct SpeciesMatcher {
    std::vector<SpeciesKind> kinds{SpeciesKind::nmeq};
    bool with_constituents = false;
    int similarity_threshold = kDefaultSimilarityThreshold;  // appeq: similarity >= threshold

    bool has(SpeciesKind k) const { return std::find(kinds.begin(), kinds.end(), k) != kinds.end(); }
};

struct ReactionMatcher {
    ReactionKind kind = ReactionKind::sboeq;
};

struct MatchStrategy {
    SpeciesMatcher species;
    ReactionMatcher reaction;

    // "appeq/entov/wc, sboisa"
    std::string label() const {
        std::string out;
        for (auto k : species.kinds) {
            if (!out.empty()) out += "/";
            out += to_string(k);
        }
        if (species.with_constituents) out += "/wc";
        return out + ", " + std::string(to_string(reaction.kind));
    }

    // Accepts the labels produced by label(), tolerant of spacing, with
    // "sobisa" as an alias of "sboisa".
    static MatchStrategy parse(std::string_view text) {
        auto comma = text.find(',');
        if (comma == std::string_view::npos)
            throw ConfigError("strategy '" + std::string(text) + "' needs '<species>, <reaction>'");
        auto trim = [](std::string_view s) {
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
            return s;
        };
        std::string_view species_part = trim(text.substr(0, comma));
        std::string_view reaction_part = trim(text.substr(comma + 1));
        MatchStrategy s;
        s.species.kinds.clear();
        std::size_t pos = 0;
        while (pos <= species_part.size()) {
            auto slash = species_part.find('/', pos);
            if (slash == std::string_view::npos) slash = species_part.size();
            auto tok = trim(species_part.substr(pos, slash - pos));
            pos = slash + 1;
            if (tok == "wc") {
                if (s.species.with_constituents) throw ConfigError("'wc' repeated in '" + std::string(text) + "'");
                s.species.with_constituents = true;
                continue;
            }
            SpeciesKind k;
            if (tok == "nmeq") k = SpeciesKind::nmeq;
            else if (tok == "appeq") k = SpeciesKind::appeq;
            else if (tok == "enteq") k = SpeciesKind::enteq;
            else if (tok == "entov") k = SpeciesKind::entov;
            else throw ConfigError("unknown species matcher '" + std::string(tok) + "' in '" + std::string(text) + "'");
            if (s.species.has(k)) throw ConfigError("species matcher repeated in '" + std::string(text) + "'");
            s.species.kinds.push_back(k);
        }
        if (s.species.kinds.empty()) throw ConfigError("no species matcher in '" + std::string(text) + "'");
        if (reaction_part == "sboeq") s.reaction.kind = ReactionKind::sboeq;
        else if (reaction_part == "sboov") s.reaction.kind = ReactionKind::sboov;
        else if (reaction_part == "sboisa" || reaction_part == "sobisa") s.reaction.kind = ReactionKind::sboisa;
        else throw ConfigError("unknown reaction matcher '" + std::string(reaction_part) + "'");
        return s;
    }
};

// The 24 strategies of the published results table, in its row order.
inline std::vector<MatchStrategy> enumerate_strategies(int similarity_threshold = kDefaultSimilarityThreshold) {
    using K = SpeciesKind;
    const std::vector<std::vector<K>> species_rows{{K::nmeq}, {K::appeq}, {K::appeq, K::enteq}, {K::appeq, K::entov}};
    std::vector<MatchStrategy> out;
    for (bool wc : {false, true})
        for (const auto& kinds : species_rows)
            for (auto rk : {ReactionKind::sboeq, ReactionKind::sboov, ReactionKind::sboisa}) {
                MatchStrategy s;
                s.species.kinds = kinds;
                s.species.with_constituents = wc;
                s.species.similarity_threshold = similarity_threshold;
                s.reaction.kind = rk;
                out.push_back(s);
            }
    return out;
}

// Resolves "all24" or a ';'-separated list of labels.
inline std::vector<MatchStrategy> parse_strategy_list(std::string_view text,
                                                      int similarity_threshold = kDefaultSimilarityThreshold) {
    if (text == "all24" || text == "all") return enumerate_strategies(similarity_threshold);
    std::vector<MatchStrategy> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto semi = text.find(';', pos);
        if (semi == std::string_view::npos) semi = text.size();
        auto part = text.substr(pos, semi - pos);
        pos = semi + 1;
        if (part.find_first_not_of(" \t") == std::string_view::npos) continue;
        auto s = MatchStrategy::parse(part);
        s.species.similarity_threshold = similarity_threshold;
        out.push_back(s);
    }
    if (out.empty()) throw ConfigError("empty strategy list");
    return out;
}

inline bool entrez_equal(const EntrezSignature& a, const EntrezSignature& b) { return !a.empty() && a == b; }

inline bool entrez_overlap(const EntrezSignature& a, const EntrezSignature& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia == *ib) return true;
        if (*ia < *ib) ++ia;
        else ++ib;
    }
    return false;
}

inline bool names_approx_equal(const std::string& a, const std::string& b, int threshold) {
    return a == b || levenshtein_similarity(a, b) >= threshold;
}

// One species against another without constituent expansion.
inline bool base_species_match(const Species& a, const Species& b, const SpeciesMatcher& m) {
    for (auto k : m.kinds) {
        switch (k) {
            case SpeciesKind::nmeq:
                if (a.normalized_name == b.normalized_name) return true;
                break;
            case SpeciesKind::appeq:
                if (names_approx_equal(a.normalized_name, b.normalized_name, m.similarity_threshold)) return true;
                break;
            case SpeciesKind::enteq:
                if (entrez_equal(a.entrez_signature, b.entrez_signature)) return true;
                break;
            case SpeciesKind::entov:
                if (entrez_overlap(a.entrez_signature, b.entrez_signature)) return true;
                break;
        }
    }
    return false;
}

// Species match under a matcher; with wc, also tries the direct constituents
// of either species and constituent-constituent pairs.
inline bool species_match(const Pathway& pa, const Species& a, const Pathway& pb, const Species& b,
                          const SpeciesMatcher& m) {
    if (base_species_match(a, b, m)) return true;
    if (!m.with_constituents) return false;
    std::vector<const Species*> xs{&a}, ys{&b};
    for (const auto& c : pa.constituents_of(a.id)) xs.push_back(&pa.species(c));
    for (const auto& c : pb.constituents_of(b.id)) ys.push_back(&pb.species(c));
    for (const auto* x : xs)
        for (const auto* y : ys)
            if (base_species_match(*x, *y, m)) return true;
    return false;
}

inline bool signatures_equal(const TermSignature& a, const TermSignature& b) { return a == b; }

inline bool signatures_overlap(const TermSignature& a, const TermSignature& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia == *ib) return true;
        if (*ia < *ib) ++ia;
        else ++ib;
    }
    return false;
}

inline bool signatures_is_a_related(const TermSignature& a, const TermSignature& b, const OntologyGraph& onto) {
    for (const auto& x : a)
        for (const auto& y : b)
            if (onto.related_is_a(x, y)) return true;
    return false;
}

inline bool reaction_signatures_match(const TermSignature& a, const TermSignature& b, ReactionKind k,
                                      const OntologyGraph& onto) {
    switch (k) {
        case ReactionKind::sboeq: return signatures_equal(a, b);
        case ReactionKind::sboov: return signatures_overlap(a, b);
        case ReactionKind::sboisa: return signatures_is_a_related(a, b, onto);
    }
    return false;
}

inline bool reaction_match(const Reaction& a, const Reaction& b, ReactionKind k, const OntologyGraph& onto) {
    return reaction_signatures_match(a.sbo_signature, b.sbo_signature, k, onto);
}

// Edges match when their role labels are identical (endpoints checked separately).
inline bool edge_match(Role a, Role b) { return a == b; }
inline bool edge_match(const RoleEdge& a, const RoleEdge& b) { return edge_match(a.role, b.role); }

// Partial order of the matcher lattice: true when every pair matched by
// `strict` is also matched by `loose`.
inline bool is_looser_or_equal(const MatchStrategy& strict, const MatchStrategy& loose) {
    if (strict.species.with_constituents && !loose.species.with_constituents) return false;
    if (static_cast<int>(strict.reaction.kind) > static_cast<int>(loose.reaction.kind)) return false;
    if (strict.species.similarity_threshold < loose.species.similarity_threshold &&
        loose.species.has(SpeciesKind::appeq))
        return false;
    for (auto k : strict.species.kinds) {
        bool covered = loose.species.has(k) || (k == SpeciesKind::nmeq && loose.species.has(SpeciesKind::appeq)) ||
                       (k == SpeciesKind::enteq && loose.species.has(SpeciesKind::entov));
        if (!covered) return false;
    }
    return true;
}

}  // namespace pathcur
