#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <map>
#include <memory>
#include <string>
#include <thread>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "pathcur/errors.hpp"
#include "pathcur/matching.hpp"
#include "pathcur/model.hpp"
#include "pathcur/names.hpp"
#include "pathcur/ontology.hpp"

namespace pathcur {

class UnannotatedReactionError : public DataError {
public:
    explicit UnannotatedReactionError(const std::string& msg) : DataError(msg) {}
};

struct ClassCounts {
    std::size_t matched_extracted = 0;
    std::size_t total_extracted = 0;
    std::size_t matched_target = 0;
    std::size_t total_target = 0;

    friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

struct MatchReport {
    std::string strategy;
    std::string extracted_name;
    std::string target_name;
    ClassCounts species;
    ClassCounts reactions;
    ClassCounts edges;
};

struct ClassScore {
    double precision = 0;  // 0..100
    double recall = 0;
    double f = 0;
};

struct ScoreReport {
    std::string strategy;
    ClassScore species;
    ClassScore reactions;
    ClassScore edges;
    double macro_f = 0;
};

inline double ratio_percent(std::size_t matched, std::size_t total, std::size_t other_total) {
    if (total == 0) return other_total == 0 ? 100.0 : 0.0;
    return 100.0 * static_cast<double>(matched) / static_cast<double>(total);
}

inline ClassScore score_class(const ClassCounts& c) {
    ClassScore s;
    s.precision = ratio_percent(c.matched_extracted, c.total_extracted, c.total_target);
    s.recall = ratio_percent(c.matched_target, c.total_target, c.total_extracted);
    s.f = s.precision + s.recall > 0 ? 2 * s.precision * s.recall / (s.precision + s.recall) : 0.0;
    return s;
}

// Micro P/R/F per element class and their unweighted mean as the total F.
inline ScoreReport score(const MatchReport& r) {
    ScoreReport s;
    s.strategy = r.strategy;
    s.species = score_class(r.species);
    s.reactions = score_class(r.reactions);
    s.edges = score_class(r.edges);
    s.macro_f = (s.species.f + s.reactions.f + s.edges.f) / 3.0;
    return s;
}

// Scores are published with one decimal.
inline double round1(double v) { return std::round(v * 10.0) / 10.0; }

namespace detail {

using Index = std::uint32_t;

// Integer-indexed view of a pathway used by the overlap search.
struct CompiledPathway {
    struct Incidence {
        Index other;  // reaction index for species, species index for reactions
        Role role;
    };

    const Pathway* source = nullptr;
    std::vector<std::vector<Incidence>> species_edges;
    std::vector<std::vector<Incidence>> reaction_edges;  // sorted by (role, species)
    std::vector<std::vector<Index>> constituents;
    std::vector<std::vector<Index>> containing_complexes;
    std::vector<Index> reaction_signature;  // into signatures
    std::vector<TermSignature> signatures;

    explicit CompiledPathway(const Pathway& p) : source(&p) {
        const auto& sp = p.species();
        const auto& rx = p.reactions();
        species_edges.resize(sp.size());
        reaction_edges.resize(rx.size());
        constituents.resize(sp.size());
        containing_complexes.resize(sp.size());
        for (const auto& e : p.edges()) {
            auto si = static_cast<Index>(p.species_pos(e.species_id));
            auto ri = static_cast<Index>(p.reaction_pos(e.reaction_id));
            species_edges[si].push_back({ri, e.role});
            reaction_edges[ri].push_back({si, e.role});
        }
        for (auto& list : reaction_edges)
            std::sort(list.begin(), list.end(), [](const Incidence& a, const Incidence& b) {
                return std::tie(a.role, a.other) < std::tie(b.role, b.other);
            });
        for (std::size_t i = 0; i < sp.size(); ++i)
            for (const auto& c : p.constituents_of(sp[i].id)) {
                auto ci = static_cast<Index>(p.species_pos(c));
                constituents[i].push_back(ci);
                containing_complexes[ci].push_back(static_cast<Index>(i));
            }
        std::map<TermSignature, Index> interned;
        for (const auto& r : rx) {
            if (r.sbo_signature.empty())
                throw UnannotatedReactionError("reaction '" + r.id + "' in '" + p.source_name() +
                                               "' has an empty SBO/GO signature");
            auto [it, fresh] = interned.emplace(r.sbo_signature, static_cast<Index>(signatures.size()));
            if (fresh) signatures.push_back(r.sbo_signature);
            reaction_signature.push_back(it->second);
        }
    }
};

using Relation = std::vector<std::vector<Index>>;  // per left element, sorted right indices

inline void sort_unique(std::vector<Index>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

inline Relation transpose(const Relation& r, std::size_t right_size) {
    Relation out(right_size);
    for (std::size_t a = 0; a < r.size(); ++a)
        for (Index b : r[a]) out[b].push_back(static_cast<Index>(a));
    return out;  // rows are already ascending
}

// Species relation left -> right under a matcher, built from hash buckets
// (names, signatures, Entrez ids) and length-banded edit distance.
inline Relation species_relation(const CompiledPathway& left, const CompiledPathway& right, const SpeciesMatcher& m) {
    const auto& ls = left.source->species();
    const auto& rs = right.source->species();

    std::unordered_map<std::string, std::vector<Index>> by_name;
    std::map<EntrezSignature, std::vector<Index>> by_signature;
    std::unordered_map<EntrezId, std::vector<Index>> by_entrez;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        by_name[rs[i].normalized_name].push_back(static_cast<Index>(i));
        if (!rs[i].entrez_signature.empty()) by_signature[rs[i].entrez_signature].push_back(static_cast<Index>(i));
        for (auto e : rs[i].entrez_signature) by_entrez[e].push_back(static_cast<Index>(i));
    }

    // Distinct right-hand names bucketed by code point length, for appeq.
    struct NameEntry {
        std::u32string cps;
        const std::vector<Index>* members;
    };
    std::map<std::size_t, std::vector<NameEntry>> names_by_length;
    if (m.has(SpeciesKind::appeq))
        for (const auto& [name, members] : by_name) {
            auto cps = utf8_code_points(name);
            names_by_length[cps.size()].push_back({std::move(cps), &members});
        }

    std::unordered_map<std::string, std::vector<Index>> approx_cache;
    auto approx = [&](const std::string& name) -> const std::vector<Index>& {
        auto it = approx_cache.find(name);
        if (it != approx_cache.end()) return it->second;
        std::vector<Index> out;
        auto cps = utf8_code_points(name);
        const std::size_t n = cps.size();
        for (auto& [len, entries] : names_by_length) {
            std::size_t max_len = std::max(n, len);
            std::size_t diff = n > len ? n - len : len - n;
            if (diff > max_distance_for(m.similarity_threshold, max_len)) continue;
            for (const auto& e : entries) {
                if (e.cps == cps ||
                    similarity_from_distance(levenshtein_distance(cps, e.cps), max_len) >= m.similarity_threshold)
                    out.insert(out.end(), e.members->begin(), e.members->end());
            }
        }
        sort_unique(out);
        return approx_cache.emplace(name, std::move(out)).first->second;
    };

    auto base = [&](std::size_t i) {
        std::vector<Index> out;
        const auto& s = ls[i];
        for (auto k : m.kinds) {
            switch (k) {
                case SpeciesKind::nmeq:
                    if (auto it = by_name.find(s.normalized_name); it != by_name.end())
                        out.insert(out.end(), it->second.begin(), it->second.end());
                    break;
                case SpeciesKind::appeq: {
                    const auto& hits = approx(s.normalized_name);
                    out.insert(out.end(), hits.begin(), hits.end());
                    break;
                }
                case SpeciesKind::enteq:
                    if (s.entrez_signature.empty()) break;
                    if (auto it = by_signature.find(s.entrez_signature); it != by_signature.end())
                        out.insert(out.end(), it->second.begin(), it->second.end());
                    break;
                case SpeciesKind::entov:
                    for (auto e : s.entrez_signature)
                        if (auto it = by_entrez.find(e); it != by_entrez.end())
                            out.insert(out.end(), it->second.begin(), it->second.end());
                    break;
            }
        }
        sort_unique(out);
        return out;
    };

    Relation base_rel(ls.size());
    for (std::size_t i = 0; i < ls.size(); ++i) base_rel[i] = base(i);
    if (!m.with_constituents) return base_rel;

    Relation out(ls.size());
    for (std::size_t i = 0; i < ls.size(); ++i) {
        std::vector<Index> acc;
        auto add_from = [&](Index x) {
            for (Index b : base_rel[x]) {
                acc.push_back(b);
                const auto& parents = right.containing_complexes[b];
                acc.insert(acc.end(), parents.begin(), parents.end());
            }
        };
        add_from(static_cast<Index>(i));
        for (Index c : left.constituents[i]) add_from(c);
        sort_unique(acc);
        out[i] = std::move(acc);
    }
    return out;
}

inline bool contains(const std::vector<Index>& sorted, Index x) {
    return std::binary_search(sorted.begin(), sorted.end(), x);
}

// Matching of signatures: rows = left signatures, cols = right signatures.
struct SignatureMatrix {
    std::size_t cols = 0;
    std::vector<std::uint8_t> cells;
    bool at(Index l, Index r) const { return cells[l * cols + r] != 0; }
};

inline SignatureMatrix signature_matrix(const CompiledPathway& left, const CompiledPathway& right, ReactionKind kind,
                                        const OntologyGraph& onto) {
    SignatureMatrix m;
    m.cols = right.signatures.size();
    m.cells.resize(left.signatures.size() * m.cols);
    for (std::size_t i = 0; i < left.signatures.size(); ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            m.cells[i * m.cols + j] = reaction_signatures_match(left.signatures[i], right.signatures[j], kind, onto);
    return m;
}

inline SignatureMatrix transpose(const SignatureMatrix& m, std::size_t rows) {
    SignatureMatrix t;
    t.cols = rows;
    t.cells.resize(rows * m.cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) t.cells[j * rows + i] = m.cells[i * m.cols + j];
    return t;
}

// Number of left reactions whose subgraph (reaction plus incident edges) is
// covered by some right reaction with a matching signature.
inline std::size_t count_reaction_matches(const CompiledPathway& left, const CompiledPathway& right,
                                          const Relation& rel, const SignatureMatrix& sig) {
    std::vector<std::uint8_t> any_right(left.signatures.size(), 0);
    for (std::size_t i = 0; i < left.signatures.size(); ++i)
        for (std::size_t j = 0; j < sig.cols && !any_right[i]; ++j) any_right[i] = sig.at(static_cast<Index>(i), static_cast<Index>(j));

    auto covers = [&](Index r, Index q) {
        const auto& qe = right.reaction_edges[q];
        for (const auto& e : left.reaction_edges[r]) {
            const auto& targets = rel[e.other];
            bool found = false;
            for (const auto& f : qe)
                if (f.role == e.role && contains(targets, f.other)) {
                    found = true;
                    break;
                }
            if (!found) return false;
        }
        return true;
    };

    std::size_t matched = 0;
    std::vector<Index> seen;
    for (std::size_t r = 0; r < left.reaction_edges.size(); ++r) {
        const Index rsig = left.reaction_signature[r];
        const auto& edges = left.reaction_edges[r];
        if (edges.empty()) {
            matched += any_right[rsig];
            continue;
        }
        if (!any_right[rsig]) continue;
        // Candidates: right reactions touching a match of the first endpoint with the same role.
        const auto& first = edges.front();
        seen.clear();
        bool ok = false;
        for (Index t : rel[first.other]) {
            for (const auto& inc : right.species_edges[t]) {
                if (inc.role != first.role) continue;
                Index q = inc.other;
                if (!sig.at(rsig, right.reaction_signature[q])) continue;
                if (std::find(seen.begin(), seen.end(), q) != seen.end()) continue;
                seen.push_back(q);
                if (covers(static_cast<Index>(r), q)) {
                    ok = true;
                    break;
                }
            }
            if (ok) break;
        }
        matched += ok;
    }
    return matched;
}

// Number of left edges with a right edge of identical role whose species
// and reaction endpoints both match.
inline std::size_t count_edge_matches(const CompiledPathway& left, const CompiledPathway& right, const Relation& rel,
                                      const SignatureMatrix& sig) {
    std::size_t matched = 0;
    for (std::size_t s = 0; s < left.species_edges.size(); ++s) {
        for (const auto& e : left.species_edges[s]) {
            const Index rsig = left.reaction_signature[e.other];
            bool ok = false;
            for (Index t : rel[s]) {
                for (const auto& f : right.species_edges[t])
                    if (f.role == e.role && sig.at(rsig, right.reaction_signature[f.other])) {
                        ok = true;
                        break;
                    }
                if (ok) break;
            }
            matched += ok;
        }
    }
    return matched;
}

inline std::string species_matcher_key(const SpeciesMatcher& m) {
    std::string key;
    for (auto k : m.kinds) key += std::string(to_string(k)) + "/";
    key += m.with_constituents ? "wc" : "-";
    return key + "@" + std::to_string(m.similarity_threshold);
}

}  // namespace detail

// Overlap of one extracted/target pair under many strategies. Species
// relations and signature tables are cached per matcher, so running all 24
// strategies costs 8 species searches rather than 24.
class OverlapEngine {
public:
    OverlapEngine(const Pathway& extracted, const Pathway& target, const OntologyGraph& ontology)
        : extracted_(extracted), target_(target), ontology_(&ontology) {}

    MatchReport run(const MatchStrategy& strategy) {
        MatchReport rep;
        rep.strategy = strategy.label();
        rep.extracted_name = extracted_.source->source_name();
        rep.target_name = target_.source->source_name();

        const auto& [fwd, back] = species_relations(strategy.species);
        const auto& [sig_fwd, sig_back] = signature_matrices(strategy.reaction.kind);

        auto count_nonempty = [](const detail::Relation& r) {
            return static_cast<std::size_t>(std::count_if(r.begin(), r.end(), [](const auto& v) { return !v.empty(); }));
        };
        rep.species = {count_nonempty(fwd), fwd.size(), count_nonempty(back), back.size()};
        rep.reactions = {detail::count_reaction_matches(extracted_, target_, fwd, sig_fwd),
                         extracted_.reaction_edges.size(),
                         detail::count_reaction_matches(target_, extracted_, back, sig_back),
                         target_.reaction_edges.size()};
        rep.edges = {detail::count_edge_matches(extracted_, target_, fwd, sig_fwd), extracted_.source->edges().size(),
                     detail::count_edge_matches(target_, extracted_, back, sig_back), target_.source->edges().size()};
        return rep;
    }

private:
    using RelationPair = std::pair<detail::Relation, detail::Relation>;
    using MatrixPair = std::pair<detail::SignatureMatrix, detail::SignatureMatrix>;

    const RelationPair& species_relations(const SpeciesMatcher& m) {
        auto key = detail::species_matcher_key(m);
        auto it = relations_.find(key);
        if (it != relations_.end()) return it->second;
        auto fwd = detail::species_relation(extracted_, target_, m);
        auto back = detail::transpose(fwd, target_.species_edges.size());
        return relations_.emplace(key, RelationPair{std::move(fwd), std::move(back)}).first->second;
    }

    const MatrixPair& signature_matrices(ReactionKind k) {
        auto it = matrices_.find(k);
        if (it != matrices_.end()) return it->second;
        auto fwd = detail::signature_matrix(extracted_, target_, k, *ontology_);
        auto back = detail::transpose(fwd, extracted_.signatures.size());
        return matrices_.emplace(k, MatrixPair{std::move(fwd), std::move(back)}).first->second;
    }

    detail::CompiledPathway extracted_;
    detail::CompiledPathway target_;
    const OntologyGraph* ontology_;
    std::map<std::string, RelationPair> relations_;
    std::map<ReactionKind, MatrixPair> matrices_;
};

inline MatchReport overlap(const Pathway& extracted, const Pathway& target, const MatchStrategy& strategy,
                           const OntologyGraph& ontology) {
    return OverlapEngine(extracted, target, ontology).run(strategy);
}

struct PathwayStats {
    std::size_t species = 0;
    std::size_t reactions = 0;
    std::size_t compartments = 0;
    std::size_t edges = 0;
    std::size_t reactant_edges = 0;
    std::size_t product_edges = 0;
    std::size_t modifier_edges = 0;
    std::size_t isolated_species = 0;
    std::size_t components = 0;              // over all species and reaction nodes
    std::size_t nonsingleton_components = 0;  // components with at least one edge

    friend bool operator==(const PathwayStats&, const PathwayStats&) = default;
};

// Element counts plus connected components of the species-reaction incidence graph.
inline PathwayStats stats(const Pathway& p) {
    PathwayStats st;
    st.species = p.species().size();
    st.reactions = p.reactions().size();
    st.compartments = p.compartments().size();
    st.edges = p.edges().size();
    for (const auto& e : p.edges()) {
        if (e.role == Role::reactant) ++st.reactant_edges;
        else if (e.role == Role::product) ++st.product_edges;
        else ++st.modifier_edges;
    }
    for (std::size_t i = 0; i < st.species; ++i)
        if (p.edges_of_species(i).empty()) ++st.isolated_species;

    // BFS over nodes 0..S-1 (species) and S..S+R-1 (reactions).
    const std::size_t n = st.species + st.reactions;
    std::vector<std::uint8_t> visited(n, 0);
    std::vector<std::size_t> queue;
    for (std::size_t start = 0; start < n; ++start) {
        if (visited[start]) continue;
        ++st.components;
        std::size_t size = 0;
        queue.assign(1, start);
        visited[start] = 1;
        while (!queue.empty()) {
            std::size_t node = queue.back();
            queue.pop_back();
            ++size;
            const bool is_species = node < st.species;
            const auto& incident = is_species ? p.edges_of_species(node) : p.edges_of_reaction(node - st.species);
            for (std::size_t e : incident) {
                const auto& edge = p.edges()[e];
                std::size_t other = is_species ? st.species + p.reaction_pos(edge.reaction_id)
                                               : p.species_pos(edge.species_id);
                if (!visited[other]) {
                    visited[other] = 1;
                    queue.push_back(other);
                }
            }
        }
        if (size > 1) ++st.nonsingleton_components;
    }
    return st;
}

struct GridCell {
    MatchReport report;
    ScoreReport score;
};

struct GridResult {
    std::vector<std::string> pathways;
    std::vector<std::string> strategies;
    std::vector<std::vector<GridCell>> cells;       // [pathway][strategy]
    std::vector<std::vector<std::size_t>> best;     // per strategy: argmax pathways (ties included)
    std::map<std::string, std::size_t> histogram;   // pathway -> number of strategies it is best for
};

// Scores every (extracted pathway, strategy) cell against one target. The
// best pathway per strategy is chosen on macro F at published precision (one
// decimal); every tied pathway is counted.
inline GridResult grid(const std::vector<const Pathway*>& extracted, const Pathway& target,
                       const std::vector<MatchStrategy>& strategies, const OntologyGraph& ontology,
                       unsigned threads = 1) {
    if (extracted.empty()) throw ConfigError("grid needs at least one extracted pathway");
    GridResult g;
    for (const auto* p : extracted) g.pathways.push_back(p->source_name());
    for (const auto& s : strategies) g.strategies.push_back(s.label());
    g.cells.assign(extracted.size(), std::vector<GridCell>(strategies.size()));

    std::vector<std::exception_ptr> failures(extracted.size());
    auto work = [&](std::size_t i) {
        try {
            OverlapEngine engine(*extracted[i], target, ontology);
            for (std::size_t s = 0; s < strategies.size(); ++s) {
                auto rep = engine.run(strategies[s]);
                g.cells[i][s] = {rep, score(rep)};
            }
        } catch (...) {
            failures[i] = std::current_exception();
        }
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(extracted.size())));
    if (threads == 1) {
        for (std::size_t i = 0; i < extracted.size(); ++i) work(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < extracted.size(); i = next++) work(i);
            });
    }
    for (auto& f : failures)
        if (f) std::rethrow_exception(f);

    for (const auto& name : g.pathways) g.histogram[name] += 0;
    g.best.resize(strategies.size());
    for (std::size_t s = 0; s < strategies.size(); ++s) {
        double top = -1;
        for (std::size_t i = 0; i < extracted.size(); ++i) top = std::max(top, round1(g.cells[i][s].score.macro_f));
        for (std::size_t i = 0; i < extracted.size(); ++i)
            if (round1(g.cells[i][s].score.macro_f) == top) {
                g.best[s].push_back(i);
                ++g.histogram[g.pathways[i]];
            }
    }
    return g;
}

}  // namespace pathcur
