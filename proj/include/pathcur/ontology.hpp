#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pathcur/errors.hpp"

namespace pathcur {

struct OntologyTerm {
    std::string id;
    std::string name;
    std::vector<std::string> parents;  // is_a targets
};

// is_a hierarchy loaded from an OBO 1.2 flat file. Ancestor closure is
// precomputed as one bitset per SBO term; GO (and any other prefix) terms
// relate only through identity.
class OntologyGraph {
public:
    OntologyGraph() = default;

    std::size_t size() const noexcept { return terms_.size(); }
    const std::vector<OntologyTerm>& terms() const noexcept { return terms_; }

    bool contains(std::string_view id) const { return index_.contains(std::string(id)); }

    const OntologyTerm* find(std::string_view id) const {
        auto it = index_.find(std::string(id));
        return it == index_.end() ? nullptr : &terms_[it->second];
    }

    std::size_t edge_count() const {
        std::size_t n = 0;
        for (const auto& t : terms_) n += t.parents.size();
        return n;
    }

    // True when `ancestor` is reachable from `term` over one or more is_a edges.
    bool is_ancestor(std::string_view ancestor, std::string_view term) const {
        auto a = sbo_slot(ancestor);
        auto t = sbo_slot(term);
        if (a < 0 || t < 0) return false;
        const auto& bits = closure_[static_cast<std::size_t>(t)];
        return (bits[static_cast<std::size_t>(a) / 64] >> (static_cast<std::size_t>(a) % 64)) & 1u;
    }

    // Reflexive-symmetric closure of ancestry. Unknown terms only relate to themselves.
    bool related_is_a(std::string_view x, std::string_view y) const {
        if (x == y) return true;
        return is_ancestor(x, y) || is_ancestor(y, x);
    }

    // Builds the graph from parsed terms; validates endpoints and acyclicity.
    static OntologyGraph from_terms(std::vector<OntologyTerm> terms, Diagnostics* diag = nullptr,
                                    const std::string& source = {}) {
        OntologyGraph g;
        for (auto& t : terms) {
            if (g.index_.contains(t.id)) throw ParseError(source, 0, "duplicate term '" + t.id + "'");
            g.index_.emplace(t.id, g.terms_.size());
            g.terms_.push_back(std::move(t));
        }
        for (auto& t : g.terms_) {
            std::vector<std::string> kept;
            for (auto& p : t.parents) {
                if (!g.index_.contains(p)) {
                    warn(diag, source + ": is_a target '" + p + "' of '" + t.id + "' is not a declared term; edge dropped");
                    continue;
                }
                if (std::find(kept.begin(), kept.end(), p) == kept.end()) kept.push_back(p);
            }
            t.parents = std::move(kept);
        }
        g.check_acyclic(source);
        g.build_closure();
        return g;
    }

private:
    static bool is_sbo(std::string_view id) { return id.starts_with("SBO:"); }

    long sbo_slot(std::string_view id) const {
        auto it = sbo_slot_.find(std::string(id));
        return it == sbo_slot_.end() ? -1 : static_cast<long>(it->second);
    }

    void check_acyclic(const std::string& source) const {
        enum : std::uint8_t { white, grey, black };
        std::vector<std::uint8_t> color(terms_.size(), white);
        for (std::size_t root = 0; root < terms_.size(); ++root) {
            if (color[root] != white) continue;
            // iterative DFS: (node, next parent index)
            std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
            color[root] = grey;
            while (!stack.empty()) {
                auto& [node, next] = stack.back();
                const auto& parents = terms_[node].parents;
                if (next == parents.size()) {
                    color[node] = black;
                    stack.pop_back();
                    continue;
                }
                std::size_t p = index_.at(parents[next++]);
                if (color[p] == grey)
                    throw ParseError(source, 0, "is_a cycle through '" + terms_[p].id + "'");
                if (color[p] == white) {
                    color[p] = grey;
                    stack.emplace_back(p, 0);
                }
            }
        }
    }

    void build_closure() {
        std::vector<std::size_t> sbo_terms;
        for (std::size_t i = 0; i < terms_.size(); ++i)
            if (is_sbo(terms_[i].id)) {
                sbo_slot_.emplace(terms_[i].id, sbo_terms.size());
                sbo_terms.push_back(i);
            }
        const std::size_t words = (sbo_terms.size() + 63) / 64;
        closure_.assign(sbo_terms.size(), std::vector<std::uint64_t>(words, 0));
        std::vector<bool> done(sbo_terms.size(), false);

        // Post-order over parents so each closure is the union of its parents' closures.
        for (std::size_t start = 0; start < sbo_terms.size(); ++start) {
            if (done[start]) continue;
            std::vector<std::pair<std::size_t, bool>> stack{{start, false}};
            while (!stack.empty()) {
                auto [slot, expanded] = stack.back();
                stack.pop_back();
                if (done[slot]) continue;
                const auto& term = terms_[sbo_terms[slot]];
                if (!expanded) {
                    stack.emplace_back(slot, true);
                    for (const auto& p : term.parents) {
                        auto ps = sbo_slot(p);
                        if (ps >= 0 && !done[static_cast<std::size_t>(ps)]) stack.emplace_back(static_cast<std::size_t>(ps), false);
                    }
                    continue;
                }
                auto& bits = closure_[slot];
                for (const auto& p : term.parents) {
                    auto ps = sbo_slot(p);
                    if (ps < 0) continue;
                    auto pu = static_cast<std::size_t>(ps);
                    bits[pu / 64] |= std::uint64_t{1} << (pu % 64);
                    for (std::size_t w = 0; w < words; ++w) bits[w] |= closure_[pu][w];
                }
                done[slot] = true;
            }
        }
    }

    std::vector<OntologyTerm> terms_;
    std::unordered_map<std::string, std::size_t> index_;
    std::unordered_map<std::string, std::size_t> sbo_slot_;
    std::vector<std::vector<std::uint64_t>> closure_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

}  // namespace detail

// Parses [Term] stanzas (id, name, is_a, is_obsolete). Other stanza kinds and
// tags are ignored; obsolete terms are dropped along with edges pointing at them.
inline OntologyGraph load_obo(std::string_view text, Diagnostics* diag = nullptr, const std::string& source = {}) {
    std::vector<OntologyTerm> terms;
    std::vector<std::string> obsolete;

    bool in_term = false;
    bool term_obsolete = false;
    std::size_t term_line = 0;
    OntologyTerm current;

    auto flush = [&]() {
        if (in_term) {
            if (current.id.empty()) throw ParseError(source, term_line, "[Term] stanza without id");
            if (term_obsolete)
                obsolete.push_back(current.id);
            else
                terms.push_back(std::move(current));
        }
        current = OntologyTerm{};
        term_obsolete = false;
        in_term = false;
    };

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = detail::trim(text.substr(pos, end - pos));
        pos = end + 1;
        ++line_no;

        if (line.empty() || line.front() == '!') continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError(source, line_no, "malformed stanza header");
            flush();
            in_term = line == "[Term]";
            term_line = line_no;
            continue;
        }
        auto colon = line.find(':');
        if (colon == std::string_view::npos || colon == 0)
            throw ParseError(source, line_no, "expected 'tag: value'");
        if (!in_term) continue;  // header block or other stanza kinds

        std::string_view tag = line.substr(0, colon);
        std::string_view value = detail::trim(line.substr(colon + 1));
        // trailing "! comment" and "{qualifiers}"
        if (tag != "name" && tag != "def" && tag != "comment") {
            if (auto bang = value.find(" !"); bang != std::string_view::npos) value = detail::trim(value.substr(0, bang));
            if (auto brace = value.find(" {"); brace != std::string_view::npos) value = detail::trim(value.substr(0, brace));
        }
        if (tag == "id") {
            if (!current.id.empty()) throw ParseError(source, line_no, "second id in one stanza");
            if (value.empty()) throw ParseError(source, line_no, "empty id");
            current.id = std::string(value);
        } else if (tag == "name") {
            current.name = std::string(value);
        } else if (tag == "is_a") {
            if (value.empty()) throw ParseError(source, line_no, "empty is_a");
            current.parents.emplace_back(value);
        } else if (tag == "is_obsolete") {
            term_obsolete = value == "true";
        }
    }
    flush();

    if (!obsolete.empty()) {
        std::sort(obsolete.begin(), obsolete.end());
        for (auto& t : terms) {
            std::erase_if(t.parents, [&](const std::string& p) {
                return std::binary_search(obsolete.begin(), obsolete.end(), p);
            });
        }
    }
    return OntologyGraph::from_terms(std::move(terms), diag, source);
}

}  // namespace pathcur
