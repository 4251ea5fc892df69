#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pathcur/errors.hpp"
#include "pathcur/names.hpp"

namespace pathcur {

// Event types of the BioNLP GE/PC/ANN annotation schemes.
inline const std::set<std::string, std::less<>>& standoff_event_types() {
    static const std::set<std::string, std::less<>> types{
        "Acetylation",     "Activation",       "Binding",         "Catalysis",
        "Conversion",      "Deacetylation",    "Degradation",     "Demethylation",
        "Dephosphorylation", "Deubiquitination", "Dissociation",  "Gene_expression",
        "Hydroxylation",   "Inactivation",     "Localization",    "Methylation",
        "Negative_regulation", "Pathway",      "Phosphorylation", "Positive_regulation",
        "Protein_catabolism", "Regulation",    "Transcription",   "Translation",
        "Transport",       "Ubiquitination"};
    return types;
}

inline const std::set<std::string, std::less<>>& standoff_entity_types() {
    static const std::set<std::string, std::less<>> types{
        "Protein", "Gene_or_gene_product", "Complex", "Simple_chemical", "Cellular_component",
        "Entity",  "Gene",                 "Chemical", "DNA",            "RNA"};
    return types;
}

struct TextSpan {
    std::size_t start = 0;  // code point offsets, end exclusive
    std::size_t end = 0;
};

struct StandoffEntity {
    std::string id;  // "T12"
    std::string type;
    std::vector<TextSpan> spans;  // more than one for discontinuous mentions
    std::string surface;
    bool from_a1 = false;

    std::size_t start() const { return spans.front().start; }
    std::size_t end() const { return spans.back().end; }
};

struct EventArgument {
    std::string role;      // base role, numbering stripped ("Theme2" -> "Theme")
    std::string raw_role;  // as written
    std::string target;    // T or E id
};

struct StandoffEvent {
    std::string id;  // "E3"
    std::string type;
    std::string trigger;  // T id
    std::vector<EventArgument> args;

    std::vector<std::string> targets(std::string_view role) const {
        std::vector<std::string> out;
        for (const auto& a : args)
            if (a.role == role) out.push_back(a.target);
        return out;
    }
};

enum class ModifierKind { speculation, negation };

struct StandoffModifier {
    std::string id;  // "M1" (or "A1" in older releases)
    ModifierKind kind = ModifierKind::speculation;
    std::string event;
};

struct StandoffDocument {
    std::string doc_id;
    std::string text;
    std::vector<StandoffEntity> entities;
    std::vector<StandoffEvent> events;
    std::vector<StandoffModifier> modifiers;
    std::vector<std::vector<std::string>> equivs;

    // Original line order per annotation file; used for reserialization.
    enum class LineKind { entity, event, modifier, equiv };
    struct LineRef {
        LineKind kind;
        std::size_t index;
    };
    std::vector<LineRef> a1_lines;
    std::vector<LineRef> a2_lines;

    const StandoffEntity* entity(std::string_view id) const {
        auto it = entity_index_.find(std::string(id));
        return it == entity_index_.end() ? nullptr : &entities[it->second];
    }
    const StandoffEvent* event(std::string_view id) const {
        auto it = event_index_.find(std::string(id));
        return it == event_index_.end() ? nullptr : &events[it->second];
    }

    void reindex() {
        entity_index_.clear();
        event_index_.clear();
        for (std::size_t i = 0; i < entities.size(); ++i) entity_index_.emplace(entities[i].id, i);
        for (std::size_t i = 0; i < events.size(); ++i) event_index_.emplace(events[i].id, i);
    }

private:
    std::unordered_map<std::string, std::size_t> entity_index_;
    std::unordered_map<std::string, std::size_t> event_index_;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

inline std::optional<std::size_t> parse_offset(std::string_view s) {
    if (s.empty() || s.size() > 12) return std::nullopt;
    std::size_t v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') return std::nullopt;
        v = v * 10 + static_cast<std::size_t>(c - '0');
    }
    return v;
}

inline std::string base_role(std::string_view raw) {
    while (!raw.empty() && std::isdigit(static_cast<unsigned char>(raw.back()))) raw.remove_suffix(1);
    return std::string(raw);
}

// Byte offset of every code point boundary (size = code points + 1).
inline std::vector<std::size_t> code_point_boundaries(std::string_view text) {
    std::vector<std::size_t> out;
    out.reserve(text.size() + 1);
    for (std::size_t i = 0; i < text.size(); ++i)
        if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) out.push_back(i);
    out.push_back(text.size());
    return out;
}

}  // namespace detail

// Parses a BioNLP standoff triplet (.txt, .a1, .a2). Offsets count code points.
inline StandoffDocument parse_standoff(std::string_view txt, std::string_view a1, std::string_view a2,
                                       std::string doc_id = {}, Diagnostics* diag = nullptr) {
    StandoffDocument doc;
    doc.doc_id = std::move(doc_id);
    doc.text = std::string(txt);
    const auto boundaries = detail::code_point_boundaries(doc.text);
    const std::size_t text_len = boundaries.size() - 1;

    std::set<std::string> seen_ids;
    struct Pending {
        std::string file;
        std::size_t line;
    };
    std::unordered_map<std::string, Pending> where;  // id -> location, for later diagnostics

    auto parse_file = [&](std::string_view body, bool is_a1) {
        const std::string file = doc.doc_id + (is_a1 ? ".a1" : ".a2");
        auto& order = is_a1 ? doc.a1_lines : doc.a2_lines;
        std::size_t line_no = 0;
        std::size_t pos = 0;
        while (pos < body.size()) {
            std::size_t end = body.find('\n', pos);
            if (end == std::string_view::npos) end = body.size();
            std::string_view line = body.substr(pos, end - pos);
            pos = end + 1;
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            if (detail::split_ws(line).empty()) continue;

            auto fail = [&](const std::string& msg) { throw ParseError(file, line_no, msg); };
            auto tab = line.find('\t');
            std::string_view id;
            std::string_view rest;
            if (tab != std::string_view::npos) {
                id = line.substr(0, tab);
                rest = line.substr(tab + 1);
            } else {
                auto sp = line.find(' ');
                if (sp == std::string_view::npos) fail("malformed line");
                id = line.substr(0, sp);
                rest = line.substr(sp + 1);
            }
            while (!id.empty() && id.back() == ' ') id.remove_suffix(1);
            if (id.empty()) fail("missing annotation id");

            const char kind = id.front();
            if (kind != '*' && kind != '#' && !seen_ids.insert(std::string(id)).second)
                fail("duplicate annotation id '" + std::string(id) + "'");
            where[std::string(id)] = Pending{file, line_no};

            if (kind == 'T') {
                // "Type start end[;start end]" TAB surface
                std::string_view fields = rest;
                std::string_view surface;
                if (auto t2 = rest.find('\t'); t2 != std::string_view::npos) {
                    fields = rest.substr(0, t2);
                    surface = rest.substr(t2 + 1);
                } else {
                    // no second tab: type and offsets are the first whitespace tokens
                    auto toks = detail::split_ws(rest);
                    if (toks.size() < 3) fail("malformed text-bound annotation");
                    std::size_t consumed = static_cast<std::size_t>(toks[2].data() + toks[2].size() - rest.data());
                    fields = rest.substr(0, consumed);
                    surface = consumed < rest.size() ? rest.substr(consumed + 1) : std::string_view{};
                }
                auto toks = detail::split_ws(fields);
                if (toks.size() < 3) fail("malformed text-bound annotation");
                StandoffEntity ent;
                ent.id = std::string(id);
                ent.type = std::string(toks[0]);
                ent.from_a1 = is_a1;
                std::string joined;
                for (std::size_t k = 1; k < toks.size(); ++k) joined += (k > 1 ? " " : "") + std::string(toks[k]);
                std::size_t frag_start = 0;
                while (frag_start <= joined.size()) {
                    std::size_t semi = joined.find(';', frag_start);
                    if (semi == std::string::npos) semi = joined.size();
                    auto pair = detail::split_ws(std::string_view(joined).substr(frag_start, semi - frag_start));
                    if (pair.size() != 2) fail("malformed offsets");
                    auto s = detail::parse_offset(pair[0]);
                    auto e = detail::parse_offset(pair[1]);
                    if (!s || !e) fail("malformed offsets");
                    if (!(*s < *e) || *e > text_len)
                        fail("offsets " + std::to_string(*s) + "-" + std::to_string(*e) + " outside text of length " +
                             std::to_string(text_len));
                    ent.spans.push_back({*s, *e});
                    frag_start = semi + 1;
                }
                std::string expected;
                for (std::size_t k = 0; k < ent.spans.size(); ++k) {
                    if (k) expected += ' ';
                    std::size_t b = boundaries[ent.spans[k].start];
                    expected += doc.text.substr(b, boundaries[ent.spans[k].end] - b);
                }
                ent.surface = std::string(surface);
                if (ent.surface != expected)
                    fail("offset mismatch for " + ent.id + ": annotation says '" + ent.surface + "', text has '" +
                         expected + "'");
                if (!standoff_entity_types().contains(ent.type) && !standoff_event_types().contains(ent.type))
                    warn(diag, file + ":" + std::to_string(line_no) + ": unknown entity type '" + ent.type + "'");
                order.push_back({StandoffDocument::LineKind::entity, doc.entities.size()});
                doc.entities.push_back(std::move(ent));
            } else if (kind == 'E') {
                auto toks = detail::split_ws(rest);
                if (toks.empty()) fail("event without type");
                StandoffEvent ev;
                ev.id = std::string(id);
                auto head = toks[0];
                auto colon = head.find(':');
                if (colon == std::string_view::npos || colon == 0 || colon + 1 == head.size())
                    fail("event head must be Type:Trigger");
                ev.type = std::string(head.substr(0, colon));
                ev.trigger = std::string(head.substr(colon + 1));
                for (std::size_t k = 1; k < toks.size(); ++k) {
                    auto c = toks[k].find(':');
                    if (c == std::string_view::npos || c == 0 || c + 1 == toks[k].size())
                        fail("malformed argument '" + std::string(toks[k]) + "'");
                    EventArgument arg;
                    arg.raw_role = std::string(toks[k].substr(0, c));
                    arg.role = detail::base_role(arg.raw_role);
                    arg.target = std::string(toks[k].substr(c + 1));
                    ev.args.push_back(std::move(arg));
                }
                if (!standoff_event_types().contains(ev.type))
                    warn(diag, file + ":" + std::to_string(line_no) + ": unknown event type '" + ev.type + "'");
                order.push_back({StandoffDocument::LineKind::event, doc.events.size()});
                doc.events.push_back(std::move(ev));
            } else if (kind == 'M' || kind == 'A') {
                auto toks = detail::split_ws(rest);
                if (toks.size() != 2) fail("modifier must be 'Kind EventId'");
                StandoffModifier m;
                m.id = std::string(id);
                if (toks[0] == "Speculation")
                    m.kind = ModifierKind::speculation;
                else if (toks[0] == "Negation")
                    m.kind = ModifierKind::negation;
                else
                    fail("unknown modifier kind '" + std::string(toks[0]) + "'");
                m.event = std::string(toks[1]);
                order.push_back({StandoffDocument::LineKind::modifier, doc.modifiers.size()});
                doc.modifiers.push_back(std::move(m));
            } else if (kind == '*') {
                auto toks = detail::split_ws(rest);
                if (toks.size() < 3 || toks[0] != "Equiv") fail("expected '* Equiv T.. T..'");
                std::vector<std::string> ids;
                for (std::size_t k = 1; k < toks.size(); ++k) ids.emplace_back(toks[k]);
                order.push_back({StandoffDocument::LineKind::equiv, doc.equivs.size()});
                doc.equivs.push_back(std::move(ids));
            } else if (kind == 'R' || kind == 'N' || kind == '#') {
                warn(diag, file + ":" + std::to_string(line_no) + ": skipping unsupported annotation '" +
                               std::string(id) + "'");
            } else {
                fail("unknown annotation id '" + std::string(id) + "'");
            }
        }
    };

    parse_file(a1, true);
    parse_file(a2, false);
    doc.reindex();

    auto loc = [&](const std::string& id) -> std::pair<std::string, std::size_t> {
        auto it = where.find(id);
        return it == where.end() ? std::pair<std::string, std::size_t>{doc.doc_id, 0}
                                 : std::pair{it->second.file, it->second.line};
    };

    for (const auto& ev : doc.events) {
        auto [file, line] = loc(ev.id);
        if (!doc.entity(ev.trigger)) throw ParseError(file, line, ev.id + ": dangling trigger '" + ev.trigger + "'");
        for (const auto& a : ev.args)
            if (!doc.entity(a.target) && !doc.event(a.target))
                throw ParseError(file, line, ev.id + ": dangling argument " + a.raw_role + ":" + a.target);
    }
    for (const auto& m : doc.modifiers)
        if (!doc.event(m.event)) {
            auto [file, line] = loc(m.id);
            throw ParseError(file, line, m.id + ": dangling event reference '" + m.event + "'");
        }
    for (const auto& eq : doc.equivs)
        for (const auto& id : eq)
            if (!doc.entity(id)) throw ParseError(doc.doc_id + ".a2", 0, "Equiv references unknown entity '" + id + "'");

    // Event argument graph must be acyclic.
    {
        std::unordered_map<std::string, int> state;  // 1 = on stack, 2 = done
        for (const auto& root : doc.events) {
            if (state[root.id] == 2) continue;
            std::vector<std::pair<const StandoffEvent*, std::size_t>> stack{{&root, 0}};
            state[root.id] = 1;
            while (!stack.empty()) {
                auto& [ev, next] = stack.back();
                if (next == ev->args.size()) {
                    state[ev->id] = 2;
                    stack.pop_back();
                    continue;
                }
                const auto* child = doc.event(ev->args[next++].target);
                if (!child) continue;
                int st = state[child->id];
                if (st == 1) {
                    auto [file, line] = loc(child->id);
                    throw ParseError(file, line, "event reference cycle through " + child->id);
                }
                if (st == 0) {
                    state[child->id] = 1;
                    stack.emplace_back(child, 0);
                }
            }
        }
    }
    return doc;
}

inline std::string format_entity_line(const StandoffEntity& e) {
    std::string out = e.id + "\t" + e.type + " ";
    for (std::size_t k = 0; k < e.spans.size(); ++k) {
        if (k) out += ';';
        out += std::to_string(e.spans[k].start) + " " + std::to_string(e.spans[k].end);
    }
    return out + "\t" + e.surface;
}

inline std::string format_event_line(const StandoffEvent& e) {
    std::string out = e.id + "\t" + e.type + ":" + e.trigger;
    for (const auto& a : e.args) out += " " + a.raw_role + ":" + a.target;
    return out;
}

inline std::string format_modifier_line(const StandoffModifier& m) {
    return m.id + "\t" + (m.kind == ModifierKind::negation ? "Negation " : "Speculation ") + m.event;
}

// Rebuilds one annotation file body (a1 or a2) in its original line order.
inline std::string write_standoff_file(const StandoffDocument& doc, bool a1) {
    std::string out;
    for (const auto& ref : a1 ? doc.a1_lines : doc.a2_lines) {
        switch (ref.kind) {
            case StandoffDocument::LineKind::entity: out += format_entity_line(doc.entities[ref.index]); break;
            case StandoffDocument::LineKind::event: out += format_event_line(doc.events[ref.index]); break;
            case StandoffDocument::LineKind::modifier: out += format_modifier_line(doc.modifiers[ref.index]); break;
            case StandoffDocument::LineKind::equiv: {
                out += "*\tEquiv";
                for (const auto& id : doc.equivs[ref.index]) out += " " + id;
                break;
            }
        }
        out += '\n';
    }
    return out;
}

// Exact per-type event counts over a corpus.
inline std::map<std::string, std::size_t> event_type_census(const std::vector<StandoffDocument>& docs) {
    std::map<std::string, std::size_t> counts;
    for (const auto& d : docs)
        for (const auto& e : d.events) ++counts[e.type];
    return counts;
}

}  // namespace pathcur
