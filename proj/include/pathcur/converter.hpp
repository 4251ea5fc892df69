#pragma once

#include <algorithm>
#include <atomic>
#include <cctype>
#include <functional>
#include <optional>
#include <cstddef>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <vector>

#include "pathcur/errors.hpp"
#include "pathcur/model.hpp"
#include "pathcur/standoff.hpp"

namespace pathcur {

// Where an event argument ends up in the pathway.
enum class ArgumentTarget { reactant, product, modifier, location, drop };

// How an event type is turned into reactions and edges.
enum class EventHandling { plain, regulation, binding, localization, drop };

inline std::string_view to_string(ArgumentTarget t) {
    switch (t) {
        case ArgumentTarget::reactant: return "reactant";
        case ArgumentTarget::product: return "product";
        case ArgumentTarget::modifier: return "modifier";
        case ArgumentTarget::location: return "location";
        case ArgumentTarget::drop: return "drop";
    }
    return "drop";
}

inline std::string_view to_string(EventHandling h) {
    switch (h) {
        case EventHandling::plain: return "plain";
        case EventHandling::regulation: return "regulation";
        case EventHandling::binding: return "binding";
        case EventHandling::localization: return "localization";
        case EventHandling::drop: return "drop";
    }
    return "plain";
}

class UnmappedRoleError : public DataError {
public:
    explicit UnmappedRoleError(const std::string& msg) : DataError(msg) {}
};

class UnresolvedArgumentError : public DataError {
public:
    explicit UnresolvedArgumentError(const std::string& msg) : DataError(msg) {}
};

struct ConversionRules {
    std::map<std::string, ArgumentTarget> roles;
    std::map<std::string, EventHandling> events;  // types not listed are converted plainly
    bool merge_equivalent_entities = false;
    std::size_t max_regulation_depth = 10;

    EventHandling handling(const std::string& type) const {
        auto it = events.find(type);
        return it == events.end() ? EventHandling::plain : it->second;
    }

    static ConversionRules defaults() {
        ConversionRules r;
        r.roles = {{"Theme", ArgumentTarget::reactant},     {"Cause", ArgumentTarget::modifier},
                   {"Product", ArgumentTarget::product},    {"Participant", ArgumentTarget::reactant},
                   {"Site", ArgumentTarget::drop},          {"CSite", ArgumentTarget::drop},
                   {"ToLoc", ArgumentTarget::location},     {"FromLoc", ArgumentTarget::location},
                   {"AtLoc", ArgumentTarget::location}};
        for (const char* t : {"Regulation", "Positive_regulation", "Negative_regulation", "Catalysis", "Activation",
                              "Inactivation", "Pathway"})
            r.events[t] = EventHandling::regulation;
        r.events["Binding"] = EventHandling::binding;
        r.events["Localization"] = EventHandling::localization;
        r.events["Transport"] = EventHandling::localization;
        return r;
    }

    friend bool operator==(const ConversionRules&, const ConversionRules&) = default;
};

// Line-oriented rules file:
//   role.<Role> = reactant|product|modifier|location|drop
//   event.<Type> = plain|regulation|binding|localization|drop
//   merge_equivalent_entities = true|false
//   max_regulation_depth = <n>
// '#' starts a comment. Every role of the core BioNLP vocabulary must be mapped.
inline ConversionRules parse_rules(std::string_view text, const std::string& source = "rules") {
    ConversionRules rules;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t\r");
        auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(source + ":" + std::to_string(line_no) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        auto bad = [&](const std::string& what) {
            return ConfigError(source + ":" + std::to_string(line_no) + ": " + what);
        };
        if (key.starts_with("role.")) {
            std::string role = key.substr(5);
            static const std::map<std::string, ArgumentTarget> targets{
                {"reactant", ArgumentTarget::reactant}, {"product", ArgumentTarget::product},
                {"modifier", ArgumentTarget::modifier}, {"location", ArgumentTarget::location},
                {"drop", ArgumentTarget::drop}};
            auto it = targets.find(value);
            if (role.empty() || it == targets.end()) throw bad("invalid role mapping '" + line + "'");
            rules.roles[role] = it->second;
        } else if (key.starts_with("event.")) {
            std::string type = key.substr(6);
            static const std::map<std::string, EventHandling> kinds{
                {"plain", EventHandling::plain},           {"regulation", EventHandling::regulation},
                {"binding", EventHandling::binding},       {"localization", EventHandling::localization},
                {"drop", EventHandling::drop}};
            auto it = kinds.find(value);
            if (type.empty() || it == kinds.end()) throw bad("invalid event handling '" + line + "'");
            rules.events[type] = it->second;
        } else if (key == "merge_equivalent_entities") {
            if (value != "true" && value != "false") throw bad("expected true or false");
            rules.merge_equivalent_entities = value == "true";
        } else if (key == "max_regulation_depth") {
            try {
                rules.max_regulation_depth = std::stoul(value);
            } catch (const std::exception&) {
                throw bad("invalid depth '" + value + "'");
            }
        } else {
            throw bad("unknown key '" + key + "'");
        }
    }
    for (const char* role : {"Theme", "Cause", "Product", "Site", "ToLoc", "FromLoc", "AtLoc", "Participant"})
        if (!rules.roles.contains(role)) throw ConfigError(source + ": no mapping for role '" + std::string(role) + "'");
    return rules;
}

inline std::string write_rules(const ConversionRules& rules) {
    std::string out;
    for (const auto& [role, target] : rules.roles) out += "role." + role + " = " + std::string(to_string(target)) + "\n";
    for (const auto& [type, h] : rules.events) out += "event." + type + " = " + std::string(to_string(h)) + "\n";
    out += std::string("merge_equivalent_entities = ") + (rules.merge_equivalent_entities ? "true" : "false") + "\n";
    out += "max_regulation_depth = " + std::to_string(rules.max_regulation_depth) + "\n";
    return out;
}

// Audit trail of one conversion run.
struct ConversionLog {
    std::vector<std::string> messages;
    std::vector<std::string> errors;  // per-document failures in corpus mode
    std::size_t events_seen = 0;
    std::size_t events_dropped = 0;

    void note(std::string m) { messages.push_back(std::move(m)); }

    void append(const ConversionLog& other) {
        messages.insert(messages.end(), other.messages.begin(), other.messages.end());
        errors.insert(errors.end(), other.errors.begin(), other.errors.end());
        events_seen += other.events_seen;
        events_dropped += other.events_dropped;
    }
};

namespace detail {

inline std::string sanitize_sid(std::string_view s) {
    std::string out;
    for (char c : s) out.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '_' ? c : '_');
    return out;
}

// Numeric order on "T12" style ids, falling back to lexical order.
inline bool annotation_id_less(const std::string& a, const std::string& b) {
    auto num = [](const std::string& s) -> long {
        if (s.size() < 2) return -1;
        long v = 0;
        for (std::size_t i = 1; i < s.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return -1;
            v = v * 10 + (s[i] - '0');
        }
        return v;
    };
    long na = num(a), nb = num(b);
    if (na >= 0 && nb >= 0 && a[0] == b[0]) return na < nb;
    return a < b;
}

}  // namespace detail

// Converts one standoff document. Element ids are "<kind>_<prefix>_<annotation id>".
inline Pathway convert(const StandoffDocument& doc, const ConversionRules& rules, ConversionLog* log = nullptr,
                       const std::string& prefix = "d0") {
    ConversionLog local;
    ConversionLog& lg = log ? *log : local;
    const std::string where = doc.doc_id.empty() ? prefix : doc.doc_id;
    const std::string pfx = detail::sanitize_sid(prefix);

    for (const auto& ev : doc.events)
        for (const auto& a : ev.args)
            if (!rules.roles.contains(a.role))
                throw UnmappedRoleError(where + ": " + ev.id + ": role '" + a.role + "' has no conversion rule");

    // Equivalence classes (identity when merging is off).
    std::unordered_map<std::string, std::string> parent;
    std::function<std::string(const std::string&)> find = [&](const std::string& x) -> std::string {
        auto it = parent.find(x);
        if (it == parent.end() || it->second == x) return x;
        std::string root = find(it->second);
        parent[x] = root;
        return root;
    };
    if (rules.merge_equivalent_entities) {
        for (const auto& eq : doc.equivs) {
            for (std::size_t i = 1; i < eq.size(); ++i) {
                std::string a = find(eq[0]), b = find(eq[i]);
                if (a == b) continue;
                if (detail::annotation_id_less(b, a)) std::swap(a, b);
                parent[b] = a;
            }
        }
    }
    auto rep = [&](const std::string& id) { return rules.merge_equivalent_entities ? find(id) : id; };

    std::set<std::string> triggers;
    for (const auto& ev : doc.events) triggers.insert(ev.trigger);
    for (const auto& e : doc.entities)
        if (standoff_event_types().contains(e.type) || rules.events.contains(e.type)) triggers.insert(e.id);

    std::set<std::string> location_use, participant_use;
    for (const auto& ev : doc.events)
        for (const auto& a : ev.args) {
            if (!doc.entity(a.target)) continue;
            auto target = rules.roles.at(a.role);
            if (target == ArgumentTarget::location)
                location_use.insert(rep(a.target));
            else if (target != ArgumentTarget::drop)
                participant_use.insert(rep(a.target));
        }

    Pathway p(doc.doc_id);
    auto species_id = [&](const std::string& t) { return "s_" + pfx + "_" + detail::sanitize_sid(rep(t)); };
    auto compartment_id = [&](const std::string& t) { return "c_" + pfx + "_" + detail::sanitize_sid(rep(t)); };
    auto reaction_id = [&](const std::string& e) { return "r_" + pfx + "_" + detail::sanitize_sid(e); };

    for (const auto& e : doc.entities) {
        if (triggers.contains(e.id) || rep(e.id) != e.id) continue;
        if (location_use.contains(e.id)) p.add_compartment({compartment_id(e.id), e.surface});
        if (!location_use.contains(e.id) || participant_use.contains(e.id)) {
            Species s;
            s.id = species_id(e.id);
            s.name = e.surface;
            p.add_species(std::move(s));
        }
    }

    std::set<std::string> dropped;
    for (const auto& ev : doc.events) {
        ++lg.events_seen;
        if (rules.handling(ev.type) == EventHandling::drop) {
            dropped.insert(ev.id);
            ++lg.events_dropped;
            lg.note(where + ": " + ev.id + " (" + ev.type + ") dropped by rules");
            continue;
        }
        Reaction r;
        r.id = reaction_id(ev.id);
        r.source_event_type = ev.type;
        p.add_reaction(std::move(r));
    }

    auto entity_species = [&](const StandoffEvent& ev, const EventArgument& a) -> std::string {
        if (triggers.contains(a.target))
            throw UnresolvedArgumentError(where + ": " + ev.id + ": argument " + a.raw_role + ":" + a.target +
                                          " points at an event trigger");
        return species_id(a.target);
    };

    for (const auto& ev : doc.events) {
        if (dropped.contains(ev.id)) continue;
        const auto handling = rules.handling(ev.type);
        const std::string rid = reaction_id(ev.id);
        std::optional<std::string> assigned_location;
        std::vector<std::string> theme_species;

        for (const auto& a : ev.args) {
            const auto target = rules.roles.at(a.role);
            const bool is_event = doc.event(a.target) != nullptr;
            if (target == ArgumentTarget::drop) {
                lg.note(where + ": " + ev.id + ": " + a.raw_role + " argument dropped");
                continue;
            }
            if (target == ArgumentTarget::location) {
                if (is_event) {
                    lg.note(where + ": " + ev.id + ": event-valued location argument ignored");
                } else if (handling == EventHandling::localization && (a.role == "ToLoc" || a.role == "AtLoc")) {
                    if (!assigned_location || a.role == "ToLoc") assigned_location = compartment_id(a.target);
                }
                continue;
            }
            if (is_event) {
                if (handling == EventHandling::regulation && a.role == "Theme") continue;  // handled below
                lg.note(where + ": " + ev.id + ": event-valued " + a.raw_role + " argument has no species; ignored");
                continue;
            }
            std::string sid = entity_species(ev, a);
            Role role = target == ArgumentTarget::reactant  ? Role::reactant
                        : target == ArgumentTarget::product ? Role::product
                                                            : Role::modifier;
            p.add_edge(sid, rid, role);
            if (a.role == "Theme") theme_species.push_back(sid);
        }

        if (handling == EventHandling::localization && assigned_location)
            for (const auto& sid : theme_species) p.set_compartment(sid, *assigned_location);

        if (handling == EventHandling::binding) {
            for (const auto& a : ev.args) {
                if (a.role != "Product" || doc.event(a.target)) continue;
                std::string complex = entity_species(ev, a);
                std::vector<std::string> parts = p.species(complex).constituents;
                for (const auto& t : theme_species)
                    if (t != complex) parts.push_back(t);
                try {
                    p.set_constituents(complex, parts);
                } catch (const DataError& err) {
                    lg.note(where + ": " + ev.id + ": complex not recorded: " + err.what());
                }
            }
        }

        if (handling == EventHandling::regulation) {
            for (const auto& a : ev.args) {
                if (a.role != "Theme" || !doc.event(a.target)) continue;
                // Walk down regulation chains to the innermost regulated reaction.
                const StandoffEvent* cur = doc.event(a.target);
                std::size_t depth = 1;
                bool overflow = false;
                while (rules.handling(cur->type) == EventHandling::regulation) {
                    const StandoffEvent* next = nullptr;
                    for (const auto& t : cur->targets("Theme"))
                        if (const auto* e = doc.event(t)) {
                            next = e;
                            break;
                        }
                    if (!next) break;
                    if (++depth > rules.max_regulation_depth) {
                        overflow = true;
                        break;
                    }
                    cur = next;
                }
                if (overflow) {
                    lg.note(where + ": " + ev.id + ": regulation chain deeper than " +
                            std::to_string(rules.max_regulation_depth) + "; regulator not attached");
                    continue;
                }
                if (dropped.contains(cur->id)) {
                    lg.note(where + ": " + ev.id + ": regulated event " + cur->id + " was dropped");
                    continue;
                }
                for (const auto& c : ev.args) {
                    if (c.role == "Theme" || doc.event(c.target)) continue;
                    if (rules.roles.at(c.role) != ArgumentTarget::modifier) continue;
                    p.add_edge(entity_species(ev, c), reaction_id(cur->id), Role::modifier);
                }
            }
        }
    }
    return p;
}

// Appends every element of `from` to `into`. Ids must not collide.
inline void append_pathway(Pathway& into, const Pathway& from) {
    for (const auto& c : from.compartments()) into.add_compartment(c);
    for (const auto& s : from.species()) {
        Species copy = s;
        copy.constituents.clear();
        into.add_species(std::move(copy));
    }
    for (const auto& s : from.species())
        if (!s.constituents.empty()) into.set_constituents(s.id, s.constituents);
    for (const auto& r : from.reactions()) into.add_reaction(r);
    for (const auto& e : from.edges()) into.add_edge(e.species_id, e.reaction_id, e.role);
}

// Disjoint union of per-document conversions. A failing document is recorded
// in log->errors and skipped. Documents are converted on `threads` workers;
// the union is assembled in input order.
inline Pathway convert_corpus(const std::vector<StandoffDocument>& docs, const ConversionRules& rules,
                              ConversionLog* log = nullptr, unsigned threads = 1, std::string name = "corpus") {
    std::vector<std::optional<Pathway>> parts(docs.size());
    std::vector<ConversionLog> logs(docs.size());
    auto work = [&](std::size_t i) {
        try {
            parts[i] = convert(docs[i], rules, &logs[i], "d" + std::to_string(i));
        } catch (const DataError& err) {
            logs[i].errors.push_back(err.what());
        }
    };
    threads = std::max(1u, threads);
    if (threads == 1 || docs.size() < 2) {
        for (std::size_t i = 0; i < docs.size(); ++i) work(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < docs.size(); i = next++) work(i);
            });
    }
    Pathway out(std::move(name));
    for (std::size_t i = 0; i < docs.size(); ++i) {
        if (log) log->append(logs[i]);
        if (parts[i]) append_pathway(out, *parts[i]);
    }
    return out;
}

}  // namespace pathcur
