#pragma once

#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "httplib.h"

#include "pathcur/errors.hpp"
#include "pathcur/model.hpp"
#include "pathcur/names.hpp"
#include "pathcur/ontology.hpp"

namespace pathcur {

class MissingMappingError : public DataError {
public:
    explicit MissingMappingError(std::vector<std::string> types)
        : DataError(message(types)), types_(std::move(types)) {}
    const std::vector<std::string>& types() const noexcept { return types_; }

private:
    static std::string message(const std::vector<std::string>& types) {
        std::string m = "no SBO/GO mapping for event type(s):";
        for (const auto& t : types) m += " " + t;
        return m;
    }
    std::vector<std::string> types_;
};

namespace detail {

inline std::vector<std::string> split_any(std::string_view s, std::string_view seps) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (seps.find(c) != std::string_view::npos) {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

inline std::string trim_copy(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    auto e = s.find_last_not_of(" \t\r\n");
    return b == std::string_view::npos ? std::string{} : std::string(s.substr(b, e - b + 1));
}

// Two-column TSV: key TAB comma-separated values. '#' lines are comments.
inline std::vector<std::pair<std::string, std::vector<std::string>>> read_two_column(std::string_view text,
                                                                                       const std::string& source) {
    std::vector<std::pair<std::string, std::vector<std::string>>> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim_copy(line).empty() || line.front() == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) throw ParseError(source, line_no, "expected key<TAB>values");
        std::string key = trim_copy(line.substr(0, tab));
        if (key.empty()) throw ParseError(source, line_no, "empty key");
        std::vector<std::string> values;
        for (auto& v : split_any(line.substr(tab + 1), ", \t")) values.push_back(v);
        rows.emplace_back(std::move(key), std::move(values));
    }
    return rows;
}

inline EntrezSignature parse_entrez_list(const std::vector<std::string>& tokens, const std::string& where) {
    EntrezSignature sig;
    for (const auto& t : tokens) {
        if (t.empty() || t.size() > 15 || !std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw DataError(where + ": '" + t + "' is not an Entrez gene id");
        sig.insert(std::stoll(t));
    }
    return sig;
}

}  // namespace detail

// Event type -> SBO/GO terms.
struct SboMappingTable {
    std::map<std::string, TermSignature> terms;

    const TermSignature* find(const std::string& event_type) const {
        auto it = terms.find(event_type);
        return it == terms.end() ? nullptr : &it->second;
    }

    static SboMappingTable parse(std::string_view text, const std::string& source = "sbo mapping") {
        SboMappingTable t;
        for (auto& [type, values] : detail::read_two_column(text, source)) {
            if (values.empty()) throw ParseError(source, 0, "event type '" + type + "' maps to no term");
            t.terms[type].insert(values.begin(), values.end());
        }
        return t;
    }

    // Terms not declared in the ontology.
    std::vector<std::string> unknown_terms(const OntologyGraph& onto) const {
        std::set<std::string> out;
        for (const auto& [type, sig] : terms)
            for (const auto& term : sig)
                if (!onto.contains(term)) out.insert(term);
        return {out.begin(), out.end()};
    }
};

// Unions the mapped terms of each reaction's source event type into its
// signature. Fails before touching anything if a reaction would stay
// unannotated.
inline Pathway annotate_reactions(Pathway p, const SboMappingTable& table) {
    std::set<std::string> missing;
    for (const auto& r : p.reactions()) {
        if (r.source_event_type) {
            if (!table.find(*r.source_event_type)) missing.insert(*r.source_event_type);
        } else if (r.sbo_signature.empty()) {
            missing.insert("<untyped reaction " + r.id + ">");
        }
    }
    if (!missing.empty()) throw MissingMappingError({missing.begin(), missing.end()});
    for (const auto& r : p.reactions())
        if (r.source_event_type) p.add_terms(r.id, *table.find(*r.source_event_type));
    return p;
}

// Maps normalized species names to Entrez gene signatures.
//
// Lookups go through a name-keyed cache first. In remote mode a miss issues
//   GET <endpoint>?name=<url-encoded name>&organism=9606
// and expects a body of Entrez ids separated by commas or whitespace (empty
// body = no genes). Transport failures yield an empty signature and a warning
// and are not cached.
class GeneResolver {
public:
    enum class Mode { null, lexicon, remote };

    static GeneResolver null_resolver() { return GeneResolver(Mode::null); }

    static GeneResolver from_lexicon(const std::map<std::string, EntrezSignature>& lexicon) {
        GeneResolver r(Mode::lexicon);
        for (const auto& [name, ids] : lexicon) r.source_[normalize_name(name)] = ids;
        return r;
    }

    static GeneResolver from_lexicon_text(std::string_view text, const std::string& source = "lexicon") {
        GeneResolver r(Mode::lexicon);
        for (auto& [name, values] : detail::read_two_column(text, source)) {
            auto& sig = r.source_[normalize_name(name)];
            auto ids = detail::parse_entrez_list(values, source);
            sig.insert(ids.begin(), ids.end());
        }
        return r;
    }

    static GeneResolver remote(std::string endpoint, std::optional<std::filesystem::path> cache_file = std::nullopt) {
        GeneResolver r(Mode::remote);
        r.endpoint_ = std::move(endpoint);
        r.cache_file_ = std::move(cache_file);
        if (r.cache_file_ && std::filesystem::exists(*r.cache_file_)) {
            std::ifstream in(*r.cache_file_, std::ios::binary);
            std::stringstream buf;
            buf << in.rdbuf();
            for (auto& [name, values] : detail::read_two_column(buf.str(), r.cache_file_->string()))
                r.cache_[name] = detail::parse_entrez_list(values, r.cache_file_->string());
        }
        return r;
    }

    GeneResolver(GeneResolver&& other) noexcept
        : mode_(other.mode_),
          source_(std::move(other.source_)),
          cache_(std::move(other.cache_)),
          endpoint_(std::move(other.endpoint_)),
          cache_file_(std::move(other.cache_file_)),
          frozen_(other.frozen_),
          remote_calls_(other.remote_calls_) {}

    Mode mode() const noexcept { return mode_; }

    // With a frozen cache, misses resolve to the empty set and nothing is stored.
    void freeze() { frozen_ = true; }

    EntrezSignature resolve(const std::string& normalized, Diagnostics* diag = nullptr) {
        if (mode_ == Mode::null) return {};
        {
            std::lock_guard lock(mutex_);
            if (auto it = cache_.find(normalized); it != cache_.end()) return it->second;
            if (frozen_) return {};
        }
        std::optional<EntrezSignature> found;
        if (mode_ == Mode::lexicon) {
            auto it = source_.find(normalized);
            found = it == source_.end() ? EntrezSignature{} : it->second;
        } else {
            found = fetch(normalized, diag);
        }
        if (!found) return {};
        std::lock_guard lock(mutex_);
        cache_.emplace(normalized, *found);
        return *found;
    }

    const std::map<std::string, EntrezSignature>& cache() const noexcept { return cache_; }
    std::size_t remote_calls() const noexcept { return remote_calls_; }

    static std::string format_cache(const std::map<std::string, EntrezSignature>& cache) {
        std::string out;
        for (const auto& [name, ids] : cache) {
            out += name + "\t";
            bool first = true;
            for (auto id : ids) {
                if (!first) out += ",";
                out += std::to_string(id);
                first = false;
            }
            out += "\n";
        }
        return out;
    }

    // Writes the cache next to its destination and renames it into place.
    void save_cache() const {
        if (!cache_file_) return;
        std::string body;
        {
            std::lock_guard lock(mutex_);
            body = format_cache(cache_);
        }
        auto tmp = *cache_file_;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) throw ConfigError("cannot write resolver cache " + tmp.string());
            out << body;
        }
        std::filesystem::rename(tmp, *cache_file_);
    }

private:
    explicit GeneResolver(Mode m) : mode_(m) {}

    std::optional<EntrezSignature> fetch(const std::string& name, Diagnostics* diag) {
        static const std::regex url(R"(^(https?://[^/]+)(/.*)?$)");
        std::smatch m;
        if (!std::regex_match(endpoint_, m, url)) {
            warn(diag, "resolver endpoint '" + endpoint_ + "' is not an http URL");
            return std::nullopt;
        }
        std::string path = m[2].matched ? m[2].str() : "/";
        path += (path.find('?') == std::string::npos ? "?" : "&");
        path += "name=" + httplib::detail::encode_query_param(name) + "&organism=9606";
        ++remote_calls_;
        httplib::Client client(m[1].str());
        client.set_connection_timeout(5);
        client.set_read_timeout(20);
        auto res = client.Get(path);
        if (!res) {
            warn(diag, "resolver request for '" + name + "' failed: " + httplib::to_string(res.error()));
            return std::nullopt;
        }
        if (res->status != 200) {
            warn(diag, "resolver returned HTTP " + std::to_string(res->status) + " for '" + name + "'");
            return std::nullopt;
        }
        try {
            return detail::parse_entrez_list(detail::split_any(res->body, ", \t\r\n"), "resolver response");
        } catch (const DataError& e) {
            warn(diag, std::string(e.what()) + " (name '" + name + "')");
            return std::nullopt;
        }
    }

    Mode mode_;
    std::map<std::string, EntrezSignature> source_;
    std::map<std::string, EntrezSignature> cache_;
    std::string endpoint_;
    std::optional<std::filesystem::path> cache_file_;
    bool frozen_ = false;
    std::size_t remote_calls_ = 0;
    mutable std::mutex mutex_;
};

// Sets each species' Entrez signature to the resolver's answer for its
// normalized name; with keep_existing, species that already carry ids are
// left alone. Never throws on resolution failures.
inline Pathway annotate_species(Pathway p, GeneResolver& resolver, Diagnostics* diag = nullptr,
                                bool keep_existing = false) {
    std::vector<std::pair<std::string, std::string>> todo;
    for (const auto& s : p.species())
        if (!keep_existing || s.entrez_signature.empty()) todo.emplace_back(s.id, s.normalized_name);
    for (const auto& [id, name] : todo) p.set_entrez_signature(id, resolver.resolve(name, diag));
    return p;
}

// State prefix -> SBO term, e.g. "phosphorylated" -> SBO:0000216.
struct StatePrefixTable {
    std::vector<std::pair<std::string, TermId>> entries;  // file order

    std::vector<std::string> prefixes() const {
        std::vector<std::string> out;
        for (const auto& [p, t] : entries) out.push_back(p);
        return out;
    }

    const TermId* term_for(std::string_view prefix) const {
        for (const auto& [p, t] : entries)
            if (p == prefix) return &t;
        return nullptr;
    }

    static StatePrefixTable parse(std::string_view text, const std::string& source = "state prefixes") {
        StatePrefixTable t;
        for (auto& [prefix, values] : detail::read_two_column(text, source)) {
            if (values.size() != 1) throw ParseError(source, 0, "prefix '" + prefix + "' needs exactly one term");
            t.entries.emplace_back(casefold_collapse(prefix), values.front());
        }
        return t;
    }

    static StatePrefixTable defaults() {
        StatePrefixTable t;
        t.entries = {{"phosphorylated", "SBO:0000216"},   {"dephosphorylated", "SBO:0000330"},
                     {"ubiquitinated", "SBO:0000224"},    {"acetylated", "SBO:0000215"},
                     {"methylated", "SBO:0000214"},       {"activated", "SBO:0000170"},
                     {"inactivated", "SBO:0000169"}};
        return t;
    }
};

// Adds terms deduced from name changes between reactants and products of
// curated reactions: a product named "<prefix> <reactant name>" (any number
// of recognized prefixes) adds each prefix's term.
inline Pathway annotate_target_reactions(Pathway p, const StatePrefixTable& prefixes,
                                         const OntologyGraph* ontology = nullptr, Diagnostics* log = nullptr) {
    auto words = [](const std::string& s) { return detail::split_any(casefold_collapse(s), " "); };
    std::vector<std::pair<std::string, TermSignature>> additions;
    for (const auto& r : p.reactions()) {
        std::vector<std::vector<std::string>> reactants, products;
        for (const auto& n : p.neighbors(r.id)) {
            if (n.role == Role::reactant) reactants.push_back(words(p.species(n.species_id).name));
            if (n.role == Role::product) products.push_back(words(p.species(n.species_id).name));
        }
        TermSignature deduced;
        for (const auto& prod : products)
            for (const auto& reac : reactants) {
                if (prod.size() <= reac.size()) continue;
                std::size_t extra = prod.size() - reac.size();
                if (!std::equal(reac.begin(), reac.end(), prod.begin() + static_cast<std::ptrdiff_t>(extra))) continue;
                TermSignature terms;
                bool all_known = true;
                for (std::size_t k = 0; k < extra && all_known; ++k) {
                    const TermId* t = prefixes.term_for(prod[k]);
                    if (!t)
                        all_known = false;
                    else
                        terms.insert(*t);
                }
                if (all_known) deduced.insert(terms.begin(), terms.end());
            }
        TermSignature kept;
        for (const auto& t : deduced) {
            if (ontology && ontology->size() > 0 && !ontology->contains(t)) {
                warn(log, "reaction '" + r.id + "': deduced term " + t + " not in ontology; skipped");
                continue;
            }
            if (!r.sbo_signature.contains(t)) {
                warn(log, "reaction '" + r.id + "': deduced " + t);
                kept.insert(t);
            }
        }
        if (!kept.empty()) additions.emplace_back(r.id, std::move(kept));
    }
    for (const auto& [id, terms] : additions) p.add_terms(id, terms);
    return p;
}

}  // namespace pathcur
