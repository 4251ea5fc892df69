#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "pathcur/errors.hpp"
#include "pathcur/names.hpp"

namespace pathcur {

enum class Role : std::uint8_t { reactant = 0, product = 1, modifier = 2 };

inline std::string_view to_string(Role r) {
    switch (r) {
        case Role::reactant: return "reactant";
        case Role::product: return "product";
        case Role::modifier: return "modifier";
    }
    return "reactant";
}

inline std::optional<Role> parse_role(std::string_view s) {
    if (s == "reactant") return Role::reactant;
    if (s == "product") return Role::product;
    if (s == "modifier") return Role::modifier;
    return std::nullopt;
}

using EntrezId = std::int64_t;
using EntrezSignature = std::set<EntrezId>;
using TermId = std::string;  // "SBO:0000216", "GO:0006468"
using TermSignature = std::set<TermId>;

struct Compartment {
    std::string id;
    std::string name;
};

struct Species {
    std::string id;
    std::string name;
    std::string normalized_name;
    EntrezSignature entrez_signature;
    std::vector<std::string> constituents;
    std::optional<std::string> compartment;
};

struct Reaction {
    std::string id;
    TermSignature sbo_signature;
    std::optional<std::string> source_event_type;
};

struct RoleEdge {
    std::string species_id;
    std::string reaction_id;
    Role role = Role::reactant;

    friend bool operator==(const RoleEdge&, const RoleEdge&) = default;
    friend auto operator<=>(const RoleEdge& a, const RoleEdge& b) {
        return std::tie(a.reaction_id, a.role, a.species_id) <=> std::tie(b.reaction_id, b.role, b.species_id);
    }
};

struct Neighbor {
    std::string species_id;
    Role role;

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

// Species/reaction graph with role-labelled edges. Elements are stored in
// insertion order; edges are indexed from both sides.
class Pathway {
public:
    Pathway() = default;
    explicit Pathway(std::string source_name) : source_name_(std::move(source_name)) {}

    const std::string& source_name() const noexcept { return source_name_; }
    void set_source_name(std::string name) { source_name_ = std::move(name); }

    // normalized_name is recomputed from name with the default prefix list;
    // call renormalize() to apply a different vocabulary.
    const std::string& add_species(Species s) {
        if (species_index_.contains(s.id)) throw DuplicateIdError("species", s.id);
        for (const auto& c : s.constituents) check_constituent(s.id, c);
        s.normalized_name = normalize_name(s.name);
        if (s.compartment && !compartment_index_.contains(*s.compartment))
            throw UnknownIdError("compartment", *s.compartment);
        std::sort(s.constituents.begin(), s.constituents.end());
        s.constituents.erase(std::unique(s.constituents.begin(), s.constituents.end()), s.constituents.end());
        species_index_.emplace(s.id, species_.size());
        species_.push_back(std::move(s));
        species_edges_.emplace_back();
        return species_.back().id;
    }

    const std::string& add_reaction(Reaction r) {
        if (reaction_index_.contains(r.id)) throw DuplicateIdError("reaction", r.id);
        reaction_index_.emplace(r.id, reactions_.size());
        reactions_.push_back(std::move(r));
        reaction_edges_.emplace_back();
        return reactions_.back().id;
    }

    const std::string& add_compartment(Compartment c) {
        if (compartment_index_.contains(c.id)) throw DuplicateIdError("compartment", c.id);
        compartment_index_.emplace(c.id, compartments_.size());
        compartments_.push_back(std::move(c));
        return compartments_.back().id;
    }

    // Returns false when the identical (species, reaction, role) edge already exists.
    bool add_edge(const std::string& species_id, const std::string& reaction_id, Role role) {
        std::size_t si = species_pos(species_id);
        std::size_t ri = reaction_pos(reaction_id);
        for (std::size_t e : reaction_edges_[ri])
            if (edges_[e].species_id == species_id && edges_[e].role == role) return false;
        std::size_t idx = edges_.size();
        edges_.push_back(RoleEdge{species_id, reaction_id, role});
        species_edges_[si].push_back(idx);
        reaction_edges_[ri].push_back(idx);
        return true;
    }

    void set_constituents(const std::string& species_id, std::vector<std::string> constituents) {
        std::size_t si = species_pos(species_id);
        for (const auto& c : constituents) {
            check_constituent(species_id, c);
            if (reaches(c, species_id)) throw DataError("constituent cycle through species '" + species_id + "'");
        }
        std::sort(constituents.begin(), constituents.end());
        constituents.erase(std::unique(constituents.begin(), constituents.end()), constituents.end());
        species_[si].constituents = std::move(constituents);
    }

    void set_compartment(const std::string& species_id, const std::string& compartment_id) {
        std::size_t si = species_pos(species_id);
        if (!compartment_index_.contains(compartment_id)) throw UnknownIdError("compartment", compartment_id);
        species_[si].compartment = compartment_id;
    }

    void set_entrez_signature(const std::string& species_id, EntrezSignature sig) {
        species_[species_pos(species_id)].entrez_signature = std::move(sig);
    }

    // Set union into the existing signature; signatures only grow.
    void add_terms(const std::string& reaction_id, const TermSignature& terms) {
        auto& sig = reactions_[reaction_pos(reaction_id)].sbo_signature;
        sig.insert(terms.begin(), terms.end());
    }

    void renormalize(const std::vector<std::string>& prefixes) {
        for (auto& s : species_) s.normalized_name = normalize_name(s.name, prefixes);
    }

    const std::vector<Species>& species() const noexcept { return species_; }
    const std::vector<Reaction>& reactions() const noexcept { return reactions_; }
    const std::vector<Compartment>& compartments() const noexcept { return compartments_; }
    const std::vector<RoleEdge>& edges() const noexcept { return edges_; }

    const Species* find_species(std::string_view id) const {
        auto it = species_index_.find(std::string(id));
        return it == species_index_.end() ? nullptr : &species_[it->second];
    }
    const Reaction* find_reaction(std::string_view id) const {
        auto it = reaction_index_.find(std::string(id));
        return it == reaction_index_.end() ? nullptr : &reactions_[it->second];
    }
    const Compartment* find_compartment(std::string_view id) const {
        auto it = compartment_index_.find(std::string(id));
        return it == compartment_index_.end() ? nullptr : &compartments_[it->second];
    }

    const Species& species(std::string_view id) const { return species_[species_pos(std::string(id))]; }
    const Reaction& reaction(std::string_view id) const { return reactions_[reaction_pos(std::string(id))]; }

    std::size_t species_pos(const std::string& id) const {
        auto it = species_index_.find(id);
        if (it == species_index_.end()) throw UnknownIdError("species", id);
        return it->second;
    }
    std::size_t reaction_pos(const std::string& id) const {
        auto it = reaction_index_.find(id);
        if (it == reaction_index_.end()) throw UnknownIdError("reaction", id);
        return it->second;
    }

    // Edge indices incident to the species / reaction at the given position.
    const std::vector<std::size_t>& edges_of_species(std::size_t pos) const { return species_edges_[pos]; }
    const std::vector<std::size_t>& edges_of_reaction(std::size_t pos) const { return reaction_edges_[pos]; }

    // Incident species of a reaction, ordered by (role, species id).
    std::vector<Neighbor> neighbors(const std::string& reaction_id) const {
        auto it = reaction_index_.find(reaction_id);
        if (it == reaction_index_.end()) throw UnknownIdError("reaction", reaction_id);
        std::vector<Neighbor> out;
        for (std::size_t e : reaction_edges_[it->second]) out.push_back({edges_[e].species_id, edges_[e].role});
        std::sort(out.begin(), out.end(), [](const Neighbor& a, const Neighbor& b) {
            return std::tie(a.role, a.species_id) < std::tie(b.role, b.species_id);
        });
        return out;
    }

    // Direct constituents of a complex, one level, never including the species itself.
    std::vector<std::string> constituents_of(const std::string& species_id) const {
        const auto& s = species_[species_pos(species_id)];
        std::vector<std::string> out;
        for (const auto& c : s.constituents)
            if (c != species_id) out.push_back(c);
        return out;
    }

private:
    bool reaches(const std::string& from, const std::string& target) const {
        std::vector<std::string> stack{from};
        std::set<std::string> seen;
        while (!stack.empty()) {
            std::string cur = std::move(stack.back());
            stack.pop_back();
            if (cur == target) return true;
            if (!seen.insert(cur).second) continue;
            for (const auto& c : species_[species_pos(cur)].constituents) stack.push_back(c);
        }
        return false;
    }

    void check_constituent(const std::string& owner, const std::string& c) const {
        if (c == owner) throw DataError("species '" + owner + "' lists itself as a constituent");
        if (!species_index_.contains(c)) throw UnknownIdError("species", c);
    }

    std::string source_name_;
    std::vector<Species> species_;
    std::vector<Reaction> reactions_;
    std::vector<Compartment> compartments_;
    std::vector<RoleEdge> edges_;
    std::unordered_map<std::string, std::size_t> species_index_;
    std::unordered_map<std::string, std::size_t> reaction_index_;
    std::unordered_map<std::string, std::size_t> compartment_index_;
    std::vector<std::vector<std::size_t>> species_edges_;
    std::vector<std::vector<std::size_t>> reaction_edges_;
};

}  // namespace pathcur
