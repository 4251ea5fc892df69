#pragma once

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "pathcur/errors.hpp"
#include "pathcur/model.hpp"

namespace pathcur {

// Namespace of the annotation block this library writes for complex
// constituents and source event types.
inline constexpr std::string_view kPathcurNamespace = "urn:pathcur:annotation:1";

namespace sbml_detail {

using boost::property_tree::ptree;

inline std::string_view local_name(std::string_view tag) {
    auto colon = tag.rfind(':');
    return colon == std::string_view::npos ? tag : tag.substr(colon + 1);
}

inline std::optional<std::string> attr(const ptree& node, std::string_view name) {
    auto attrs = node.get_child_optional("<xmlattr>");
    if (!attrs) return std::nullopt;
    for (const auto& [key, value] : *attrs)
        if (key == name || local_name(key) == name) return value.data();
    return std::nullopt;
}

inline const ptree* child(const ptree& node, std::string_view local) {
    for (const auto& [key, value] : node)
        if (local_name(key) == local) return &value;
    return nullptr;
}

// Depth-first search for the first element with the given local name.
inline const ptree* find_deep(const ptree& node, std::string_view local) {
    for (const auto& [key, value] : node) {
        if (key == "<xmlattr>" || key == "<xmlcomment>") continue;
        if (local_name(key) == local) return &value;
        if (const auto* hit = find_deep(value, local)) return hit;
    }
    return nullptr;
}

// Collects (element local name, node) pairs for every descendant.
template <typename Fn>
void walk(const ptree& node, Fn&& fn) {
    for (const auto& [key, value] : node) {
        if (key == "<xmlattr>" || key == "<xmlcomment>") continue;
        fn(local_name(key), value);
        walk(value, fn);
    }
}

inline std::string trim(std::string s) {
    auto b = s.find_first_not_of(" \t\r\n");
    auto e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

// rdf:resource values under bqbiol:is qualifiers.
inline std::vector<std::string> bqbiol_is_resources(const ptree& annotation) {
    std::vector<std::string> out;
    walk(annotation, [&](std::string_view name, const ptree& node) {
        if (name != "is") return;
        walk(node, [&](std::string_view inner, const ptree& li) {
            if (inner != "li") return;
            if (auto r = attr(li, "resource")) out.push_back(*r);
        });
    });
    return out;
}

// Every rdf:resource anywhere below the node.
inline std::vector<std::string> all_resources(const ptree& annotation) {
    std::vector<std::string> out;
    walk(annotation, [&](std::string_view, const ptree& node) {
        if (auto r = attr(node, "resource")) out.push_back(*r);
    });
    return out;
}

}  // namespace sbml_detail

// Entrez gene id from identifiers.org or MIRIAM URN shapes, e.g.
// "http://identifiers.org/ncbigene/2475", "urn:miriam:entrez.gene:2475".
inline std::optional<EntrezId> entrez_from_uri(std::string_view uri) {
    std::string lower;
    for (char c : uri) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (lower.find("ncbigene") == std::string::npos && lower.find("entrez") == std::string::npos) return std::nullopt;
    std::size_t end = uri.size();
    while (end > 0 && (uri[end - 1] == '/' || uri[end - 1] == ' ')) --end;
    std::size_t begin = end;
    while (begin > 0 && std::isdigit(static_cast<unsigned char>(uri[begin - 1]))) --begin;
    if (begin == end || end - begin > 15) return std::nullopt;
    return std::stoll(std::string(uri.substr(begin, end - begin)));
}

// Normalizes "SBO:0000216", "SBO_0000216", "SBO%3A0000216", "216" to "SBO:0000216".
inline std::optional<TermId> normalize_sbo_term(std::string_view s) {
    static const std::regex pattern(R"(^(?:SBO(?::|_|%3A))?(\d{1,7})$)", std::regex::icase);
    std::cmatch m;
    std::string str(s);
    str = sbml_detail::trim(str);
    if (!std::regex_match(str.c_str(), m, pattern)) return std::nullopt;
    char buf[16];
    std::snprintf(buf, sizeof buf, "SBO:%07d", std::stoi(m[1].str()));
    return std::string(buf);
}

// SBO or GO term referenced by an annotation URI, if any.
inline std::optional<TermId> term_from_uri(std::string_view uri) {
    static const std::regex pattern(R"((SBO|GO)(?::|_|%3A)(\d{7}))", std::regex::icase);
    std::cmatch m;
    std::string str(uri);
    if (!std::regex_search(str.c_str(), m, pattern)) return std::nullopt;
    std::string prefix = m[1].str();
    for (auto& c : prefix) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return prefix + ":" + m[2].str();
}

// Reads the SBML subset: compartments, species (with Entrez bqbiol:is
// annotations and constituent lists), reactions (sboTerm plus SBO/GO
// annotation URIs) and their reactant/product/modifier references.
// Unknown model-level elements are skipped with a warning.
inline Pathway parse_sbml(std::string_view xml, Diagnostics* diag = nullptr, const std::string& source = "sbml") {
    using sbml_detail::attr;
    using sbml_detail::child;
    using sbml_detail::ptree;

    ptree tree;
    try {
        std::istringstream in{std::string(xml)};
        boost::property_tree::read_xml(in, tree);
    } catch (const boost::property_tree::xml_parser_error& e) {
        throw ParseError(source, e.line(), "malformed XML: " + e.message());
    }

    const ptree* model = sbml_detail::find_deep(tree, "model");
    if (!model) throw ParseError(source, 0, "no <model> element");

    Pathway p(attr(*model, "name").value_or(attr(*model, "id").value_or(source)));

    static const std::set<std::string, std::less<>> known{
        "<xmlattr>",       "<xmlcomment>",        "notes",          "annotation",   "listOfCompartments",
        "listOfSpecies",   "listOfReactions",     "listOfUnitDefinitions", "listOfParameters",
        "listOfRules",     "listOfFunctionDefinitions", "listOfInitialAssignments", "listOfConstraints",
        "listOfEvents",    "listOfCompartmentTypes", "listOfSpeciesTypes"};
    for (const auto& [key, value] : *model) {
        if (key == "<xmlattr>" || key == "<xmlcomment>") continue;
        if (!known.contains(sbml_detail::local_name(key)))
            warn(diag, source + ": skipping unknown model element <" + key + ">");
    }

    if (const auto* list = child(*model, "listOfCompartments"))
        for (const auto& [key, node] : *list) {
            if (sbml_detail::local_name(key) != "compartment") continue;
            auto id = attr(node, "id");
            if (!id) throw ParseError(source, 0, "compartment without id");
            p.add_compartment({*id, attr(node, "name").value_or(*id)});
        }

    // Constituent lists are applied after every species exists.
    std::vector<std::pair<std::string, std::vector<std::string>>> constituent_lists;
    std::vector<std::pair<std::string, std::string>> complex_membership;  // (member, complex)

    if (const auto* list = child(*model, "listOfSpecies"))
        for (const auto& [key, node] : *list) {
            if (sbml_detail::local_name(key) != "species") continue;
            auto id = attr(node, "id");
            if (!id) throw ParseError(source, 0, "species without id");
            Species s;
            s.id = *id;
            s.name = attr(node, "name").value_or(*id);
            if (auto c = attr(node, "compartment"); c && !c->empty()) {
                if (!p.find_compartment(*c)) {
                    warn(diag, source + ": species '" + *id + "' references undeclared compartment '" + *c + "'");
                    p.add_compartment({*c, *c});
                }
                s.compartment = *c;
            }
            if (const auto* ann = child(node, "annotation")) {
                for (const auto& uri : sbml_detail::bqbiol_is_resources(*ann))
                    if (auto e = entrez_from_uri(uri)) s.entrez_signature.insert(*e);
                std::vector<std::string> parts;
                bool has_list = false;
                sbml_detail::walk(*ann, [&](std::string_view name, const ptree& n) {
                    if (name == "constituents") has_list = true;
                    if (name == "constituent")
                        if (auto ref = attr(n, "species")) parts.push_back(*ref);
                    // CellDesigner marks included species with the id of their complex.
                    if (name == "complexSpecies") {
                        auto text = sbml_detail::trim(n.data());
                        if (!text.empty()) complex_membership.emplace_back(*id, text);
                    }
                });
                if (has_list) constituent_lists.emplace_back(*id, std::move(parts));
            }
            p.add_species(std::move(s));
        }

    std::map<std::string, std::vector<std::string>> members;
    for (auto& [member, complex] : complex_membership)
        if (p.find_species(complex) && complex != member) members[complex].push_back(member);
    for (auto& [complex, list] : constituent_lists) {
        auto& all = members[complex];
        all.insert(all.end(), list.begin(), list.end());
    }
    for (auto& [complex, list] : members) {
        for (const auto& m : list)
            if (!p.find_species(m))
                throw ParseError(source, 0, "species '" + complex + "' lists undeclared constituent '" + m + "'");
        p.set_constituents(complex, list);
    }

    if (const auto* list = child(*model, "listOfReactions")) {
        std::size_t reaction_no = 0;
        for (const auto& [key, node] : *list) {
            if (sbml_detail::local_name(key) != "reaction") continue;
            ++reaction_no;
            auto id = attr(node, "id");
            if (!id) throw ParseError(source, 0, "reaction #" + std::to_string(reaction_no) + " without id");
            Reaction r;
            r.id = *id;
            if (auto sbo = attr(node, "sboTerm")) {
                if (auto t = normalize_sbo_term(*sbo))
                    r.sbo_signature.insert(*t);
                else
                    warn(diag, source + ": reaction '" + *id + "' has unreadable sboTerm '" + *sbo + "'");
            }
            if (const auto* ann = child(node, "annotation")) {
                for (const auto& uri : sbml_detail::all_resources(*ann))
                    if (auto t = term_from_uri(uri)) r.sbo_signature.insert(*t);
                if (const auto* et = sbml_detail::find_deep(*ann, "eventType")) {
                    auto text = sbml_detail::trim(et->data());
                    if (!text.empty()) r.source_event_type = text;
                }
            }
            p.add_reaction(std::move(r));

            static const std::pair<const char*, Role> lists[] = {
                {"listOfReactants", Role::reactant}, {"listOfProducts", Role::product},
                {"listOfModifiers", Role::modifier}};
            for (const auto& [list_name, role] : lists) {
                const auto* refs = child(node, list_name);
                if (!refs) continue;
                std::size_t ref_no = 0;
                for (const auto& [rk, ref] : *refs) {
                    auto ln = sbml_detail::local_name(rk);
                    if (ln != "speciesReference" && ln != "modifierSpeciesReference") continue;
                    ++ref_no;
                    auto sp = attr(ref, "species");
                    std::string loc = "reaction '" + *id + "' " + list_name + "/" + std::string(ln) + "[" +
                                      std::to_string(ref_no) + "]";
                    if (!sp) throw ParseError(source, 0, loc + ": missing species attribute");
                    if (!p.find_species(*sp))
                        throw ParseError(source, 0, loc + ": dangling reference to species '" + *sp + "'");
                    p.add_edge(*sp, *id, role);
                }
            }
        }
    }
    return p;
}

namespace sbml_detail {

inline std::string escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            case '\n': out += "&#10;"; break;
            case '\t': out += "&#9;"; break;
            case '\r': out += "&#13;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

template <typename T>
std::vector<const T*> sorted_by_id(const std::vector<T>& items) {
    std::vector<const T*> out;
    for (const auto& i : items) out.push_back(&i);
    std::sort(out.begin(), out.end(), [](const T* a, const T* b) { return a->id < b->id; });
    return out;
}

inline void write_rdf(std::string& out, const std::string& metaid, const std::vector<std::string>& uris,
                      const std::string& indent) {
    out += indent + "<rdf:RDF xmlns:rdf=\"http://www.w3.org/1999/02/22-rdf-syntax-ns#\" "
                    "xmlns:bqbiol=\"http://biomodels.net/biology-qualifiers/\">\n";
    out += indent + "  <rdf:Description rdf:about=\"#" + escape(metaid) + "\">\n";
    out += indent + "    <bqbiol:is>\n";
    out += indent + "      <rdf:Bag>\n";
    for (const auto& u : uris) out += indent + "        <rdf:li rdf:resource=\"" + escape(u) + "\"/>\n";
    out += indent + "      </rdf:Bag>\n";
    out += indent + "    </bqbiol:is>\n";
    out += indent + "  </rdf:Description>\n";
    out += indent + "</rdf:RDF>\n";
}

}  // namespace sbml_detail

// Serializes as SBML Level 3 Version 1 core. Elements are ordered by id,
// species references by (role list, species id), so output is byte-stable.
inline std::string write_sbml(const Pathway& p) {
    using sbml_detail::escape;
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<sbml xmlns=\"http://www.sbml.org/sbml/level3/version1/core\" level=\"3\" version=\"1\">\n";
    out += "  <model id=\"model\" name=\"" + escape(p.source_name()) + "\">\n";

    out += "    <listOfCompartments>\n";
    for (const auto* c : sbml_detail::sorted_by_id(p.compartments()))
        out += "      <compartment id=\"" + escape(c->id) + "\" name=\"" + escape(c->name) + "\" constant=\"true\"/>\n";
    out += "    </listOfCompartments>\n";

    out += "    <listOfSpecies>\n";
    for (const auto* s : sbml_detail::sorted_by_id(p.species())) {
        out += "      <species id=\"" + escape(s->id) + "\" metaid=\"meta_" + escape(s->id) + "\" name=\"" +
               escape(s->name) + "\"";
        if (s->compartment) out += " compartment=\"" + escape(*s->compartment) + "\"";
        out += " hasOnlySubstanceUnits=\"false\" boundaryCondition=\"false\" constant=\"false\"";
        if (s->entrez_signature.empty() && s->constituents.empty()) {
            out += "/>\n";
            continue;
        }
        out += ">\n        <annotation>\n";
        if (!s->entrez_signature.empty()) {
            std::vector<std::string> uris;
            for (auto e : s->entrez_signature) uris.push_back("http://identifiers.org/ncbigene/" + std::to_string(e));
            sbml_detail::write_rdf(out, "meta_" + s->id, uris, "          ");
        }
        if (!s->constituents.empty()) {
            out += "          <pathcur:constituents xmlns:pathcur=\"" + std::string(kPathcurNamespace) + "\">\n";
            for (const auto& c : s->constituents)
                out += "            <pathcur:constituent species=\"" + escape(c) + "\"/>\n";
            out += "          </pathcur:constituents>\n";
        }
        out += "        </annotation>\n      </species>\n";
    }
    out += "    </listOfSpecies>\n";

    out += "    <listOfReactions>\n";
    for (const auto* r : sbml_detail::sorted_by_id(p.reactions())) {
        out += "      <reaction id=\"" + escape(r->id) + "\" metaid=\"meta_" + escape(r->id) + "\"";
        if (r->source_event_type) out += " name=\"" + escape(*r->source_event_type) + "\"";
        for (const auto& t : r->sbo_signature)
            if (t.starts_with("SBO:")) {
                out += " sboTerm=\"" + escape(t) + "\"";
                break;
            }
        out += " reversible=\"false\"";
        const bool annotated = !r->sbo_signature.empty() || r->source_event_type;
        auto neighbors = p.neighbors(r->id);
        if (!annotated && neighbors.empty()) {
            out += "/>\n";
            continue;
        }
        out += ">\n";
        if (annotated) {
            out += "        <annotation>\n";
            if (!r->sbo_signature.empty()) {
                std::vector<std::string> uris;
                for (const auto& t : r->sbo_signature) uris.push_back("http://identifiers.org/" + t);
                sbml_detail::write_rdf(out, "meta_" + r->id, uris, "          ");
            }
            if (r->source_event_type)
                out += "          <pathcur:eventType xmlns:pathcur=\"" + std::string(kPathcurNamespace) + "\">" +
                       escape(*r->source_event_type) + "</pathcur:eventType>\n";
            out += "        </annotation>\n";
        }
        static const std::pair<Role, const char*> lists[] = {
            {Role::reactant, "listOfReactants"}, {Role::product, "listOfProducts"}, {Role::modifier, "listOfModifiers"}};
        for (const auto& [role, name] : lists) {
            std::string body;
            for (const auto& n : neighbors) {
                if (n.role != role) continue;
                if (role == Role::modifier)
                    body += "          <modifierSpeciesReference species=\"" + escape(n.species_id) + "\"/>\n";
                else
                    body += "          <speciesReference species=\"" + escape(n.species_id) +
                            "\" stoichiometry=\"1\" constant=\"true\"/>\n";
            }
            if (body.empty()) continue;
            out += std::string("        <") + name + ">\n" + body + "        </" + name + ">\n";
        }
        out += "      </reaction>\n";
    }
    out += "    </listOfReactions>\n";
    out += "  </model>\n</sbml>\n";
    return out;
}

}  // namespace pathcur
