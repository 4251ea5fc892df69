#pragma once

#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "pathcur/scoring.hpp"

namespace pathcur {

inline std::string fixed1(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", round1(v) + 0.0);
    return buf;
}

inline std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline const char* score_csv_columns() {
    return "species_precision,species_recall,species_f,reaction_precision,reaction_recall,reaction_f,"
           "edge_precision,edge_recall,edge_f,macro_f";
}

inline std::string score_csv_values(const ScoreReport& s) {
    std::string out;
    for (const ClassScore* c : {&s.species, &s.reactions, &s.edges})
        out += fixed1(c->precision) + "," + fixed1(c->recall) + "," + fixed1(c->f) + ",";
    return out + fixed1(s.macro_f);
}

// One row per strategy.
inline std::string scores_to_csv(const std::vector<ScoreReport>& scores) {
    std::string out = std::string("strategy,") + score_csv_columns() + "\n";
    for (const auto& s : scores) out += csv_field(s.strategy) + "," + score_csv_values(s) + "\n";
    return out;
}

inline nlohmann::ordered_json to_json(const ClassCounts& c) {
    return {{"matched_extracted", c.matched_extracted},
            {"total_extracted", c.total_extracted},
            {"matched_target", c.matched_target},
            {"total_target", c.total_target}};
}

inline nlohmann::ordered_json to_json(const ClassScore& c) {
    return {{"precision", round1(c.precision)}, {"recall", round1(c.recall)}, {"f", round1(c.f)}};
}

inline nlohmann::ordered_json to_json(const MatchReport& r, const ScoreReport& s) {
    nlohmann::ordered_json j;
    j["strategy"] = r.strategy;
    j["extracted"] = r.extracted_name;
    j["target"] = r.target_name;
    j["counts"] = {{"species", to_json(r.species)}, {"reactions", to_json(r.reactions)}, {"edges", to_json(r.edges)}};
    j["scores"] = {{"species", to_json(s.species)}, {"reactions", to_json(s.reactions)}, {"edges", to_json(s.edges)}};
    j["macro_f"] = round1(s.macro_f);
    return j;
}

inline std::string reports_to_json(const std::vector<MatchReport>& reports) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) arr.push_back(to_json(r, score(r)));
    return arr.dump(2) + "\n";
}

inline const char* stats_csv_columns() {
    return "species,reactions,compartments,edges,reactant_edges,product_edges,modifier_edges,isolated_species,"
           "components,nonsingleton_components";
}

inline std::string stats_csv_row(const std::string& name, const PathwayStats& s) {
    return csv_field(name) + "," + std::to_string(s.species) + "," + std::to_string(s.reactions) + "," +
           std::to_string(s.compartments) + "," + std::to_string(s.edges) + "," + std::to_string(s.reactant_edges) +
           "," + std::to_string(s.product_edges) + "," + std::to_string(s.modifier_edges) + "," +
           std::to_string(s.isolated_species) + "," + std::to_string(s.components) + "," +
           std::to_string(s.nonsingleton_components) + "\n";
}

inline nlohmann::ordered_json to_json(const PathwayStats& s) {
    return {{"species", s.species},
            {"reactions", s.reactions},
            {"compartments", s.compartments},
            {"edges", s.edges},
            {"reactant_edges", s.reactant_edges},
            {"product_edges", s.product_edges},
            {"modifier_edges", s.modifier_edges},
            {"isolated_species", s.isolated_species},
            {"components", s.components},
            {"nonsingleton_components", s.nonsingleton_components}};
}

inline std::string grid_to_csv(const GridResult& g) {
    std::string out = std::string("pathway,strategy,") + score_csv_columns() + "\n";
    for (std::size_t i = 0; i < g.pathways.size(); ++i)
        for (std::size_t s = 0; s < g.strategies.size(); ++s)
            out += csv_field(g.pathways[i]) + "," + csv_field(g.strategies[s]) + "," +
                   score_csv_values(g.cells[i][s].score) + "\n";
    return out;
}

inline std::string grid_best_to_csv(const GridResult& g) {
    std::string out = "strategy,best_pathways,macro_f\n";
    for (std::size_t s = 0; s < g.strategies.size(); ++s) {
        std::string names;
        for (auto i : g.best[s]) names += (names.empty() ? "" : ";") + g.pathways[i];
        out += csv_field(g.strategies[s]) + "," + csv_field(names) + "," +
               fixed1(g.cells[g.best[s].front()][s].score.macro_f) + "\n";
    }
    return out;
}

inline std::string histogram_to_csv(const GridResult& g) {
    std::string out = "pathway,best_count\n";
    for (const auto& name : g.pathways) out += csv_field(name) + "," + std::to_string(g.histogram.at(name)) + "\n";
    return out;
}

inline std::string grid_to_json(const GridResult& g) {
    nlohmann::ordered_json j;
    j["pathways"] = g.pathways;
    j["strategies"] = g.strategies;
    auto cells = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < g.pathways.size(); ++i)
        for (std::size_t s = 0; s < g.strategies.size(); ++s)
            cells.push_back(to_json(g.cells[i][s].report, g.cells[i][s].score));
    j["cells"] = cells;
    auto best = nlohmann::ordered_json::object();
    for (std::size_t s = 0; s < g.strategies.size(); ++s) {
        std::vector<std::string> names;
        for (auto i : g.best[s]) names.push_back(g.pathways[i]);
        best[g.strategies[s]] = names;
    }
    j["best"] = best;
    auto hist = nlohmann::ordered_json::object();
    for (const auto& name : g.pathways) hist[name] = g.histogram.at(name);
    j["histogram"] = hist;
    return j.dump(2) + "\n";
}

}  // namespace pathcur
