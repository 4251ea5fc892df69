#pragma once

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "pathcur/annotate.hpp"
#include "pathcur/converter.hpp"
#include "pathcur/errors.hpp"
#include "pathcur/matching.hpp"
#include "pathcur/model.hpp"
#include "pathcur/ontology.hpp"
#include "pathcur/report.hpp"
#include "pathcur/sbml.hpp"
#include "pathcur/scoring.hpp"
#include "pathcur/standoff.hpp"

#ifndef PATHCUR_DATA_DIR
#define PATHCUR_DATA_DIR "data"
#endif

namespace pathcur {

namespace fs = std::filesystem;

enum class LogLevel { quiet, warn, info };

struct RunConfig {
    std::string subcommand;
    std::vector<fs::path> inputs;  // standoff dir (convert) or SBML files
    std::optional<fs::path> target;
    std::string strategies = "all24";

    fs::path data_dir = PATHCUR_DATA_DIR;
    std::optional<fs::path> ontology;
    std::optional<fs::path> rules;
    std::optional<fs::path> mapping;
    std::optional<fs::path> prefixes;
    std::optional<fs::path> lexicon;

    std::string resolver = "null";  // null | lexicon | remote
    std::string endpoint;           // falls back to $PATHCUR_RESOLVER_URL
    std::optional<fs::path> cache;
    bool deduce_target_terms = false;

    std::string format = "csv";  // csv | json
    std::optional<fs::path> out;
    int similarity_threshold = kDefaultSimilarityThreshold;
    unsigned threads = 0;  // 0 = hardware concurrency
    LogLevel log_level = LogLevel::warn;
};

inline std::string read_text_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw DataError("write to '" + path.string() + "' failed");
}

// Tables resolved against the data directory unless overridden.
struct DataTables {
    ConversionRules rules;
    SboMappingTable mapping;
    StatePrefixTable prefixes;
    OntologyGraph ontology;
};

inline fs::path table_path(const RunConfig& cfg, const std::optional<fs::path>& override_path, const char* file) {
    return override_path ? *override_path : cfg.data_dir / file;
}

inline DataTables load_tables(const RunConfig& cfg, Diagnostics* diag) {
    DataTables t;
    auto rules = table_path(cfg, cfg.rules, "conversion_rules.txt");
    t.rules = parse_rules(read_text_file(rules), rules.string());
    auto mapping = table_path(cfg, cfg.mapping, "sbo_mapping.tsv");
    try {
        t.mapping = SboMappingTable::parse(read_text_file(mapping), mapping.string());
    } catch (const ParseError& e) {
        throw ConfigError(e.what());
    }
    auto prefixes = table_path(cfg, cfg.prefixes, "state_prefixes.tsv");
    try {
        t.prefixes = StatePrefixTable::parse(read_text_file(prefixes), prefixes.string());
    } catch (const ParseError& e) {
        throw ConfigError(e.what());
    }
    auto onto = table_path(cfg, cfg.ontology, "sbo_reaction_subset.obo");
    t.ontology = load_obo(read_text_file(onto), diag, onto.string());
    return t;
}

inline unsigned worker_count(const RunConfig& cfg) {
    if (cfg.threads > 0) return cfg.threads;
    return std::max(1u, std::thread::hardware_concurrency());
}

// Reads every <base>.txt in a directory with its .a1/.a2 companions, sorted by
// basename. A missing .a1 or .a2 counts as an empty annotation file.
inline std::vector<StandoffDocument> load_standoff_dir(const fs::path& dir, Diagnostics* diag) {
    if (!fs::is_directory(dir)) throw ConfigError("'" + dir.string() + "' is not a directory");
    std::vector<fs::path> texts;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".txt") texts.push_back(entry.path());
    std::sort(texts.begin(), texts.end());
    std::vector<StandoffDocument> docs;
    for (const auto& txt : texts) {
        auto companion = [&](const char* ext) -> std::string {
            auto p = fs::path(txt).replace_extension(ext);
            if (fs::exists(p)) return read_text_file(p);
            warn(diag, p.string() + ": missing, treated as empty");
            return {};
        };
        std::string a1 = companion(".a1");
        std::string a2 = companion(".a2");
        docs.push_back(parse_standoff(read_text_file(txt), a1, a2, txt.stem().string(), diag));
    }
    return docs;
}

// Loads an SBML file, names the pathway after the file stem and normalizes
// species names with the configured prefix vocabulary.
inline Pathway load_pathway(const fs::path& path, const StatePrefixTable& prefixes, Diagnostics* diag) {
    if (!fs::exists(path)) throw ConfigError("'" + path.string() + "' does not exist");
    Pathway p = parse_sbml(read_text_file(path), diag, path.string());
    p.set_source_name(path.stem().string());
    p.renormalize(prefixes.prefixes());
    return p;
}

inline GeneResolver make_resolver(const RunConfig& cfg) {
    if (cfg.resolver == "null") return GeneResolver::null_resolver();
    if (cfg.resolver == "lexicon") {
        auto path = table_path(cfg, cfg.lexicon, "lexicon.tsv");
        try {
            return GeneResolver::from_lexicon_text(read_text_file(path), path.string());
        } catch (const ParseError& e) {
            throw ConfigError(e.what());
        }
    }
    if (cfg.resolver == "remote") {
        std::string endpoint = cfg.endpoint;
        if (endpoint.empty())
            if (const char* env = std::getenv("PATHCUR_RESOLVER_URL")) endpoint = env;
        if (endpoint.empty()) throw ConfigError("remote resolver needs --endpoint or PATHCUR_RESOLVER_URL");
        return GeneResolver::remote(endpoint, cfg.cache);
    }
    throw ConfigError("unknown resolver mode '" + cfg.resolver + "'");
}

// Each subcommand returns its output text; run() only routes it.

inline std::string convert_command(const RunConfig& cfg, const DataTables& t, Diagnostics* diag) {
    if (cfg.inputs.size() != 1) throw ConfigError("convert takes exactly one standoff directory");
    auto docs = load_standoff_dir(cfg.inputs.front(), diag);
    ConversionLog log;
    Pathway p = convert_corpus(docs, t.rules, &log, worker_count(cfg), cfg.inputs.front().filename().string());
    for (const auto& m : log.messages) warn(diag, m);
    for (const auto& e : log.errors) warn(diag, "skipped document: " + e);
    return write_sbml(p);
}

inline std::string annotate_command(const RunConfig& cfg, const DataTables& t, Diagnostics* diag) {
    if (cfg.inputs.size() != 1) throw ConfigError("annotate takes exactly one SBML file");
    Pathway p = load_pathway(cfg.inputs.front(), t.prefixes, diag);
    p = annotate_reactions(std::move(p), t.mapping);
    if (cfg.deduce_target_terms) p = annotate_target_reactions(std::move(p), t.prefixes, &t.ontology, diag);
    GeneResolver resolver = make_resolver(cfg);
    if (resolver.mode() != GeneResolver::Mode::null) {
        p = annotate_species(std::move(p), resolver, diag, true);
        if (resolver.mode() == GeneResolver::Mode::remote && cfg.cache) resolver.save_cache();
    }
    return write_sbml(p);
}

inline std::string stats_command(const RunConfig& cfg, const DataTables& t, Diagnostics* diag) {
    if (cfg.inputs.empty()) throw ConfigError("stats needs at least one SBML file");
    if (cfg.format == "json") {
        nlohmann::ordered_json j = nlohmann::ordered_json::object();
        for (const auto& in : cfg.inputs) {
            Pathway p = load_pathway(in, t.prefixes, diag);
            j[p.source_name()] = to_json(stats(p));
        }
        return j.dump(2) + "\n";
    }
    std::string out = std::string("pathway,") + stats_csv_columns() + "\n";
    for (const auto& in : cfg.inputs) {
        Pathway p = load_pathway(in, t.prefixes, diag);
        out += stats_csv_row(p.source_name(), stats(p));
    }
    return out;
}

inline Pathway load_target(const RunConfig& cfg, const DataTables& t, Diagnostics* diag) {
    if (!cfg.target) throw ConfigError(cfg.subcommand + " needs --target");
    return load_pathway(*cfg.target, t.prefixes, diag);
}

inline std::string compare_command(const RunConfig& cfg, const DataTables& t, Diagnostics* diag) {
    if (cfg.inputs.size() != 1) throw ConfigError("compare takes exactly one extracted SBML file");
    auto strategies = parse_strategy_list(cfg.strategies, cfg.similarity_threshold);
    Pathway extracted = load_pathway(cfg.inputs.front(), t.prefixes, diag);
    Pathway target = load_target(cfg, t, diag);
    OverlapEngine engine(extracted, target, t.ontology);
    std::vector<MatchReport> reports;
    for (const auto& s : strategies) reports.push_back(engine.run(s));
    if (cfg.format == "json") return reports_to_json(reports);
    std::vector<ScoreReport> scores;
    for (const auto& r : reports) scores.push_back(score(r));
    return scores_to_csv(scores);
}

inline std::string grid_command(const RunConfig& cfg, const DataTables& t, Diagnostics* diag) {
    if (cfg.inputs.empty()) throw ConfigError("grid needs at least one extracted SBML file");
    auto strategies = parse_strategy_list(cfg.strategies, cfg.similarity_threshold);
    std::vector<Pathway> extracted;
    std::map<std::string, std::string> seen;
    for (const auto& in : cfg.inputs) {
        extracted.push_back(load_pathway(in, t.prefixes, diag));
        auto [it, fresh] = seen.emplace(extracted.back().source_name(), in.string());
        if (!fresh)
            throw ConfigError("'" + in.string() + "' and '" + it->second + "' share the name '" + it->first + "'");
    }
    Pathway target = load_target(cfg, t, diag);
    std::vector<const Pathway*> ptrs;
    for (const auto& p : extracted) ptrs.push_back(&p);
    GridResult g = grid(ptrs, target, strategies, t.ontology, worker_count(cfg));
    if (cfg.format == "json") return grid_to_json(g);
    return grid_to_csv(g) + "\n" + grid_best_to_csv(g) + "\n" + histogram_to_csv(g);
}

inline std::string execute(const RunConfig& cfg, Diagnostics* diag) {
    if (cfg.format != "csv" && cfg.format != "json") throw ConfigError("unknown format '" + cfg.format + "'");
    if (cfg.similarity_threshold < 0 || cfg.similarity_threshold > 100)
        throw ConfigError("similarity threshold must lie in 0..100");
    for (const auto& in : cfg.inputs)
        if (!fs::exists(in)) throw ConfigError("'" + in.string() + "' does not exist");
    if (cfg.target && !fs::exists(*cfg.target)) throw ConfigError("'" + cfg.target->string() + "' does not exist");

    static const std::map<std::string, std::string (*)(const RunConfig&, const DataTables&, Diagnostics*)> commands{
        {"convert", convert_command}, {"annotate", annotate_command}, {"stats", stats_command},
        {"compare", compare_command}, {"grid", grid_command}};
    auto it = commands.find(cfg.subcommand);
    if (it == commands.end()) throw ConfigError("unknown subcommand '" + cfg.subcommand + "'");
    // Strategy labels are validated before any data is read.
    if (cfg.subcommand == "compare" || cfg.subcommand == "grid") parse_strategy_list(cfg.strategies);
    DataTables tables = load_tables(cfg, diag);
    return it->second(cfg, tables, diag);
}

// Exit status: 0 success, 1 data error, 2 configuration error.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    Diagnostics diag;
    auto flush_log = [&] {
        if (cfg.log_level == LogLevel::quiet) return;
        for (const auto& w : diag.warnings) err << "warning: " << w << "\n";
    };
    try {
        std::string text = execute(cfg, &diag);
        flush_log();
        if (cfg.out) write_text_file(*cfg.out, text);
        else out << text;
        if (cfg.log_level == LogLevel::info) err << "info: " << cfg.subcommand << " done\n";
        return 0;
    } catch (const ConfigError& e) {
        flush_log();
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const DataError& e) {
        flush_log();
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace pathcur
