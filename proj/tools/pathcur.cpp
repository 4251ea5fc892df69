// pathcur: convert event-extraction output to SBML and score pathway overlap.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "pathcur/pipeline.hpp"

int main(int argc, char** argv) {
    using pathcur::RunConfig;
    RunConfig cfg;
    std::string log_level = "warn";
    std::string ontology, rules, mapping, prefixes, lexicon, cache, out, target;

    CLI::App app{"pathcur: standoff to SBML conversion and pathway overlap scoring"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    auto shared = [&](CLI::App* sub) {
        sub->add_option("--data-dir", cfg.data_dir, "Root of the data tables");
        sub->add_option("--ontology", ontology, "OBO file (default: <data-dir>/sbo_reaction_subset.obo)");
        sub->add_option("--rules", rules, "Conversion rules file");
        sub->add_option("--mapping", mapping, "Event type to SBO/GO table");
        sub->add_option("--prefixes", prefixes, "State prefix table");
        sub->add_option("--threads", cfg.threads, "Worker threads (0 = all processors)");
        sub->add_option("-o,--out", out, "Write output here instead of standard output");
        sub->add_option("--log-level", log_level, "quiet, warn or info")
            ->check(CLI::IsMember({"quiet", "warn", "info"}));
    };
    auto scoring = [&](CLI::App* sub, const char* strategy_flag) {
        sub->add_option("--target", target, "Reference SBML")->required();
        sub->add_option(strategy_flag, cfg.strategies, "Strategy label, ';'-separated labels, or all24");
        sub->add_option("--threshold", cfg.similarity_threshold, "appeq similarity threshold (0-100)");
        sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    };

    auto* convert = app.add_subcommand("convert", "Standoff directory to SBML");
    convert->add_option("input", cfg.inputs, "Directory of .txt/.a1/.a2 triplets")->required()->expected(1);
    shared(convert);

    auto* annotate = app.add_subcommand("annotate", "Add SBO/GO terms and Entrez ids to an SBML file");
    annotate->add_option("input", cfg.inputs, "SBML file")->required()->expected(1);
    annotate->add_flag("--target", cfg.deduce_target_terms, "Deduce terms from curated reactant/product names");
    annotate->add_option("--resolver", cfg.resolver, "null, lexicon or remote")
        ->check(CLI::IsMember({"null", "lexicon", "remote"}));
    annotate->add_option("--lexicon", lexicon, "Name to Entrez table (default: <data-dir>/lexicon.tsv)");
    annotate->add_option("--endpoint", cfg.endpoint, "Resolver URL (default: $PATHCUR_RESOLVER_URL)");
    annotate->add_option("--cache", cache, "Resolver cache file");
    shared(annotate);

    auto* stats = app.add_subcommand("stats", "Element counts and components");
    stats->add_option("inputs", cfg.inputs, "SBML files")->required();
    stats->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    shared(stats);

    auto* compare = app.add_subcommand("compare", "Score one extracted pathway against a target");
    compare->add_option("input", cfg.inputs, "Extracted SBML")->required()->expected(1);
    scoring(compare, "--strategy,--strategies");
    shared(compare);

    auto* grid = app.add_subcommand("grid", "Score many extracted pathways against a target");
    grid->add_option("inputs", cfg.inputs, "Extracted SBML files")->required();
    scoring(grid, "--strategies,--strategy");
    shared(grid);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    cfg.subcommand = app.get_subcommands().front()->get_name();
    auto opt = [](const std::string& s) { return s.empty() ? std::nullopt : std::optional<pathcur::fs::path>(s); };
    cfg.ontology = opt(ontology);
    cfg.rules = opt(rules);
    cfg.mapping = opt(mapping);
    cfg.prefixes = opt(prefixes);
    cfg.lexicon = opt(lexicon);
    cfg.cache = opt(cache);
    cfg.out = opt(out);
    cfg.target = opt(target);
    static const std::map<std::string, pathcur::LogLevel> levels{
        {"quiet", pathcur::LogLevel::quiet}, {"warn", pathcur::LogLevel::warn}, {"info", pathcur::LogLevel::info}};
    cfg.log_level = levels.at(log_level);
    return pathcur::run(cfg, std::cout, std::cerr);
}
