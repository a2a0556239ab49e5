#include <asymnet/cli.hpp>

#include <asymnet/pipeline.hpp>

#include <CLI11.hpp>
#include <omp.h>

#include <fstream>
#include <iostream>
#include <map>
#include <set>

namespace asymnet::cli {

namespace {

// Flat "key = value" file; '#' and ';' start comments.
std::map<std::string, std::string> read_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config file " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t line_no = 0;
    auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t\r");
        auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++line_no;
        auto t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';')
            continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key = value");
        auto key = trim(t.substr(0, eq));
        auto value = trim(t.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        if (key.empty())
            throw ConfigError(path + ":" + std::to_string(line_no) + ": empty key");
        kv[key] = value;
    }
    return kv;
}

std::string long_name(const CLI::Option* opt)
{
    const auto& names = opt->get_lnames();
    return names.empty() ? std::string() : names.front();
}

// Fills options not given on the command line from the config file.
void apply_config(CLI::App& app, CLI::App* active, const std::map<std::string, std::string>& kv)
{
    std::set<std::string> known;
    auto collect = [&](CLI::App* a) {
        for (const CLI::Option* o : a->get_options())
            if (auto n = long_name(o); !n.empty())
                known.insert(n);
    };
    collect(&app);
    for (CLI::App* sub : app.get_subcommands({}))
        collect(sub);

    for (const auto& [key, value] : kv) {
        if (!known.count(key) || key == "config" || key == "help" || key == "version")
            throw ConfigError("unknown config key '" + key + "'");
        CLI::Option* opt = active ? active->get_option_no_throw("--" + key) : nullptr;
        if (!opt)
            opt = app.get_option_no_throw("--" + key);
        if (!opt || opt->count() > 0)
            continue; // belongs to another stage, or overridden on the command line
        try {
            opt->add_result(value);
            opt->run_callback();
        } catch (const CLI::Error& e) {
            throw ConfigError("config key '" + key + "': " + e.what());
        }
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    std::string config_path;
    std::uint64_t seed = 0;

    CLI::App app{"Asymmetric-opinion analysis of message networks: language features, structural context "
                 "and directed balance"};
    app.name("asymnet");
    app.set_version_flag("--version", std::string("asymnet ") + ASYMNET_VERSION);
    app.require_subcommand(1);
    app.add_option("--config", config_path, "Flat key = value file; command-line flags take precedence");
    app.add_option("--threads", cfg.threads, "Worker threads (0: OpenMP default)")->check(CLI::NonNegativeNumber);

    auto add_lm = [&](CLI::App* s) {
        s->add_option("--lexicon", cfg.lexicon, "Sentiment lexicon (word<TAB>polarity)");
        s->add_option("--lm-order", cfg.lm.order, "Language model order")->check(CLI::PositiveNumber);
        s->add_option("--lm-k", cfg.lm.k, "Add-k smoothing constant")->check(CLI::PositiveNumber);
        s->add_option("--lm-min-count", cfg.lm.min_count, "Vocabulary cutoff");
    };
    auto add_ingest = [&](CLI::App* s) {
        s->add_option("--input", cfg.input, "Corpus file or maildir root");
        s->add_option("--format", cfg.format, "jsonl|maildir")->check(CLI::IsMember({"jsonl", "maildir"}));
        s->add_option("--domain-suffix", cfg.domain_suffix, "Keep only addresses ending with this suffix");
        s->add_option("--min-bidirectional", cfg.min_bidirectional, "Minimum messages in each direction")
            ->check(CLI::PositiveNumber);
        s->add_flag("--strict", cfg.strict, "Abort on the first malformed input line");
    };
    auto add_mode_feature = [&](CLI::App* s) {
        s->add_option("--mode", cfg.mode, "traditional|extended")->check(CLI::IsMember({"traditional", "extended"}));
        s->add_option("--feature", cfg.feature, "frequency|length|quality|sentiment")
            ->check(CLI::IsMember({"frequency", "length", "quality", "sentiment"}));
    };
    auto add_sweep = [&](CLI::App* s) {
        s->add_option("--sweep", cfg.sweep, "auto or comma-separated thresholds");
        s->add_option("--sweep-points", cfg.sweep_points, "Quantile count for --sweep auto")
            ->check(CLI::PositiveNumber);
    };

    auto* ingest = app.add_subcommand("ingest", "Parse and filter a message corpus into canonical JSON Lines");
    add_ingest(ingest);
    ingest->add_option("--out", cfg.out, "Output corpus.jsonl");

    auto* features = app.add_subcommand("features", "Compute per-pair language features");
    features->add_option("--corpus", cfg.corpus, "Canonical corpus");
    add_lm(features);
    features->add_option("--out", cfg.out, "Output features.csv");

    auto* normalize = app.add_subcommand("normalize", "Remove individual language habits");
    normalize->add_option("--features", cfg.features, "features.csv");
    normalize->add_option("--out", cfg.out, "Output normalized.csv");
    normalize->add_option("--edges-out", cfg.edges_out, "Edge asymmetry file (default <out>_edges.csv)");

    auto* structure = app.add_subcommand("structure", "Degree, clustering and embeddedness");
    structure->add_option("--corpus", cfg.corpus, "Canonical corpus");
    structure->add_option("--out", cfg.out, "Output structure.csv");

    auto* balance = app.add_subcommand("balance", "Balanced-triad fraction over a threshold sweep");
    balance->add_option("--normalized", cfg.normalized, "normalized.csv");
    add_mode_feature(balance);
    add_sweep(balance);
    balance->add_option("--out", cfg.out, "Output curve.csv");

    auto* correlate = app.add_subcommand("correlate", "Pearson correlation of structure vs asymmetry");
    correlate->add_option("--structure", cfg.structure, "structure.csv");
    correlate->add_option("--normalized", cfg.normalized, "normalized.csv");
    correlate->add_option("--out", cfg.out, "Output report.csv");
    correlate->add_option("--curves", cfg.curves_out, "Optional binned curves output");
    correlate->add_option("--bins", cfg.bins, "Bins per curve")->check(CLI::PositiveNumber);

    auto* exporter = app.add_subcommand("export", "Graphviz rendering input with balance highlighting");
    exporter->add_option("--normalized", cfg.normalized, "normalized.csv");
    add_mode_feature(exporter);
    exporter->add_option("--threshold", cfg.threshold, "auto or a number");
    exporter->add_option("--out", cfg.out, "Output .dot file");

    auto* all = app.add_subcommand("all", "Run every stage into --out-dir");
    add_ingest(all);
    add_lm(all);
    add_sweep(all);
    all->add_option("--feature", cfg.feature, "Feature drawn in the .dot exports")
        ->check(CLI::IsMember({"frequency", "length", "quality", "sentiment"}));
    all->add_option("--threshold", cfg.threshold, "Export threshold: auto or a number");
    all->add_option("--bins", cfg.bins, "Bins per curve")->check(CLI::PositiveNumber);
    all->add_option("--out-dir", cfg.out_dir, "Artifact directory");
    auto* seed_opt = all->add_option("--seed", seed, "Seed for the random-baseline check");

    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        CLI::App* active = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front();
        if (!config_path.empty())
            apply_config(app, active, read_config_file(config_path));
        if (seed_opt->count() > 0)
            cfg.seed = seed;
        if (cfg.threads > 0)
            omp_set_num_threads(cfg.threads);

        if (active == ingest)
            run_ingest(cfg, err);
        else if (active == features)
            run_features(cfg, err);
        else if (active == normalize)
            run_normalize(cfg, err);
        else if (active == structure)
            run_structure(cfg, err);
        else if (active == balance)
            run_balance(cfg, err);
        else if (active == correlate)
            run_correlate(cfg, err);
        else if (active == exporter)
            run_export(cfg, err);
        else if (active == all)
            run_all(cfg, err);
        return kOk;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kConfigError;
    } catch (const InputError& e) {
        err << "asymnet: error: " << e.what() << '\n';
        return kMissingInput;
    } catch (const ConfigError& e) {
        err << "asymnet: config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const EmptyDomainError& e) {
        err << "asymnet: empty analysis domain: " << e.what() << '\n';
        return kEmptyDomain;
    } catch (const std::exception& e) {
        err << "asymnet: error: " << e.what() << '\n';
        return kFailure;
    }
}

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv, argv + argc);
    return run(args, std::cout, std::cerr);
}

} // namespace asymnet::cli
