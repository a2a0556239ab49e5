#include <asymnet/pipeline.hpp>

#include <asymnet/corpus.hpp>
#include <asymnet/csv.hpp>
#include <asymnet/dot_export.hpp>
#include <asymnet/graph.hpp>
#include <asymnet/normalize.hpp>
#include <asymnet/stats.hpp>

#include <array>
#include <charconv>
#include <fstream>
#include <functional>
#include <set>
#include <ostream>
#include <sstream>

namespace asymnet {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kBaselineTrials = 100000;
constexpr std::array<double, 5> kBaselineProbabilities = {0.1, 0.3, 0.5, 0.7, 0.9};

void require_path(const fs::path& p, const char* flag)
{
    if (p.empty())
        throw InputError(std::string("missing ") + flag);
}

void require_file(const fs::path& p, const char* flag)
{
    require_path(p, flag);
    std::error_code ec;
    if (!fs::exists(p, ec))
        throw InputError(std::string(flag) + ": no such file " + p.string());
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& emit)
{
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error("cannot write " + path.string());
    emit(out);
    out.flush();
    if (!out)
        throw Error("write failed: " + path.string());
}

std::vector<Message> load_corpus(const fs::path& path, std::ostream& log)
{
    auto parsed = read_jsonl_file(path, ParseMode::lenient);
    if (!parsed.skipped.empty())
        log << "asymnet: " << path.string() << ": skipped " << parsed.skipped.size() << " malformed line(s)\n";
    return std::move(parsed.messages);
}

fs::path sibling(const fs::path& p, const std::string& suffix)
{
    return p.parent_path() / (p.stem().string() + suffix + p.extension().string());
}

} // namespace

Feature require_feature(const std::string& name)
{
    auto f = parse_feature(name);
    if (!f)
        throw ConfigError("unknown feature '" + name + "' (frequency|length|quality|sentiment)");
    return *f;
}

BalanceMode require_mode(const std::string& name)
{
    auto m = parse_balance_mode(name);
    if (!m)
        throw ConfigError("unknown mode '" + name + "' (traditional|extended)");
    return *m;
}

std::vector<double> resolve_sweep(const std::string& spec, const NormalizedMatrix& nm, Feature f, BalanceMode mode,
                                  std::size_t points)
{
    if (spec == "auto")
        return auto_sweep(nm, f, mode, points);
    std::vector<double> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(csv::parse_double(item, 0));
        } catch (const ParseError&) {
            throw ConfigError("bad --sweep value '" + item + "'");
        }
    }
    if (out.empty())
        throw ConfigError("empty --sweep list");
    return out;
}

void run_ingest(const RunConfig& cfg, std::ostream& log)
{
    require_path(cfg.input, "--input");
    require_path(cfg.out, "--out");
    if (cfg.min_bidirectional < 1)
        throw ConfigError("--min-bidirectional must be >= 1");

    ParseResult parsed;
    if (cfg.format == "jsonl") {
        require_file(cfg.input, "--input");
        parsed = read_jsonl_file(cfg.input, cfg.strict ? ParseMode::strict : ParseMode::lenient);
    } else if (cfg.format == "maildir") {
        parsed = parse_maildir(cfg.input);
    } else {
        throw ConfigError("unknown --format '" + cfg.format + "' (jsonl|maildir)");
    }
    for (const auto& s : parsed.skipped)
        log << "asymnet: ingest: skipped " << s.source << ": " << s.reason << '\n';

    auto filtered = filter_corpus(parsed.messages, cfg.domain_suffix, cfg.min_bidirectional);
    for (const auto& w : filtered.warnings)
        log << "asymnet: ingest: warning: " << w << '\n';

    std::size_t mutual = 0;
    std::set<std::string> people;
    for (const auto& [pair, st] : filtered.pairs) {
        mutual += pair.from < pair.to;
        people.insert(pair.from);
    }
    log << "asymnet: ingest: " << parsed.messages.size() << " parsed, " << filtered.messages.size()
        << " retained, " << people.size() << " individuals, " << mutual << " pairs\n";

    write_file(cfg.out, [&](std::ostream& o) { write_jsonl(o, filtered.messages); });
}

void run_features(const RunConfig& cfg, std::ostream& log)
{
    require_file(cfg.corpus, "--corpus");
    require_file(cfg.lexicon, "--lexicon");
    require_path(cfg.out, "--out");

    auto lexicon = SentimentLexicon::load(cfg.lexicon);
    auto messages = load_corpus(cfg.corpus, log);
    auto pairs = index_pairs(messages);
    if (pairs.empty())
        throw EmptyDomainError("corpus has no mutual pairs");

    LanguageModel lm;
    try {
        lm = LanguageModel::train(messages, cfg.lm);
    } catch (const Error& e) {
        throw EmptyDomainError(e.what());
    }
    log << "asymnet: features: " << pairs.size() << " ordered pairs, vocabulary " << lm.vocabulary_size()
        << ", lexicon " << lexicon.size() << " words\n";

    auto fm = build_feature_matrix(messages, pairs, lm, lexicon);
    std::size_t flagged = 0;
    for (const auto& [pair, row] : fm)
        flagged += !row.flags().empty();
    if (flagged)
        log << "asymnet: features: " << flagged << " pair(s) with undefined features\n";
    write_file(cfg.out, [&](std::ostream& o) { write_features_csv(o, fm); });
}

void run_normalize(const RunConfig& cfg, std::ostream& log)
{
    require_file(cfg.features, "--features");
    require_path(cfg.out, "--out");
    auto fm = read_features_csv(cfg.features);
    if (fm.empty())
        throw EmptyDomainError("features file has no pairs");
    auto nm = normalize_feature(fm);
    log << "asymnet: normalize: " << nm.cells().size() << " ordered pairs, " << nm.individuals().size()
        << " individuals\n";
    write_file(cfg.out, [&](std::ostream& o) { write_normalized_csv(o, nm); });
    auto edges = cfg.edges_out.empty() ? sibling(cfg.out, "_edges") : cfg.edges_out;
    write_file(edges, [&](std::ostream& o) { write_edge_asymmetry_csv(o, nm); });
}

void run_structure(const RunConfig& cfg, std::ostream& log)
{
    require_file(cfg.corpus, "--corpus");
    require_path(cfg.out, "--out");
    auto messages = load_corpus(cfg.corpus, log);
    auto g = build_graph(index_pairs(messages));
    if (g.vertex_count() == 0)
        throw EmptyDomainError("corpus has no mutual pairs");
    auto st = compute_structure(g);
    log << "asymnet: structure: " << g.vertex_count() << " vertices, " << g.edge_count() << " edges, "
        << enumerate_triangles(g).size() << " triangles\n";
    write_file(cfg.out, [&](std::ostream& o) { write_structure_csv(o, st); });
}

void run_balance(const RunConfig& cfg, std::ostream& log)
{
    require_file(cfg.normalized, "--normalized");
    require_path(cfg.out, "--out");
    const auto mode = require_mode(cfg.mode);
    const auto f = require_feature(cfg.feature);
    auto nm = read_normalized_csv(cfg.normalized);
    auto sweep = resolve_sweep(cfg.sweep, nm, f, mode, cfg.sweep_points);
    auto curve = balance_curve(nm, f, mode, sweep);
    for (const auto& w : curve.warnings)
        log << "asymnet: balance: warning: " << w << '\n';
    write_file(cfg.out, [&](std::ostream& o) { write_curve_csv(o, curve); });
}

void run_correlate(const RunConfig& cfg, std::ostream& log)
{
    require_file(cfg.structure, "--structure");
    require_file(cfg.normalized, "--normalized");
    require_path(cfg.out, "--out");
    auto st = read_structure_csv(cfg.structure);
    auto nm = read_normalized_csv(cfg.normalized);
    auto report = correlation_report(st, nm);
    std::size_t na = 0;
    for (const auto& c : report.cells)
        na += !c.r;
    if (na)
        log << "asymnet: correlate: " << na << " cell(s) N/A\n";
    write_file(cfg.out, [&](std::ostream& o) { write_report_csv(o, report); });
    if (!cfg.curves_out.empty())
        write_file(cfg.curves_out, [&](std::ostream& o) { write_curves_csv(o, st, nm, cfg.bins); });
}

void run_export(const RunConfig& cfg, std::ostream& log)
{
    require_file(cfg.normalized, "--normalized");
    require_path(cfg.out, "--out");
    const auto mode = require_mode(cfg.mode);
    const auto f = require_feature(cfg.feature);
    auto nm = read_normalized_csv(cfg.normalized);
    auto pairs = nm.mutual_pairs();
    if (pairs.empty())
        throw EmptyDomainError("normalized file has no mutual pairs");
    auto g = build_graph(std::span<const UnorderedPair>(pairs));

    double threshold = 0.0;
    if (cfg.threshold == "auto")
        threshold = mode == BalanceMode::extended ? default_extended_threshold(nm, f) : 0.0;
    else
        try {
            threshold = csv::parse_double(cfg.threshold, 0);
        } catch (const ParseError&) {
            throw ConfigError("bad --threshold '" + cfg.threshold + "'");
        }

    auto triangles = enumerate_triangles(g);
    auto verdicts = classify_triads(g, triangles, nm, f, mode, threshold);
    std::size_t balanced = 0;
    for (const auto& v : verdicts)
        balanced += v.balanced();
    log << "asymnet: export: " << balanced << " of " << triangles.size() << " triangles balanced ("
        << to_string(mode) << ", " << to_string(f) << ", threshold " << csv::format_double(threshold) << ")\n";

    ExportStyle style;
    style.feature = f;
    write_file(cfg.out, [&](std::ostream& o) { o << export_dot(g, nm, verdicts, style); });
}

std::vector<std::string> all_artifact_names()
{
    std::vector<std::string> names = {"corpus.jsonl",   "features.csv", "normalized.csv", "normalized_edges.csv",
                                      "structure.csv",  "report.csv",   "curves.csv"};
    for (auto mode : {BalanceMode::traditional, BalanceMode::extended})
        for (Feature f : kFeatures)
            names.push_back("balance_" + std::string(to_string(mode)) + "_" + std::string(to_string(f)) + ".csv");
    names.push_back("graph_traditional.dot");
    names.push_back("graph_extended.dot");
    names.push_back("baseline_check.csv");
    return names;
}

void run_all(const RunConfig& cfg, std::ostream& log)
{
    require_path(cfg.out_dir, "--out-dir");
    if (!cfg.seed)
        throw ConfigError("'all' needs --seed");
    const fs::path dir = cfg.out_dir;

    RunConfig c = cfg;
    c.corpus = dir / "corpus.jsonl";
    c.features = dir / "features.csv";
    c.normalized = dir / "normalized.csv";
    c.structure = dir / "structure.csv";

    c.out = c.corpus;
    run_ingest(c, log);

    c.out = c.features;
    run_features(c, log);

    c.out = c.normalized;
    c.edges_out = dir / "normalized_edges.csv";
    run_normalize(c, log);

    c.out = c.structure;
    run_structure(c, log);

    c.out = dir / "report.csv";
    c.curves_out = dir / "curves.csv";
    run_correlate(c, log);

    for (auto mode : {BalanceMode::traditional, BalanceMode::extended})
        for (Feature f : kFeatures) {
            c.mode = std::string(to_string(mode));
            c.feature = std::string(to_string(f));
            c.out = dir / ("balance_" + c.mode + "_" + c.feature + ".csv");
            try {
                run_balance(c, log);
            } catch (const EmptyDomainError& e) {
                log << "asymnet: balance: warning: " << c.feature << ": " << e.what() << '\n';
                write_file(c.out, [&](std::ostream& o) { write_curve_csv(o, CurveSeries{}); });
            }
        }

    c.feature = cfg.feature;
    c.threshold = cfg.threshold;
    for (auto mode : {BalanceMode::traditional, BalanceMode::extended}) {
        c.mode = std::string(to_string(mode));
        c.out = dir / ("graph_" + c.mode + ".dot");
        run_export(c, log);
    }

    write_file(dir / "baseline_check.csv", [&](std::ostream& o) {
        csv::Writer w(o);
        w.row({"mode", "p", "trials", "simulated", "analytic"});
        std::uint64_t stream = 0;
        for (auto mode : {BalanceMode::traditional, BalanceMode::extended})
            for (double p : kBaselineProbabilities) {
                double sim = simulate_random_balance(mode, p, kBaselineTrials, *cfg.seed + stream++);
                double analytic = mode == BalanceMode::traditional ? traditional_baseline(p) : extended_baseline(p);
                w.row({std::string(to_string(mode)), csv::format_double(p), std::to_string(kBaselineTrials),
                       csv::format_double(sim), csv::format_double(analytic)});
            }
    });
    log << "asymnet: all: artifacts written to " << dir.string() << '\n';
}

} // namespace asymnet
