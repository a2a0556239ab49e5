#pragma once

// File-to-file pipeline stages. Each stage reads the artifacts of the previous
// one from disk, so `run_all` is exactly the sequence of individual stages.

#include <asymnet/balance.hpp>
#include <asymnet/langfeat.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace asymnet {

/// Everything a run can be configured with. Defaults follow the documented
/// experiment setup (15 messages each way, trigram add-0.1 model).
struct RunConfig {
    // ingest
    std::filesystem::path input;
    std::string format = "jsonl";
    std::string domain_suffix;
    std::size_t min_bidirectional = 15;
    bool strict = false;

    // features
    std::filesystem::path lexicon;
    LmConfig lm;

    // analysis
    std::string sweep = "auto";
    std::size_t sweep_points = 41;
    std::size_t bins = 20;
    std::string mode = "traditional";
    std::string feature = "length";
    std::string threshold = "auto";

    // artifacts
    std::filesystem::path corpus;
    std::filesystem::path features;
    std::filesystem::path normalized;
    std::filesystem::path structure;
    std::filesystem::path out;
    std::filesystem::path edges_out;
    std::filesystem::path curves_out;
    std::filesystem::path out_dir;

    std::optional<std::uint64_t> seed;
    int threads = 0; // 0: OpenMP default
};

/// Parses "auto" (auto_sweep with `points` quantiles) or a comma-separated list.
std::vector<double> resolve_sweep(const std::string& spec, const NormalizedMatrix& nm, Feature f, BalanceMode mode,
                                  std::size_t points);

Feature require_feature(const std::string& name);
BalanceMode require_mode(const std::string& name);

void run_ingest(const RunConfig& cfg, std::ostream& log);
void run_features(const RunConfig& cfg, std::ostream& log);
void run_normalize(const RunConfig& cfg, std::ostream& log);
void run_structure(const RunConfig& cfg, std::ostream& log);
void run_balance(const RunConfig& cfg, std::ostream& log);
void run_correlate(const RunConfig& cfg, std::ostream& log);
void run_export(const RunConfig& cfg, std::ostream& log);

/// Full experiment into cfg.out_dir. Requires cfg.seed (used by the
/// random-baseline check).
void run_all(const RunConfig& cfg, std::ostream& log);

/// Names of the files run_all writes, relative to out_dir.
std::vector<std::string> all_artifact_names();

} // namespace asymnet
