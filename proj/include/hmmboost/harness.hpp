#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hmmboost/hmm.hpp"
#include "hmmboost/metrics.hpp"

namespace hmmboost {

struct ExperimentConfig {
    std::filesystem::path dataset_root;
    std::string family;
    int restarts = 1000;
    int hmm_states = 2;
    int vocab_top_k = 30;
    int fold_count = 5;

    std::vector<double> morph_rates = {0.1, 0.5, 1.0};
    int morph_block_length = 10;
    bool morph_test_only = false;  // default morphs train and test malware

    std::vector<int> coldstart_sizes = {5, 10, 15, 20, 25};
    int coldstart_test_cap = 200;  // applies only when more samples remain
    int coldstart_draws = 5;
    int coldstart_benign_train = 25;  // benign share kept for labels/thresholds

    int boost_max_rounds = 100;
    int train_max_iterations = 200;
    double train_tolerance = 1e-6;  // min relative log-likelihood improvement
    double init_perturbation = 0.1;

    std::uint64_t master_seed = 0;
    std::filesystem::path output_dir = "results";
    int threads = 1;

    void validate() const;  // throws ConfigError
};

struct MethodMetrics {
    double auc = 0.0;
    double accuracy = 0.0;
};

// One fold (baseline/morphing) or one seeded draw (cold start).
struct FoldRecord {
    std::string label;
    std::uint64_t pool_seed = 0;  // derived seed the restart pool ran with
    MethodMetrics avg_hmm, best_restart, boosted;
};

struct CellResult {
    std::string kind;     // baseline | morph | coldstart
    std::string cell_id;  // e.g. "baseline", "morph_p0.5", "coldstart_s10"
    std::string family;
    double param = 0.0;  // morph rate or training size; 0 for baseline

    // fold/draw means
    MethodMetrics avg_hmm, best_restart, boosted;
    std::vector<FoldRecord> folds;

    // test scores pooled across folds/draws
    RocCurve roc_best_restart;
    RocCurve roc_boosted;

    long malware_test_count = -1;  // cold start only
    double seconds = 0.0;          // reported in timings.csv, not report.json
};

struct EvaluationReport {
    std::string experiment;
    ExperimentConfig config;
    std::vector<CellResult> cells;
};

// The three protocols. Each fold trains a pool of `restarts` HMMs on the
// concatenated training malware and reports the three-way comparison:
// mean per-model metric (the expected single-HMM outcome), the
// highest-training-likelihood model, and the AdaBoost ensemble over the
// pool's stumps.
EvaluationReport run_baseline(const ExperimentConfig& cfg);
EvaluationReport run_morphing(const ExperimentConfig& cfg);
EvaluationReport run_cold_start(const ExperimentConfig& cfg);

// Writes report.json (timestamped, otherwise byte-reproducible),
// results.csv (one row per cell x method), roc_<cell>.csv per cell and
// timings.csv under outdir.
void emit_reports(const EvaluationReport& report, const std::filesystem::path& outdir);

nlohmann::json report_to_json(const EvaluationReport& report);
EvaluationReport report_from_json(const nlohmann::json& j);

// Human-readable summary table (the `report` subcommand).
std::string report_summary(const EvaluationReport& report);

}  // namespace hmmboost
