#include "hmmboost/harness.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "hmmboost/boosting.hpp"
#include "hmmboost/errors.hpp"
#include "hmmboost/features.hpp"
#include "hmmboost/morphing.hpp"
#include "hmmboost/parallel.hpp"
#include "hmmboost/restarts.hpp"
#include "hmmboost/rng.hpp"
#include "hmmboost/serialize.hpp"

namespace hmmboost {

void ExperimentConfig::validate() const {
    auto fail = [](const std::string& msg) { throw ConfigError(msg); };
    if (dataset_root.empty()) fail("dataset root not set");
    if (family.empty()) fail("family not set");
    if (restarts < 1) fail("restarts must be positive");
    if (hmm_states < 1) fail("HMM state count must be positive");
    if (vocab_top_k < 1) fail("top-k must be positive");
    if (fold_count < 2) fail("fold count must be at least 2");
    if (morph_block_length < 1) fail("morph block length must be positive");
    for (double r : morph_rates) {
        if (r < 0.0) fail("morph rates must be non-negative");
    }
    if (coldstart_sizes.empty()) fail("cold-start size list is empty");
    for (int s : coldstart_sizes) {
        if (s < 1) fail("cold-start training sizes must be positive");
    }
    if (coldstart_test_cap < 1) fail("cold-start test cap must be positive");
    if (coldstart_draws < 1) fail("cold-start draws must be positive");
    if (coldstart_benign_train < 1) fail("cold-start benign training share must be positive");
    if (boost_max_rounds < 1) fail("boost rounds must be positive");
    if (train_max_iterations < 1) fail("training iterations must be positive");
    if (train_tolerance < 0.0) fail("training tolerance must be non-negative");
    if (!(init_perturbation > 0.0 && init_perturbation < 1.0)) {
        fail("init perturbation must lie in (0, 1)");
    }
    if (threads < 1) fail("thread count must be positive");
}

namespace {

using Listing = OpcodeListing;

// ---------------------------------------------------------------------
// shared per-fold evaluation

struct EvalData {
    ObservationSequence train_concat;
    std::vector<ObservationSequence> train_sequences;  // malware first, then benign
    std::vector<int> train_labels;
    std::vector<ObservationSequence> test_sequences;
    std::vector<int> test_labels;
    int symbol_count = 0;
};

struct EvalOutcome {
    MethodMetrics avg_hmm, best_restart, boosted;
    std::vector<LabeledScore> best_scores;
    std::vector<LabeledScore> boosted_scores;
};

Matrix llpo_matrix(const ModelPool& pool, const std::vector<ObservationSequence>& seqs,
                   int threads) {
    Matrix scores(pool.models.size(), seqs.size());
    parallel_for(pool.models.size(), threads, [&](std::size_t r) {
        for (std::size_t s = 0; s < seqs.size(); ++s) {
            scores(r, s) = score_llpo(pool.models[r].params, seqs[s]);
        }
    });
    return scores;
}

std::vector<LabeledScore> row_scores(const Matrix& m, std::size_t row,
                                     const std::vector<int>& labels) {
    std::vector<LabeledScore> out(labels.size());
    for (std::size_t s = 0; s < labels.size(); ++s) out[s] = {m(row, s), labels[s]};
    return out;
}

EvalOutcome evaluate(const EvalData& data, const ExperimentConfig& cfg,
                     std::uint64_t pool_seed) {
    TrainingConfig tcfg;
    tcfg.max_iterations = cfg.train_max_iterations;
    tcfg.min_relative_ll_improvement = cfg.train_tolerance;
    tcfg.init_perturbation = cfg.init_perturbation;
    tcfg.seed = pool_seed;

    const ModelPool pool = train_pool(data.train_concat, cfg.restarts, cfg.hmm_states,
                                      data.symbol_count, tcfg, cfg.threads);
    const Matrix train_scores = llpo_matrix(pool, data.train_sequences, cfg.threads);
    const Matrix test_scores = llpo_matrix(pool, data.test_sequences, cfg.threads);

    const std::size_t pool_size = pool.models.size();
    std::vector<double> per_model_auc(pool_size), per_model_acc(pool_size);
    parallel_for(pool_size, cfg.threads, [&](std::size_t r) {
        const auto test = row_scores(test_scores, r, data.test_labels);
        per_model_auc[r] = roc(test).auc;
        // reporting threshold is chosen on training scores only
        const auto train = row_scores(train_scores, r, data.train_labels);
        per_model_acc[r] = accuracy_at_threshold(test, threshold_best_accuracy(train));
    });

    EvalOutcome out;
    out.avg_hmm = {average_case_metric(per_model_auc), average_case_metric(per_model_acc)};

    const std::size_t best = select_best_index(pool);
    out.best_restart = {per_model_auc[best], per_model_acc[best]};
    out.best_scores = row_scores(test_scores, best, data.test_labels);

    const BoostedEnsemble ensemble =
        adaboost_train(train_scores, data.train_labels, cfg.boost_max_rounds, cfg.threads);
    std::vector<double> column(pool_size);
    long correct = 0;
    out.boosted_scores.resize(data.test_labels.size());
    for (std::size_t s = 0; s < data.test_labels.size(); ++s) {
        for (std::size_t r = 0; r < pool_size; ++r) column[r] = test_scores(r, s);
        const double margin = boosted_margin(ensemble, column);
        out.boosted_scores[s] = {margin, data.test_labels[s]};
        if ((margin >= 0.0 ? 1 : -1) == data.test_labels[s]) ++correct;
    }
    out.boosted.auc = roc(out.boosted_scores).auc;
    out.boosted.accuracy =
        static_cast<double>(correct) / static_cast<double>(data.test_labels.size());
    return out;
}

// Test samples must never reach vocabulary building or training.
void audit_disjoint(const std::vector<const Listing*>& train,
                    const std::vector<const Listing*>& test) {
    std::unordered_set<std::string> test_ids;
    for (const auto* t : test) test_ids.insert(t->family + "/" + t->sample_id);
    for (const auto* t : train) {
        if (test_ids.contains(t->family + "/" + t->sample_id)) {
            throw std::logic_error("leakage audit failed: sample " + t->sample_id +
                                   " is in both train and test sets");
        }
    }
}

EvalData make_eval_data(const std::vector<Listing>& train_mal,
                        const std::vector<Listing>& train_ben,
                        const std::vector<Listing>& test_mal,
                        const std::vector<Listing>& test_ben, int top_k) {
    std::vector<const Listing*> train_ptrs, test_ptrs;
    for (const auto& s : train_mal) train_ptrs.push_back(&s);
    for (const auto& s : train_ben) train_ptrs.push_back(&s);
    for (const auto& s : test_mal) test_ptrs.push_back(&s);
    for (const auto& s : test_ben) test_ptrs.push_back(&s);
    audit_disjoint(train_ptrs, test_ptrs);

    const Vocabulary vocab = build_vocabulary(train_mal, top_k);

    EvalData data;
    data.symbol_count = vocab.symbol_count();
    for (const auto& s : train_mal) {
        ObservationSequence encoded = encode(s, vocab);
        data.train_concat.insert(data.train_concat.end(), encoded.begin(), encoded.end());
        data.train_sequences.push_back(std::move(encoded));
        data.train_labels.push_back(1);
    }
    for (const auto& s : train_ben) {
        data.train_sequences.push_back(encode(s, vocab));
        data.train_labels.push_back(-1);
    }
    for (const auto& s : test_mal) {
        data.test_sequences.push_back(encode(s, vocab));
        data.test_labels.push_back(1);
    }
    for (const auto& s : test_ben) {
        data.test_sequences.push_back(encode(s, vocab));
        data.test_labels.push_back(-1);
    }
    return data;
}

MethodMetrics mean_metrics(const std::vector<FoldRecord>& folds,
                           MethodMetrics FoldRecord::* member) {
    MethodMetrics mean;
    for (const auto& f : folds) {
        mean.auc += (f.*member).auc;
        mean.accuracy += (f.*member).accuracy;
    }
    mean.auc /= static_cast<double>(folds.size());
    mean.accuracy /= static_cast<double>(folds.size());
    return mean;
}

void finish_cell(CellResult& cell, const std::vector<LabeledScore>& pooled_best,
                 const std::vector<LabeledScore>& pooled_boosted) {
    cell.avg_hmm = mean_metrics(cell.folds, &FoldRecord::avg_hmm);
    cell.best_restart = mean_metrics(cell.folds, &FoldRecord::best_restart);
    cell.boosted = mean_metrics(cell.folds, &FoldRecord::boosted);
    cell.roc_best_restart = roc(pooled_best);
    cell.roc_boosted = roc(pooled_boosted);
}

// Cross-validated protocol shared by baseline (morph_rate < 0) and
// morphing (morph_rate >= 0; rate 0 is the identity, reproducing the
// baseline cell exactly).
CellResult run_cv_cell(const ExperimentConfig& cfg, const std::vector<Listing>& malware,
                       const std::vector<Listing>& benign, double morph_rate) {
    const auto started = std::chrono::steady_clock::now();
    const FoldPlan plan =
        make_folds(static_cast<int>(malware.size()), static_cast<int>(benign.size()),
                   cfg.fold_count, mix_seed(cfg.master_seed, hash64("folds")));

    CellResult cell;
    cell.family = cfg.family;
    if (morph_rate < 0.0) {
        cell.kind = "baseline";
        cell.cell_id = "baseline";
        cell.param = 0.0;
    } else {
        cell.kind = "morph";
        cell.cell_id = "morph_p" + format_sig9(morph_rate);
        cell.param = morph_rate;
    }

    std::vector<LabeledScore> pooled_best, pooled_boosted;
    for (int fold = 0; fold < cfg.fold_count; ++fold) {
        std::vector<Listing> train_mal, test_mal, train_ben, test_ben;
        std::vector<std::size_t> train_mal_index;
        for (std::size_t i = 0; i < malware.size(); ++i) {
            if (plan.positive_fold[i] == fold) {
                test_mal.push_back(malware[i]);
            } else {
                train_mal.push_back(malware[i]);
                train_mal_index.push_back(i);
            }
        }
        for (std::size_t i = 0; i < benign.size(); ++i) {
            (plan.negative_fold[i] == fold ? test_ben : train_ben).push_back(benign[i]);
        }

        if (morph_rate > 0.0) {
            // benign donors come from the training fold only, so injected
            // code cannot leak test benign content
            const std::uint64_t morph_base = mix_seed(
                mix_seed(mix_seed(cfg.master_seed, hash64("morph")), fold),
                std::bit_cast<std::uint64_t>(morph_rate));
            MorphConfig mcfg;
            mcfg.rate = morph_rate;
            mcfg.block_length = cfg.morph_block_length;
            auto apply = [&](Listing& listing, std::uint64_t sample_index) {
                mcfg.seed = mix_seed(morph_base, sample_index);
                listing.mnemonics = morph(listing.mnemonics, train_ben, mcfg).opcodes;
            };
            if (!cfg.morph_test_only) {
                for (std::size_t i = 0; i < train_mal.size(); ++i) {
                    apply(train_mal[i], train_mal_index[i]);
                }
            }
            std::size_t test_pos = 0;
            for (std::size_t i = 0; i < malware.size(); ++i) {
                if (plan.positive_fold[i] == fold) apply(test_mal[test_pos++], i);
            }
        }

        const EvalData data =
            make_eval_data(train_mal, train_ben, test_mal, test_ben, cfg.vocab_top_k);
        const std::uint64_t pool_seed =
            mix_seed(mix_seed(cfg.master_seed, hash64("pool")), fold);
        const EvalOutcome outcome = evaluate(data, cfg, pool_seed);

        cell.folds.push_back({"fold" + std::to_string(fold), pool_seed, outcome.avg_hmm,
                              outcome.best_restart, outcome.boosted});
        pooled_best.insert(pooled_best.end(), outcome.best_scores.begin(),
                           outcome.best_scores.end());
        pooled_boosted.insert(pooled_boosted.end(), outcome.boosted_scores.begin(),
                              outcome.boosted_scores.end());
    }
    finish_cell(cell, pooled_best, pooled_boosted);
    cell.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return cell;
}

}  // namespace

EvaluationReport run_baseline(const ExperimentConfig& cfg) {
    cfg.validate();
    const FamilyCorpus malware = load_family(cfg.dataset_root, cfg.family);
    const FamilyCorpus benign = load_family(cfg.dataset_root, "benign");

    EvaluationReport report;
    report.experiment = "baseline";
    report.config = cfg;
    report.cells.push_back(run_cv_cell(cfg, malware.samples, benign.samples, -1.0));
    return report;
}

EvaluationReport run_morphing(const ExperimentConfig& cfg) {
    cfg.validate();
    const FamilyCorpus malware = load_family(cfg.dataset_root, cfg.family);
    const FamilyCorpus benign = load_family(cfg.dataset_root, "benign");

    EvaluationReport report;
    report.experiment = "morph";
    report.config = cfg;
    for (double rate : cfg.morph_rates) {
        report.cells.push_back(run_cv_cell(cfg, malware.samples, benign.samples, rate));
    }
    return report;
}

EvaluationReport run_cold_start(const ExperimentConfig& cfg) {
    cfg.validate();
    const FamilyCorpus malware = load_family(cfg.dataset_root, cfg.family);
    const FamilyCorpus benign = load_family(cfg.dataset_root, "benign");
    const auto n_mal = static_cast<int>(malware.samples.size());
    const auto n_ben = static_cast<int>(benign.samples.size());

    for (int size : cfg.coldstart_sizes) {
        if (n_mal < size + 1) {
            throw DatasetError("family '" + cfg.family + "' has " + std::to_string(n_mal) +
                               " samples, too few for training size " + std::to_string(size) +
                               " plus at least one test sample");
        }
    }
    if (n_ben <= cfg.coldstart_benign_train) {
        throw DatasetError("benign set has " + std::to_string(n_ben) +
                           " samples, too few to hold out " +
                           std::to_string(cfg.coldstart_benign_train) + " for training");
    }

    EvaluationReport report;
    report.experiment = "coldstart";
    report.config = cfg;
    const std::uint64_t base = mix_seed(cfg.master_seed, hash64("coldstart"));

    for (int size : cfg.coldstart_sizes) {
        const auto started = std::chrono::steady_clock::now();
        CellResult cell;
        cell.kind = "coldstart";
        cell.cell_id = "coldstart_s" + std::to_string(size);
        cell.family = cfg.family;
        cell.param = size;

        std::vector<LabeledScore> pooled_best, pooled_boosted;
        const std::uint64_t size_seed = mix_seed(base, static_cast<std::uint64_t>(size));
        for (int draw = 0; draw < cfg.coldstart_draws; ++draw) {
            const std::uint64_t draw_seed = mix_seed(size_seed, static_cast<std::uint64_t>(draw));

            std::vector<int> mal_order(n_mal);
            for (int i = 0; i < n_mal; ++i) mal_order[i] = i;
            Rng select_rng(mix_seed(draw_seed, hash64("select")));
            select_rng.shuffle(mal_order);

            std::vector<Listing> train_mal, test_mal;
            for (int i = 0; i < size; ++i) train_mal.push_back(malware.samples[mal_order[i]]);
            const int remaining = n_mal - size;
            // the cap only kicks in when more than cap samples remain
            const int test_count = std::min(remaining, cfg.coldstart_test_cap);
            for (int i = 0; i < test_count; ++i) {
                test_mal.push_back(malware.samples[mal_order[size + i]]);
            }
            cell.malware_test_count = test_count;

            std::vector<int> ben_order(n_ben);
            for (int i = 0; i < n_ben; ++i) ben_order[i] = i;
            Rng benign_rng(mix_seed(draw_seed, hash64("benign")));
            benign_rng.shuffle(ben_order);
            std::vector<Listing> train_ben, test_ben;
            for (int i = 0; i < n_ben; ++i) {
                (i < cfg.coldstart_benign_train ? train_ben : test_ben)
                    .push_back(benign.samples[ben_order[i]]);
            }

            const EvalData data =
                make_eval_data(train_mal, train_ben, test_mal, test_ben, cfg.vocab_top_k);
            const std::uint64_t pool_seed = mix_seed(draw_seed, hash64("pool"));
            const EvalOutcome outcome = evaluate(data, cfg, pool_seed);

            cell.folds.push_back({"draw" + std::to_string(draw), pool_seed, outcome.avg_hmm,
                                  outcome.best_restart, outcome.boosted});
            pooled_best.insert(pooled_best.end(), outcome.best_scores.begin(),
                               outcome.best_scores.end());
            pooled_boosted.insert(pooled_boosted.end(), outcome.boosted_scores.begin(),
                                  outcome.boosted_scores.end());
        }
        finish_cell(cell, pooled_best, pooled_boosted);
        cell.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        report.cells.push_back(std::move(cell));
    }
    return report;
}

// ---------------------------------------------------------------------
// serialization

namespace {

nlohmann::json metrics_to_json(const MethodMetrics& m) {
    return nlohmann::json{{"auc", json_real(m.auc)}, {"accuracy", json_real(m.accuracy)}};
}

MethodMetrics metrics_from_json(const nlohmann::json& j) {
    return {real_from_json(j.at("auc")), real_from_json(j.at("accuracy"))};
}

nlohmann::json roc_to_json(const RocCurve& curve) {
    nlohmann::json points = nlohmann::json::array();
    for (const auto& p : curve.points) {
        points.push_back({json_real(p.threshold), json_real(p.fpr), json_real(p.tpr)});
    }
    return nlohmann::json{{"auc", json_real(curve.auc)}, {"points", std::move(points)}};
}

RocCurve roc_from_json(const nlohmann::json& j) {
    RocCurve curve;
    curve.auc = real_from_json(j.at("auc"));
    for (const auto& p : j.at("points")) {
        curve.points.push_back(
            {real_from_json(p.at(0)), real_from_json(p.at(1)), real_from_json(p.at(2))});
    }
    return curve;
}

// threads and output_dir are execution details, not experiment identity;
// the report must not depend on them
nlohmann::json config_to_json(const ExperimentConfig& c) {
    return nlohmann::json{{"dataset", c.dataset_root.string()},
                          {"family", c.family},
                          {"restarts", c.restarts},
                          {"states", c.hmm_states},
                          {"top_k", c.vocab_top_k},
                          {"folds", c.fold_count},
                          {"morph_rates", c.morph_rates},
                          {"morph_block_length", c.morph_block_length},
                          {"morph_test_only", c.morph_test_only},
                          {"coldstart_sizes", c.coldstart_sizes},
                          {"coldstart_test_cap", c.coldstart_test_cap},
                          {"coldstart_draws", c.coldstart_draws},
                          {"coldstart_benign_train", c.coldstart_benign_train},
                          {"boost_max_rounds", c.boost_max_rounds},
                          {"train_max_iterations", c.train_max_iterations},
                          {"train_tolerance", c.train_tolerance},
                          {"init_perturbation", c.init_perturbation},
                          {"seed", c.master_seed}};
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    c.dataset_root = j.at("dataset").get<std::string>();
    c.family = j.at("family").get<std::string>();
    c.restarts = j.at("restarts").get<int>();
    c.hmm_states = j.at("states").get<int>();
    c.vocab_top_k = j.at("top_k").get<int>();
    c.fold_count = j.at("folds").get<int>();
    c.morph_rates = j.at("morph_rates").get<std::vector<double>>();
    c.morph_block_length = j.at("morph_block_length").get<int>();
    c.morph_test_only = j.at("morph_test_only").get<bool>();
    c.coldstart_sizes = j.at("coldstart_sizes").get<std::vector<int>>();
    c.coldstart_test_cap = j.at("coldstart_test_cap").get<int>();
    c.coldstart_draws = j.at("coldstart_draws").get<int>();
    c.coldstart_benign_train = j.at("coldstart_benign_train").get<int>();
    c.boost_max_rounds = j.at("boost_max_rounds").get<int>();
    c.train_max_iterations = j.at("train_max_iterations").get<int>();
    c.train_tolerance = j.at("train_tolerance").get<double>();
    c.init_perturbation = j.at("init_perturbation").get<double>();
    c.master_seed = j.at("seed").get<std::uint64_t>();
    return c;
}

}  // namespace

nlohmann::json report_to_json(const EvaluationReport& report) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& cell : report.cells) {
        nlohmann::json folds = nlohmann::json::array();
        for (const auto& f : cell.folds) {
            folds.push_back({{"label", f.label},
                             {"avg_hmm", metrics_to_json(f.avg_hmm)},
                             {"best_restart", metrics_to_json(f.best_restart)},
                             {"boosted", metrics_to_json(f.boosted)}});
        }
        nlohmann::json c{{"kind", cell.kind},
                         {"cell_id", cell.cell_id},
                         {"family", cell.family},
                         {"param", json_real(cell.param)},
                         {"avg_hmm", metrics_to_json(cell.avg_hmm)},
                         {"best_restart", metrics_to_json(cell.best_restart)},
                         {"boosted", metrics_to_json(cell.boosted)},
                         {"per_fold", std::move(folds)},
                         {"roc",
                          {{"best_restart", roc_to_json(cell.roc_best_restart)},
                           {"boosted", roc_to_json(cell.roc_boosted)}}}};
        if (cell.malware_test_count >= 0) c["malware_test_count"] = cell.malware_test_count;
        cells.push_back(std::move(c));
    }
    return nlohmann::json{{"experiment", report.experiment},
                          {"config", config_to_json(report.config)},
                          {"cells", std::move(cells)}};
}

EvaluationReport report_from_json(const nlohmann::json& j) {
    EvaluationReport report;
    report.experiment = j.at("experiment").get<std::string>();
    report.config = config_from_json(j.at("config"));
    for (const auto& c : j.at("cells")) {
        CellResult cell;
        cell.kind = c.at("kind").get<std::string>();
        cell.cell_id = c.at("cell_id").get<std::string>();
        cell.family = c.at("family").get<std::string>();
        cell.param = real_from_json(c.at("param"));
        cell.avg_hmm = metrics_from_json(c.at("avg_hmm"));
        cell.best_restart = metrics_from_json(c.at("best_restart"));
        cell.boosted = metrics_from_json(c.at("boosted"));
        for (const auto& f : c.at("per_fold")) {
            cell.folds.push_back({f.at("label").get<std::string>(),
                                  metrics_from_json(f.at("avg_hmm")),
                                  metrics_from_json(f.at("best_restart")),
                                  metrics_from_json(f.at("boosted"))});
        }
        cell.roc_best_restart = roc_from_json(c.at("roc").at("best_restart"));
        cell.roc_boosted = roc_from_json(c.at("roc").at("boosted"));
        if (c.contains("malware_test_count")) {
            cell.malware_test_count = c.at("malware_test_count").get<long>();
        }
        report.cells.push_back(std::move(cell));
    }
    return report;
}

namespace {

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

}  // namespace

void emit_reports(const EvaluationReport& report, const std::filesystem::path& outdir) {
    std::error_code ec;
    std::filesystem::create_directories(outdir, ec);
    if (!std::filesystem::is_directory(outdir)) {
        throw std::runtime_error("cannot create output directory " + outdir.string());
    }

    nlohmann::json j = report_to_json(report);
    j["timestamp"] = utc_timestamp();
    write_file(outdir / "report.json", j.dump(2) + "\n");

    std::ostringstream csv;
    csv << "experiment,family,cell,param,method,auc,accuracy\n";
    for (const auto& cell : report.cells) {
        const std::pair<const char*, const MethodMetrics*> methods[] = {
            {"avg_hmm", &cell.avg_hmm},
            {"best_restart", &cell.best_restart},
            {"boosted", &cell.boosted}};
        for (const auto& [name, metrics] : methods) {
            csv << report.experiment << ',' << cell.family << ',' << cell.cell_id << ','
                << format_sig9(cell.param) << ',' << name << ',' << format_sig9(metrics->auc)
                << ',' << format_sig9(metrics->accuracy) << '\n';
        }
    }
    write_file(outdir / "results.csv", csv.str());

    for (const auto& cell : report.cells) {
        std::ostringstream roc_csv;
        roc_csv << "method,threshold,fpr,tpr\n";
        const std::pair<const char*, const RocCurve*> curves[] = {
            {"best_restart", &cell.roc_best_restart}, {"boosted", &cell.roc_boosted}};
        for (const auto& [name, curve] : curves) {
            for (const auto& p : curve->points) {
                roc_csv << name << ',' << format_sig9(p.threshold) << ','
                        << format_sig9(p.fpr) << ',' << format_sig9(p.tpr) << '\n';
            }
        }
        write_file(outdir / ("roc_" + cell.cell_id + ".csv"), roc_csv.str());
    }

    std::ostringstream timings;
    timings << "cell,seconds,threads\n";
    for (const auto& cell : report.cells) {
        timings << cell.cell_id << ',' << format_sig9(cell.seconds) << ','
                << report.config.threads << '\n';
    }
    write_file(outdir / "timings.csv", timings.str());
}

std::string report_summary(const EvaluationReport& report) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof(line), "%-18s %-12s %-22s %10s %10s %10s\n", "experiment",
                  "family", "cell", "avg_hmm", "best", "boosted");
    out << line;
    for (const auto& cell : report.cells) {
        std::snprintf(line, sizeof(line), "%-18s %-12s %-22s %10.4f %10.4f %10.4f  AUC\n",
                      report.experiment.c_str(), cell.family.c_str(), cell.cell_id.c_str(),
                      cell.avg_hmm.auc, cell.best_restart.auc, cell.boosted.auc);
        out << line;
        std::snprintf(line, sizeof(line), "%-18s %-12s %-22s %10.4f %10.4f %10.4f  accuracy\n",
                      "", "", "", cell.avg_hmm.accuracy, cell.best_restart.accuracy,
                      cell.boosted.accuracy);
        out << line;
    }
    return out.str();
}

}  // namespace hmmboost
