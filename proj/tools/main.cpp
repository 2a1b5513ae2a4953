#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hmmboost/errors.hpp"
#include "hmmboost/features.hpp"
#include "hmmboost/harness.hpp"
#include "hmmboost/morphing.hpp"
#include "hmmboost/restarts.hpp"
#include "hmmboost/serialize.hpp"
#include "hmmboost/synth.hpp"

namespace {

using namespace hmmboost;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDataset = 3;

struct CliOptions {
    ExperimentConfig experiment;

    // gen-synth
    std::filesystem::path synth_out;
    std::filesystem::path synth_spec_file;
    double delta = 0.5;
    int families = 1;
    int samples_per_family = 60;
    int benign_samples = 107;
    int min_length = 150;
    int max_length = 300;
    int alphabet_size = 40;
    int generator_states = 3;

    // vocab / train / score / report
    std::filesystem::path vocab_out = "vocab.json";
    std::filesystem::path model_out = "model.json";
    std::filesystem::path model_in;
    std::filesystem::path score_input;
    std::filesystem::path report_in;
    std::filesystem::path report_out;
};

void add_dataset_options(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--dataset", opt.experiment.dataset_root, "Dataset root directory")
        ->required();
    cmd->add_option("--family", opt.experiment.family, "Malware family name")->required();
}

void add_experiment_options(CLI::App* cmd, CliOptions& opt) {
    add_dataset_options(cmd, opt);
    auto& cfg = opt.experiment;
    cmd->add_option("--restarts", cfg.restarts, "Random restarts per pool");
    cmd->add_option("--states", cfg.hmm_states, "HMM hidden state count");
    cmd->add_option("--top-k", cfg.vocab_top_k, "Vocabulary size before OTHER");
    cmd->add_option("--folds", cfg.fold_count, "Cross-validation folds");
    cmd->add_option("--seed", cfg.master_seed, "Master seed");
    cmd->add_option("--out", cfg.output_dir, "Output directory");
    cmd->add_option("--threads", cfg.threads, "Worker threads");
    cmd->add_option("--boost-rounds", cfg.boost_max_rounds, "Maximum AdaBoost rounds");
    cmd->add_option("--max-iterations", cfg.train_max_iterations,
                    "Baum-Welch iteration cap");
    cmd->add_option("--tolerance", cfg.train_tolerance,
                    "Minimum relative log-likelihood improvement");
    cmd->add_option("--perturbation", cfg.init_perturbation,
                    "Relative spread of the near-uniform initialization");
}

int run_gen_synth(const CliOptions& opt) {
    std::vector<SourceSpec> specs;
    if (!opt.synth_spec_file.empty()) {
        std::ifstream in(opt.synth_spec_file);
        if (!in) throw DatasetError("cannot open spec file " + opt.synth_spec_file.string());
        nlohmann::json j;
        in >> j;
        for (const auto& s : j) specs.push_back(source_spec_from_json(s));
    } else {
        DialOptions dial;
        dial.alphabet_size = opt.alphabet_size;
        dial.generator_states = opt.generator_states;
        dial.malware_samples = opt.samples_per_family;
        dial.benign_samples = opt.benign_samples;
        dial.min_length = opt.min_length;
        dial.max_length = opt.max_length;
        dial.seed = opt.experiment.master_seed;
        auto [malware, benign] = separability_dial(opt.delta, dial);
        for (int f = 0; f < opt.families; ++f) {
            SourceSpec family = malware;
            family.family = opt.families == 1 ? "malware" : "fam" + std::to_string(f);
            specs.push_back(std::move(family));
        }
        specs.push_back(benign);
    }
    generate_corpus(specs, opt.synth_out);
    std::printf("wrote %zu families under %s\n", specs.size(), opt.synth_out.string().c_str());
    return kExitOk;
}

int run_vocab(const CliOptions& opt) {
    const FamilyCorpus corpus = load_family(opt.experiment.dataset_root, opt.experiment.family);
    const Vocabulary vocab = build_vocabulary(corpus.samples, opt.experiment.vocab_top_k);
    std::ofstream out(opt.vocab_out);
    if (!out) throw std::runtime_error("cannot write " + opt.vocab_out.string());
    out << vocabulary_to_json(vocab).dump(2) << '\n';
    std::printf("family %s: %zu distinct top opcodes, %.2f%% coverage\n",
                vocab.family.c_str(), vocab.top_opcodes.size(),
                coverage_stats(corpus.samples, vocab));
    return kExitOk;
}

int run_train(const CliOptions& opt) {
    const auto& cfg = opt.experiment;
    cfg.validate();
    const FamilyCorpus corpus = load_family(cfg.dataset_root, cfg.family);
    const Vocabulary vocab = build_vocabulary(corpus.samples, cfg.vocab_top_k);

    ObservationSequence concat;
    for (const auto& sample : corpus.samples) {
        const auto encoded = encode(sample, vocab);
        concat.insert(concat.end(), encoded.begin(), encoded.end());
    }

    TrainingConfig tcfg;
    tcfg.max_iterations = cfg.train_max_iterations;
    tcfg.min_relative_ll_improvement = cfg.train_tolerance;
    tcfg.init_perturbation = cfg.init_perturbation;
    tcfg.seed = cfg.master_seed;
    const ModelPool pool = train_pool(concat, cfg.restarts, cfg.hmm_states,
                                      vocab.symbol_count(), tcfg, cfg.threads);
    const TrainedModel& best = select_best(pool);

    nlohmann::json restarts = nlohmann::json::array();
    for (const auto& m : pool.models) {
        restarts.push_back({{"seed", m.seed},
                            {"train_log_likelihood", json_real(m.train_log_likelihood)},
                            {"iterations", m.iterations_run}});
    }
    nlohmann::json j{{"family", cfg.family},
                     {"vocabulary", vocabulary_to_json(vocab)},
                     {"master_seed", cfg.master_seed},
                     {"best_model", params_to_json(best.params)},
                     {"best_train_log_likelihood", json_real(best.train_log_likelihood)},
                     {"best_seed", best.seed},
                     {"restarts", std::move(restarts)}};
    std::ofstream out(opt.model_out);
    if (!out) throw std::runtime_error("cannot write " + opt.model_out.string());
    out << j.dump(2) << '\n';
    std::printf("trained %d restarts on %zu samples; best train LL %s\n", cfg.restarts,
                corpus.samples.size(), format_sig9(best.train_log_likelihood).c_str());
    return kExitOk;
}

int run_score(const CliOptions& opt) {
    std::ifstream in(opt.model_in);
    if (!in) throw DatasetError("cannot open model file " + opt.model_in.string());
    nlohmann::json j;
    in >> j;
    const Vocabulary vocab = vocabulary_from_json(j.at("vocabulary"));
    const HmmParams model = params_from_json(j.at("best_model"));

    const OpcodeListing listing = load_listing(opt.score_input, "unknown");
    const double llpo = score_llpo(model, encode(listing, vocab));
    std::printf("%s %s\n", listing.sample_id.c_str(), format_sig9(llpo).c_str());
    return kExitOk;
}

int run_report(const CliOptions& opt) {
    std::ifstream in(opt.report_in);
    if (!in) throw DatasetError("cannot open report " + opt.report_in.string());
    nlohmann::json j;
    in >> j;
    const EvaluationReport report = report_from_json(j);
    std::fputs(report_summary(report).c_str(), stdout);
    if (!opt.report_out.empty()) emit_reports(report, opt.report_out);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"HMM random-restart and AdaBoost opcode-sequence classification toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a TOML/INI file (flags override)");
    app.allow_config_extras(CLI::config_extras_mode::ignore_all);

    CliOptions opt;

    auto* gen = app.add_subcommand("gen-synth", "Generate a synthetic planted-source corpus");
    gen->add_option("--out", opt.synth_out, "Dataset directory to create")->required();
    gen->add_option("--spec", opt.synth_spec_file, "JSON source-spec list (overrides dial)");
    gen->add_option("--delta", opt.delta, "Separability dial in [0, 1]");
    gen->add_option("--families", opt.families, "Number of malware families");
    gen->add_option("--samples", opt.samples_per_family, "Samples per malware family");
    gen->add_option("--benign", opt.benign_samples, "Benign sample count");
    gen->add_option("--min-len", opt.min_length, "Minimum sample length");
    gen->add_option("--max-len", opt.max_length, "Maximum sample length");
    gen->add_option("--alphabet-size", opt.alphabet_size, "Synthetic token count");
    gen->add_option("--gen-states", opt.generator_states, "Generator HMM states");
    gen->add_option("--seed", opt.experiment.master_seed, "Master seed");

    auto* vocab = app.add_subcommand("vocab", "Build and print a family vocabulary");
    add_dataset_options(vocab, opt);
    vocab->add_option("--top-k", opt.experiment.vocab_top_k, "Vocabulary size before OTHER");
    vocab->add_option("--out", opt.vocab_out, "Vocabulary JSON path");

    auto* train = app.add_subcommand("train", "Train a restart pool on a whole family");
    add_experiment_options(train, opt);
    train->add_option("--model-out", opt.model_out, "Model JSON path");

    auto* score = app.add_subcommand("score", "Score one sample against a trained model");
    score->add_option("--model", opt.model_in, "Model JSON from `train`")->required();
    score->add_option("--input", opt.score_input, "Sample .opcodes file")->required();

    auto* experiment = app.add_subcommand("experiment", "Run an evaluation protocol");
    experiment->require_subcommand(1);
    auto* baseline = experiment->add_subcommand("baseline", "5-fold three-way comparison");
    add_experiment_options(baseline, opt);
    auto* morph = experiment->add_subcommand("morph", "Baseline under benign-code morphing");
    add_experiment_options(morph, opt);
    morph->add_option("--morph-rates", opt.experiment.morph_rates,
                      "Injected fractions of original length")
        ->delimiter(',');
    morph->add_option("--block-length", opt.experiment.morph_block_length,
                      "Inserted benign run length");
    morph->add_flag("--morph-test-only", opt.experiment.morph_test_only,
                    "Leave training malware unmorphed");
    auto* coldstart = experiment->add_subcommand("coldstart", "Limited training data sweep");
    add_experiment_options(coldstart, opt);
    coldstart->add_option("--coldstart-sizes", opt.experiment.coldstart_sizes,
                          "Training sample counts")
        ->delimiter(',');
    coldstart->add_option("--test-cap", opt.experiment.coldstart_test_cap,
                          "Malware test cap for large families");
    coldstart->add_option("--draws", opt.experiment.coldstart_draws,
                          "Seeded training draws per size");
    coldstart->add_option("--benign-train", opt.experiment.coldstart_benign_train,
                          "Benign samples held for training labels");

    auto* report = app.add_subcommand("report", "Summarize a report.json");
    report->add_option("--in", opt.report_in, "report.json path")->required();
    report->add_option("--out", opt.report_out, "Re-emit CSV files into this directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (gen->parsed()) return run_gen_synth(opt);
        if (vocab->parsed()) return run_vocab(opt);
        if (train->parsed()) return run_train(opt);
        if (score->parsed()) return run_score(opt);
        if (report->parsed()) return run_report(opt);
        if (experiment->parsed()) {
            EvaluationReport result;
            if (baseline->parsed()) result = run_baseline(opt.experiment);
            else if (morph->parsed()) result = run_morphing(opt.experiment);
            else result = run_cold_start(opt.experiment);
            emit_reports(result, opt.experiment.output_dir);
            std::fputs(report_summary(result).c_str(), stdout);
            return kExitOk;
        }
    } catch (const DatasetError& e) {
        std::fprintf(stderr, "dataset error: %s\n", e.what());
        return kExitDataset;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return kExitConfig;
}
