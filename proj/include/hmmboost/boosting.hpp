#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hmmboost/matrix.hpp"

namespace hmmboost {

// Threshold stump on one model's LLPO score. Emits +1 (malware) when
// polarity +1 and score >= threshold, or polarity -1 and score <=
// threshold; -1 (benign) otherwise. Comparisons rather than arithmetic so
// -infinity scores behave.
struct WeakClassifier {
    int model_index = -1;
    double threshold = 0.0;
    int polarity = 1;  // +1 or -1

    int classify(double score) const {
        if (polarity == 1) return score >= threshold ? 1 : -1;
        return score <= threshold ? 1 : -1;
    }
};

struct StumpFit {
    double threshold = 0.0;
    int polarity = 1;
    double weighted_error = 0.0;
};

// Minimizes weighted 0-1 error over every candidate cut: -infinity,
// midpoints between consecutive distinct scores, +infinity, with both
// polarities. Ties keep the smallest threshold, then polarity +1.
// Weights must be non-negative with a positive total; the error is
// reported relative to that total.
StumpFit fit_stump(std::span<const double> scores, std::span<const int> labels,
                   std::span<const double> weights);

struct BoostStage {
    double alpha = 0.0;
    WeakClassifier classifier;
    double weighted_error = 0.0;  // the epsilon this stage was selected at
};

struct BoostedEnsemble {
    std::vector<BoostStage> stages;
    // accuracy_history[t]: training accuracy of the partial ensemble
    // stages[0..t]. Not monotone in general.
    std::vector<double> accuracy_history;
    // Inclusive index of the best intermediate ensemble (earliest argmax
    // of accuracy_history); -1 when no stage was selected.
    std::ptrdiff_t best_prefix = -1;
};

// AdaBoost over the pool's stump classifiers, selection without
// replacement. pool_scores is models x samples (LLPO). Per round every
// unused model's stump is re-fit against the current weights and the one
// with minimal weighted error wins (ties to the lowest model index);
// training stops when no unused stump beats 0.5 or the pool is exhausted.
BoostedEnsemble adaboost_train(const Matrix& pool_scores, std::span<const int> labels,
                               int max_rounds, int threads = 1);

// Weighted vote of the best-prefix ensemble for one sample;
// model_scores[i] is the sample's LLPO under pool model i. The sign gives
// the class, the value feeds ROC sweeps. An empty ensemble votes 0.
double boosted_margin(const BoostedEnsemble& ensemble, std::span<const double> model_scores);

}  // namespace hmmboost
