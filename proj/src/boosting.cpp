#include "hmmboost/boosting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "hmmboost/metrics.hpp"
#include "hmmboost/parallel.hpp"

namespace hmmboost {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEpsClamp = 1e-10;

int sign_of(double margin) { return margin >= 0.0 ? 1 : -1; }

}  // namespace

StumpFit fit_stump(std::span<const double> scores, std::span<const int> labels,
                   std::span<const double> weights) {
    const std::size_t n = scores.size();
    if (n == 0) throw std::invalid_argument("no samples");
    if (labels.size() != n || weights.size() != n) {
        throw std::invalid_argument("scores, labels and weights must have equal length");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // prefix weight mass per class over the sorted order
    std::vector<double> sorted_scores(n), pos_prefix(n + 1, 0.0), neg_prefix(n + 1, 0.0);
    double weight_total = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t i = order[r];
        if (std::isnan(scores[i])) throw std::invalid_argument("NaN score");
        if (labels[i] != 1 && labels[i] != -1) {
            throw std::invalid_argument("labels must be +1 or -1");
        }
        if (weights[i] < 0.0) throw std::invalid_argument("negative sample weight");
        sorted_scores[r] = scores[i];
        pos_prefix[r + 1] = pos_prefix[r] + (labels[i] == 1 ? weights[i] : 0.0);
        neg_prefix[r + 1] = neg_prefix[r] + (labels[i] == -1 ? weights[i] : 0.0);
        weight_total += weights[i];
    }
    if (weight_total <= 0.0) throw std::invalid_argument("weights sum to zero");
    const double pos_total = pos_prefix[n];
    const double neg_total = neg_prefix[n];

    std::vector<double> candidates;
    candidates.push_back(-kInf);
    for (std::size_t r = 1; r < n; ++r) {
        if (sorted_scores[r - 1] < sorted_scores[r]) {
            candidates.push_back(cut_between(sorted_scores[r - 1], sorted_scores[r]));
        }
    }
    candidates.push_back(kInf);

    StumpFit best;
    best.weighted_error = kInf;
    for (double theta : candidates) {
        // below = #(s < theta), at_or_below = #(s <= theta); exact even
        // when theta coincides with an infinite score
        const std::size_t below =
            std::lower_bound(sorted_scores.begin(), sorted_scores.end(), theta) -
            sorted_scores.begin();
        const std::size_t at_or_below =
            std::upper_bound(sorted_scores.begin(), sorted_scores.end(), theta) -
            sorted_scores.begin();
        // polarity +1: positives are the samples >= theta
        const double err_plus = pos_prefix[below] + (neg_total - neg_prefix[below]);
        // polarity -1: positives are the samples <= theta
        const double err_minus = neg_prefix[at_or_below] + (pos_total - pos_prefix[at_or_below]);
        if (err_plus < best.weighted_error) {
            best = {theta, 1, err_plus};
        }
        if (err_minus < best.weighted_error) {
            best = {theta, -1, err_minus};
        }
    }
    best.weighted_error /= weight_total;
    return best;
}

BoostedEnsemble adaboost_train(const Matrix& pool_scores, std::span<const int> labels,
                               int max_rounds, int threads) {
    const std::size_t pool_size = pool_scores.rows();
    const std::size_t n = pool_scores.cols();
    if (pool_size == 0) throw std::invalid_argument("empty classifier pool");
    if (labels.size() != n) throw std::invalid_argument("label count does not match scores");
    if (max_rounds < 1) throw std::invalid_argument("max_rounds must be >= 1");
    bool has_pos = false, has_neg = false;
    for (int y : labels) {
        if (y == 1) has_pos = true;
        else if (y == -1) has_neg = true;
        else throw std::invalid_argument("labels must be +1 or -1");
    }
    if (!has_pos || !has_neg) {
        throw std::invalid_argument("training labels contain only one class");
    }

    BoostedEnsemble ensemble;
    std::vector<double> weights(n, 1.0 / static_cast<double>(n));
    std::vector<bool> used(pool_size, false);
    std::vector<double> margins(n, 0.0);
    std::vector<StumpFit> fits(pool_size);

    for (int round = 0; round < max_rounds; ++round) {
        parallel_for(pool_size, threads, [&](std::size_t i) {
            if (used[i]) return;
            fits[i] = fit_stump(std::span(pool_scores.row(i), n), labels, weights);
        });

        std::size_t selected = pool_size;
        for (std::size_t i = 0; i < pool_size; ++i) {
            if (used[i]) continue;
            if (selected == pool_size || fits[i].weighted_error < fits[selected].weighted_error) {
                selected = i;
            }
        }
        if (selected == pool_size) break;  // pool exhausted
        const double eps = fits[selected].weighted_error;
        if (eps >= 0.5) break;  // nothing better than a coin flip remains

        const double eps_clamped = std::clamp(eps, kEpsClamp, 1.0 - kEpsClamp);
        const double alpha = 0.5 * std::log((1.0 - eps_clamped) / eps_clamped);
        used[selected] = true;

        WeakClassifier clf{static_cast<int>(selected), fits[selected].threshold,
                           fits[selected].polarity};
        ensemble.stages.push_back({alpha, clf, eps});

        long correct = 0;
        double weight_sum = 0.0;
        for (std::size_t s = 0; s < n; ++s) {
            const int vote = clf.classify(pool_scores(selected, s));
            margins[s] += alpha * vote;
            if (sign_of(margins[s]) == labels[s]) ++correct;
            // up-weight mistakes, down-weight hits
            weights[s] *= std::exp(-alpha * labels[s] * vote);
            weight_sum += weights[s];
        }
        for (double& w : weights) w /= weight_sum;
        ensemble.accuracy_history.push_back(static_cast<double>(correct) /
                                            static_cast<double>(n));
    }

    for (std::size_t t = 0; t < ensemble.accuracy_history.size(); ++t) {
        if (ensemble.best_prefix < 0 ||
            ensemble.accuracy_history[t] >
                ensemble.accuracy_history[ensemble.best_prefix]) {
            ensemble.best_prefix = static_cast<std::ptrdiff_t>(t);
        }
    }
    return ensemble;
}

double boosted_margin(const BoostedEnsemble& ensemble, std::span<const double> model_scores) {
    double margin = 0.0;
    for (std::ptrdiff_t t = 0; t <= ensemble.best_prefix; ++t) {
        const auto& stage = ensemble.stages[t];
        const auto index = static_cast<std::size_t>(stage.classifier.model_index);
        if (index >= model_scores.size()) {
            throw std::invalid_argument("missing score for pool model " +
                                        std::to_string(stage.classifier.model_index));
        }
        margin += stage.alpha * stage.classifier.classify(model_scores[index]);
    }
    return margin;
}

}  // namespace hmmboost
