#pragma once

// Test-side oracles and generators. Everything here recomputes results by
// direct enumeration or simulation, independent of the library's
// implementation paths, so the two routes check each other.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "hmmboost/boosting.hpp"
#include "hmmboost/hmm.hpp"
#include "hmmboost/metrics.hpp"
#include "hmmboost/rng.hpp"

namespace testsupport {

using hmmboost::HmmParams;
using hmmboost::LabeledScore;
using hmmboost::Matrix;
using hmmboost::ObservationSequence;
using hmmboost::Rng;
using hmmboost::StumpFit;

// Random row-stochastic model, not near-uniform: entries drawn from
// U[0.05, 1] then normalized, so rows are well away from degenerate.
inline HmmParams random_params(int n, int m, std::uint64_t seed) {
    Rng rng(seed);
    auto fill = [&](double* row, int len) {
        double sum = 0.0;
        for (int j = 0; j < len; ++j) {
            row[j] = rng.uniform(0.05, 1.0);
            sum += row[j];
        }
        for (int j = 0; j < len; ++j) row[j] /= sum;
    };
    HmmParams p;
    p.num_states = n;
    p.num_symbols = m;
    p.initial.resize(n);
    p.transition = Matrix(n, n);
    p.emission = Matrix(n, m);
    fill(p.initial.data(), n);
    for (int i = 0; i < n; ++i) fill(p.transition.row(i), n);
    for (int i = 0; i < n; ++i) fill(p.emission.row(i), m);
    return p;
}

inline ObservationSequence random_sequence(int m, int len, std::uint64_t seed) {
    Rng rng(seed);
    ObservationSequence obs(len);
    for (int t = 0; t < len; ++t) obs[t] = static_cast<int>(rng.below(m));
    return obs;
}

// Draws a sequence from the model itself (generative direction).
inline ObservationSequence sample_from_hmm(const HmmParams& p, int len, std::uint64_t seed) {
    Rng rng(seed);
    ObservationSequence obs(len);
    std::size_t state = rng.pick_weighted(p.initial.data(), p.num_states);
    for (int t = 0; t < len; ++t) {
        obs[t] = static_cast<int>(rng.pick_weighted(p.emission.row(state), p.num_symbols));
        state = rng.pick_weighted(p.transition.row(state), p.num_states);
    }
    return obs;
}

// ln P(O|lambda) by summing over all N^T state paths.
inline double path_enum_log_likelihood(const HmmParams& p, const ObservationSequence& obs) {
    const int n = p.num_states;
    const std::size_t len = obs.size();
    std::vector<int> path(len, 0);
    double total = 0.0;
    for (;;) {
        double prob = p.initial[path[0]] * p.emission(path[0], obs[0]);
        for (std::size_t t = 1; t < len; ++t) {
            prob *= p.transition(path[t - 1], path[t]) * p.emission(path[t], obs[t]);
        }
        total += prob;
        std::size_t d = 0;
        while (d < len && ++path[d] == n) path[d++] = 0;
        if (d == len) break;
    }
    return std::log(total);
}

// P(state_t = i | O, lambda) by the same exhaustive enumeration.
inline double path_enum_posterior(const HmmParams& p, const ObservationSequence& obs,
                                  std::size_t at, int state) {
    const int n = p.num_states;
    const std::size_t len = obs.size();
    std::vector<int> path(len, 0);
    double total = 0.0, mass = 0.0;
    for (;;) {
        double prob = p.initial[path[0]] * p.emission(path[0], obs[0]);
        for (std::size_t t = 1; t < len; ++t) {
            prob *= p.transition(path[t - 1], path[t]) * p.emission(path[t], obs[t]);
        }
        total += prob;
        if (path[at] == state) mass += prob;
        std::size_t d = 0;
        while (d < len && ++path[d] == n) path[d++] = 0;
        if (d == len) break;
    }
    return mass / total;
}

// Fraction of (positive, negative) pairs where the positive outscores the
// negative, ties counted one half: the Mann-Whitney statistic.
inline double pairwise_auc(const std::vector<LabeledScore>& scores) {
    double wins = 0.0;
    long pairs = 0;
    for (const auto& pos : scores) {
        if (pos.label != 1) continue;
        for (const auto& neg : scores) {
            if (neg.label != -1) continue;
            ++pairs;
            if (pos.score > neg.score) wins += 1.0;
            else if (pos.score == neg.score) wins += 0.5;
        }
    }
    return wins / static_cast<double>(pairs);
}

// Exhaustive stump search: every candidate cut evaluated by a direct
// per-sample loop, same tie rules (smallest threshold, then polarity +1).
inline StumpFit brute_force_stump(const std::vector<double>& scores,
                                  const std::vector<int>& labels,
                                  const std::vector<double>& weights) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> values = scores;
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    std::vector<double> thetas;
    thetas.push_back(-inf);
    for (std::size_t i = 1; i < values.size(); ++i) {
        thetas.push_back(hmmboost::cut_between(values[i - 1], values[i]));
    }
    thetas.push_back(inf);

    double weight_total = 0.0;
    for (double w : weights) weight_total += w;

    StumpFit best;
    best.weighted_error = inf;
    for (double theta : thetas) {
        for (int polarity : {1, -1}) {
            double err = 0.0;
            for (std::size_t i = 0; i < scores.size(); ++i) {
                const bool hit = polarity == 1 ? scores[i] >= theta : scores[i] <= theta;
                const int predicted = hit ? 1 : -1;
                if (predicted != labels[i]) err += weights[i];
            }
            if (err < best.weighted_error) best = {theta, polarity, err};
        }
    }
    best.weighted_error /= weight_total;
    return best;
}

// Pool of extremely weak 1-D classifiers: each model's score is the label
// signal scaled by a small random coefficient plus unit noise, so single
// stumps sit barely above coin-flip accuracy.
struct WeakPool {
    Matrix scores;  // models x samples
    std::vector<int> labels;
};

inline WeakPool weak_pool(std::size_t models, std::size_t samples, std::uint64_t seed,
                          double max_signal = 0.06) {
    Rng rng(seed);
    WeakPool pool;
    pool.labels.resize(samples);
    for (std::size_t i = 0; i < samples; ++i) pool.labels[i] = i < samples / 2 ? 1 : -1;
    rng.shuffle(pool.labels);
    pool.scores = Matrix(models, samples);
    for (std::size_t r = 0; r < models; ++r) {
        const double signal = rng.uniform(0.0, max_signal);
        for (std::size_t i = 0; i < samples; ++i) {
            pool.scores(r, i) = pool.labels[i] * signal + rng.uniform(-1.0, 1.0);
        }
    }
    return pool;
}

}  // namespace testsupport
