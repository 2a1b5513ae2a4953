#include "hmmboost/restarts.hpp"

#include <numeric>
#include <stdexcept>

#include "hmmboost/parallel.hpp"
#include "hmmboost/rng.hpp"

namespace hmmboost {

ModelPool train_pool(const ObservationSequence& obs, int restarts, int num_states,
                     int num_symbols, const TrainingConfig& cfg, int threads) {
    if (restarts < 1) throw std::invalid_argument("restart count must be >= 1");

    ModelPool pool;
    pool.master_seed = cfg.seed;
    pool.restart_count = restarts;
    pool.models.resize(restarts);

    parallel_for(static_cast<std::size_t>(restarts), threads, [&](std::size_t i) {
        TrainingConfig derived = cfg;
        derived.seed = mix_seed(cfg.seed, i);
        const HmmParams init =
            init_random(num_states, num_symbols, derived.seed, derived.init_perturbation);
        pool.models[i] = baum_welch_train(init, obs, derived);
    });
    return pool;
}

std::size_t select_best_index(const ModelPool& pool) {
    if (pool.models.empty()) throw std::invalid_argument("model pool is empty");
    std::size_t best = 0;
    for (std::size_t i = 1; i < pool.models.size(); ++i) {
        if (pool.models[i].train_log_likelihood >
            pool.models[best].train_log_likelihood) {
            best = i;
        }
    }
    return best;
}

const TrainedModel& select_best(const ModelPool& pool) {
    return pool.models[select_best_index(pool)];
}

double average_case_metric(const std::vector<double>& per_model_metric) {
    if (per_model_metric.empty()) throw std::invalid_argument("no per-model values");
    const double sum =
        std::accumulate(per_model_metric.begin(), per_model_metric.end(), 0.0);
    return sum / static_cast<double>(per_model_metric.size());
}

}  // namespace hmmboost
