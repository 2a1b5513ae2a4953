#pragma once

#include <cstdint>
#include <vector>

#include "hmmboost/hmm.hpp"

namespace hmmboost {

// R independently initialized models trained on the same sequence.
// models[i] was trained from seed mix_seed(master_seed, i), so the pool is
// a pure function of (master_seed, R) regardless of execution order.
struct ModelPool {
    std::vector<TrainedModel> models;
    std::uint64_t master_seed = 0;
    int restart_count = 0;
};

// Trains `restarts` models of size (num_states, num_symbols) on obs.
// cfg.seed acts as the master seed. Restarts run in parallel when
// threads > 1; results are identical for any worker count.
ModelPool train_pool(const ObservationSequence& obs, int restarts, int num_states,
                     int num_symbols, const TrainingConfig& cfg, int threads = 1);

// Index of the model with maximum training log-likelihood, earliest on
// ties. Likelihood only: no labels, no test data.
std::size_t select_best_index(const ModelPool& pool);
const TrainedModel& select_best(const ModelPool& pool);

// Arithmetic mean of a per-model metric; the "average HMM" bar, i.e. the
// expected outcome of training a single model.
double average_case_metric(const std::vector<double>& per_model_metric);

}  // namespace hmmboost
