#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hmmboost/matrix.hpp"

namespace hmmboost {

using ObservationSequence = std::vector<int>;

// Discrete-observation HMM: N hidden states, M observation symbols,
// row-stochastic transition (N x N), emission (N x M) and initial (1 x N)
// distributions. States are 0..N-1, symbols 0..M-1.
struct HmmParams {
    int num_states = 0;   // N
    int num_symbols = 0;  // M
    Matrix transition;    // A
    Matrix emission;      // B
    std::vector<double> initial;  // pi

    // Throws std::invalid_argument if any row fails to sum to 1 within
    // `tol` or any entry leaves [0, 1].
    void validate(double tol = 1e-12) const;

    bool operator==(const HmmParams&) const = default;
};

struct TrainingConfig {
    int max_iterations = 200;
    double min_relative_ll_improvement = 1e-6;
    std::uint64_t seed = 0;
    double init_perturbation = 0.1;
};

struct TrainedModel {
    HmmParams params;
    double train_log_likelihood = 0.0;  // natural log, final params
    // ll_history[i] is ln P(O|lambda) under the params after i
    // re-estimation steps (entry 0 is the initial model). Non-decreasing
    // up to floating-point slack by EM monotonicity.
    std::vector<double> ll_history;
    int iterations_run = 0;  // number of re-estimation (E+M) steps taken
    std::uint64_t seed = 0;
};

// Near-uniform random initialization: each entry is the uniform value
// 1/len scaled by (1 + u), u ~ U[-perturbation, +perturbation], then the
// row is renormalized. Deterministic per seed, no zero entries.
HmmParams init_random(int num_states, int num_symbols, std::uint64_t seed,
                      double perturbation);

// ln P(O|lambda) via the scaled forward pass. Safe for sequences of at
// least 10^6 symbols. Returns -infinity when P(O|lambda) is exactly zero.
double forward_scaled(const HmmParams& model, const ObservationSequence& obs);

// Scaled forward/backward variables sharing one set of per-step scaling
// constants c_t = 1 / sum_i alpha_t(i):
//   alpha(t,i) = P(state_t = i | O_0..O_t)
//   beta(T-1,i) = c_{T-1},  beta(t,i) = c_t * sum_j A(i,j) B(j,O_{t+1}) beta(t+1,j)
// With this convention gamma_t(i) = alpha(t,i) * beta(t,i) / c_t and
// ln P(O|lambda) = -sum_t ln c_t.
struct ForwardBackward {
    Matrix alpha;  // T x N
    Matrix beta;   // T x N
    std::vector<double> scale;  // c_t, length T
    double log_likelihood = 0.0;
    bool degenerate = false;  // true when P(O|lambda) == 0

    double gamma(std::size_t t, std::size_t i) const {
        return alpha(t, i) * beta(t, i) / scale[t];
    }
};

ForwardBackward forward_backward(const HmmParams& model, const ObservationSequence& obs);

// Called after each re-estimation step with the updated params and the
// log-likelihood that step started from. Test seam for per-iteration checks.
using IterationObserver = std::function<void(const HmmParams&, double)>;

// Baum-Welch re-estimation until cfg.max_iterations steps have run or the
// relative log-likelihood improvement drops below
// cfg.min_relative_ll_improvement. The seed is recorded but not used here;
// randomness enters only through init_random.
TrainedModel baum_welch_train(const HmmParams& init, const ObservationSequence& obs,
                              const TrainingConfig& cfg,
                              const IterationObserver& observer = nullptr);

// Log-likelihood per opcode: forward_scaled / T. The length normalization
// makes scores of different-length sequences comparable.
double score_llpo(const HmmParams& model, const ObservationSequence& obs);

}  // namespace hmmboost
