#include "hmmboost/hmm.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "hmmboost/rng.hpp"

namespace hmmboost {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_sequence(const HmmParams& model, const ObservationSequence& obs) {
    if (obs.empty()) throw std::invalid_argument("observation sequence is empty");
    for (int s : obs) {
        if (s < 0 || s >= model.num_symbols) {
            throw std::invalid_argument("observation symbol " + std::to_string(s) +
                                        " out of range [0, " +
                                        std::to_string(model.num_symbols) + ")");
        }
    }
}

void check_row(const double* r, std::size_t n, double tol, const char* what) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (r[j] < 0.0 || r[j] > 1.0) {
            throw std::invalid_argument(std::string(what) + " entry outside [0, 1]");
        }
        sum += r[j];
    }
    if (std::abs(sum - 1.0) > tol) {
        throw std::invalid_argument(std::string(what) + " row sums to " +
                                    std::to_string(sum) + ", not 1");
    }
}

}  // namespace

void HmmParams::validate(double tol) const {
    if (num_states < 1 || num_symbols < 1) {
        throw std::invalid_argument("model needs at least one state and one symbol");
    }
    const auto n = static_cast<std::size_t>(num_states);
    const auto m = static_cast<std::size_t>(num_symbols);
    if (transition.rows() != n || transition.cols() != n ||
        emission.rows() != n || emission.cols() != m || initial.size() != n) {
        throw std::invalid_argument("model matrix dimensions do not match N, M");
    }
    for (std::size_t i = 0; i < n; ++i) check_row(transition.row(i), n, tol, "transition");
    for (std::size_t i = 0; i < n; ++i) check_row(emission.row(i), m, tol, "emission");
    check_row(initial.data(), n, tol, "initial");
}

HmmParams init_random(int num_states, int num_symbols, std::uint64_t seed,
                      double perturbation) {
    if (num_states < 1) throw std::invalid_argument("state count must be positive");
    if (num_symbols < 1) throw std::invalid_argument("symbol count must be positive");
    if (!(perturbation > 0.0 && perturbation < 1.0)) {
        throw std::invalid_argument("init perturbation must lie in (0, 1)");
    }
    const auto n = static_cast<std::size_t>(num_states);
    const auto m = static_cast<std::size_t>(num_symbols);

    Rng rng(seed);
    auto fill_row = [&](double* r, std::size_t len) {
        const double uniform = 1.0 / static_cast<double>(len);
        double sum = 0.0;
        for (std::size_t j = 0; j < len; ++j) {
            r[j] = uniform * (1.0 + rng.uniform(-perturbation, perturbation));
            sum += r[j];
        }
        for (std::size_t j = 0; j < len; ++j) r[j] /= sum;
    };

    HmmParams p;
    p.num_states = num_states;
    p.num_symbols = num_symbols;
    p.initial.resize(n);
    p.transition = Matrix(n, n);
    p.emission = Matrix(n, m);
    fill_row(p.initial.data(), n);
    for (std::size_t i = 0; i < n; ++i) fill_row(p.transition.row(i), n);
    for (std::size_t i = 0; i < n; ++i) fill_row(p.emission.row(i), m);
    return p;
}

double forward_scaled(const HmmParams& model, const ObservationSequence& obs) {
    check_sequence(model, obs);
    const auto n = static_cast<std::size_t>(model.num_states);
    const std::size_t len = obs.size();

    // Only the previous alpha row is kept, so million-symbol sequences
    // cost O(N) memory.
    std::vector<double> cur(n), nxt(n);
    double log_prob = 0.0;

    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cur[i] = model.initial[i] * model.emission(i, obs[0]);
        sum += cur[i];
    }
    if (sum == 0.0) return kNegInf;
    log_prob += std::log(sum);
    for (std::size_t i = 0; i < n; ++i) cur[i] /= sum;

    for (std::size_t t = 1; t < len; ++t) {
        sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) acc += cur[j] * model.transition(j, i);
            nxt[i] = acc * model.emission(i, obs[t]);
            sum += nxt[i];
        }
        if (sum == 0.0) return kNegInf;
        log_prob += std::log(sum);
        for (std::size_t i = 0; i < n; ++i) nxt[i] /= sum;
        std::swap(cur, nxt);
    }
    return log_prob;
}

ForwardBackward forward_backward(const HmmParams& model, const ObservationSequence& obs) {
    check_sequence(model, obs);
    const auto n = static_cast<std::size_t>(model.num_states);
    const std::size_t len = obs.size();

    ForwardBackward fb;
    fb.alpha = Matrix(len, n);
    fb.beta = Matrix(len, n);
    fb.scale.assign(len, 0.0);

    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        fb.alpha(0, i) = model.initial[i] * model.emission(i, obs[0]);
        sum += fb.alpha(0, i);
    }
    if (sum == 0.0) {
        fb.log_likelihood = kNegInf;
        fb.degenerate = true;
        return fb;
    }
    fb.scale[0] = 1.0 / sum;
    for (std::size_t i = 0; i < n; ++i) fb.alpha(0, i) /= sum;

    for (std::size_t t = 1; t < len; ++t) {
        sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                acc += fb.alpha(t - 1, j) * model.transition(j, i);
            }
            fb.alpha(t, i) = acc * model.emission(i, obs[t]);
            sum += fb.alpha(t, i);
        }
        if (sum == 0.0) {
            fb.log_likelihood = kNegInf;
            fb.degenerate = true;
            return fb;
        }
        fb.scale[t] = 1.0 / sum;
        for (std::size_t i = 0; i < n; ++i) fb.alpha(t, i) /= sum;
    }

    double log_prob = 0.0;
    for (std::size_t t = 0; t < len; ++t) log_prob -= std::log(fb.scale[t]);
    fb.log_likelihood = log_prob;

    for (std::size_t i = 0; i < n; ++i) fb.beta(len - 1, i) = fb.scale[len - 1];
    for (std::size_t t = len - 1; t-- > 0;) {
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                acc += model.transition(i, j) * model.emission(j, obs[t + 1]) *
                       fb.beta(t + 1, j);
            }
            fb.beta(t, i) = fb.scale[t] * acc;
        }
    }
    return fb;
}

namespace {

// One M-step from the forward/backward quantities. Rows with no posterior
// mass (e.g. transitions when T == 1) keep their previous values.
void reestimate(HmmParams& p, const ObservationSequence& obs, const ForwardBackward& fb) {
    const auto n = static_cast<std::size_t>(p.num_states);
    const auto m = static_cast<std::size_t>(p.num_symbols);
    const std::size_t len = obs.size();

    Matrix trans_num(n, n);
    std::vector<double> trans_den(n, 0.0);
    Matrix emit_num(n, m);
    std::vector<double> emit_den(n, 0.0);

    for (std::size_t t = 0; t + 1 < len; ++t) {
        for (std::size_t i = 0; i < n; ++i) {
            double gamma_i = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double digamma = fb.alpha(t, i) * p.transition(i, j) *
                                       p.emission(j, obs[t + 1]) * fb.beta(t + 1, j);
                trans_num(i, j) += digamma;
                gamma_i += digamma;
            }
            trans_den[i] += gamma_i;
            emit_num(i, obs[t]) += gamma_i;
            emit_den[i] += gamma_i;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double gamma_last = fb.alpha(len - 1, i);
        emit_num(i, obs[len - 1]) += gamma_last;
        emit_den[i] += gamma_last;
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (trans_den[i] > 0.0) {
            for (std::size_t j = 0; j < n; ++j) {
                p.transition(i, j) = trans_num(i, j) / trans_den[i];
            }
            p.transition.normalize_row(i);
        }
        if (emit_den[i] > 0.0) {
            for (std::size_t k = 0; k < m; ++k) {
                p.emission(i, k) = emit_num(i, k) / emit_den[i];
            }
            p.emission.normalize_row(i);
        }
    }

    double pi_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        p.initial[i] = fb.gamma(0, i);
        pi_sum += p.initial[i];
    }
    if (pi_sum > 0.0) {
        for (std::size_t i = 0; i < n; ++i) p.initial[i] /= pi_sum;
    }
}

}  // namespace

TrainedModel baum_welch_train(const HmmParams& init, const ObservationSequence& obs,
                              const TrainingConfig& cfg, const IterationObserver& observer) {
    init.validate();
    check_sequence(init, obs);
    if (cfg.max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
    if (cfg.min_relative_ll_improvement < 0.0) {
        throw std::invalid_argument("min_relative_ll_improvement must be non-negative");
    }

    TrainedModel result;
    result.params = init;
    result.seed = cfg.seed;

    for (;;) {
        const ForwardBackward fb = forward_backward(result.params, obs);
        result.ll_history.push_back(fb.log_likelihood);
        if (fb.degenerate) break;
        const std::size_t evals = result.ll_history.size();
        if (evals > 1) {
            const double prev = result.ll_history[evals - 2];
            const double gain = fb.log_likelihood - prev;
            const double denom = std::max(std::abs(prev), std::numeric_limits<double>::min());
            if (gain < cfg.min_relative_ll_improvement * denom) break;
        }
        if (result.iterations_run == cfg.max_iterations) break;
        reestimate(result.params, obs, fb);
        ++result.iterations_run;
        if (observer) observer(result.params, fb.log_likelihood);
    }
    result.train_log_likelihood = result.ll_history.back();
    return result;
}

double score_llpo(const HmmParams& model, const ObservationSequence& obs) {
    if (obs.empty()) throw std::invalid_argument("cannot score an empty sequence");
    return forward_scaled(model, obs) / static_cast<double>(obs.size());
}

}  // namespace hmmboost
