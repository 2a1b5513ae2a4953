#include "hmmboost/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hmmboost/rng.hpp"

namespace hmmboost {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_scores(const std::vector<LabeledScore>& scores) {
    long pos = 0, neg = 0;
    for (const auto& s : scores) {
        if (std::isnan(s.score)) throw std::invalid_argument("NaN score");
        if (s.label == 1) {
            ++pos;
        } else if (s.label == -1) {
            ++neg;
        } else {
            throw std::invalid_argument("labels must be +1 or -1");
        }
    }
    if (pos == 0 || neg == 0) {
        throw std::invalid_argument("need at least one positive and one negative label");
    }
}

}  // namespace

double accuracy(long tp, long tn, long fp, long fn) {
    if (tp < 0 || tn < 0 || fp < 0 || fn < 0) {
        throw std::invalid_argument("confusion counts must be non-negative");
    }
    const long total = tp + tn + fp + fn;
    if (total == 0) throw std::invalid_argument("confusion matrix is empty");
    return static_cast<double>(tp + tn) / static_cast<double>(total);
}

RocCurve roc(const std::vector<LabeledScore>& scores) {
    check_scores(scores);
    std::vector<LabeledScore> sorted = scores;
    std::sort(sorted.begin(), sorted.end(),
              [](const LabeledScore& a, const LabeledScore& b) { return a.score > b.score; });

    long n_pos = 0, n_neg = 0;
    for (const auto& s : sorted) (s.label == 1 ? n_pos : n_neg)++;

    RocCurve curve;
    curve.points.push_back({kInf, 0.0, 0.0});
    long tp = 0, fp = 0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        const double value = sorted[i].score;
        // everyone tied at this score flips together
        while (i < sorted.size() && sorted[i].score == value) {
            (sorted[i].label == 1 ? tp : fp)++;
            ++i;
        }
        curve.points.push_back({value,
                                static_cast<double>(fp) / static_cast<double>(n_neg),
                                static_cast<double>(tp) / static_cast<double>(n_pos)});
    }

    double area = 0.0;
    for (std::size_t p = 1; p < curve.points.size(); ++p) {
        const auto& a = curve.points[p - 1];
        const auto& b = curve.points[p];
        area += (b.fpr - a.fpr) * 0.5 * (a.tpr + b.tpr);
    }
    curve.auc = area;
    return curve;
}

double auc_reverse(double auc) {
    if (!(auc >= 0.0 && auc <= 1.0)) throw std::invalid_argument("auc must lie in [0, 1]");
    return 1.0 - auc;
}

FoldPlan make_folds(int n_pos, int n_neg, int k, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("fold count must be at least 2");
    if (n_pos < k) {
        throw std::invalid_argument("positive class has " + std::to_string(n_pos) +
                                    " samples, fewer than " + std::to_string(k) + " folds");
    }
    if (n_neg < k) {
        throw std::invalid_argument("negative class has " + std::to_string(n_neg) +
                                    " samples, fewer than " + std::to_string(k) + " folds");
    }
    FoldPlan plan;
    plan.fold_count = k;
    plan.seed = seed;

    auto assign = [&](int n, std::uint64_t stream) {
        std::vector<int> order(n);
        for (int i = 0; i < n; ++i) order[i] = i;
        Rng rng(mix_seed(seed, stream));
        rng.shuffle(order);
        std::vector<int> fold(n);
        for (int pos = 0; pos < n; ++pos) fold[order[pos]] = pos % k;
        return fold;
    };
    plan.positive_fold = assign(n_pos, 0);
    plan.negative_fold = assign(n_neg, 1);
    return plan;
}

double accuracy_at_threshold(const std::vector<LabeledScore>& scores, double threshold) {
    if (scores.empty()) throw std::invalid_argument("no scores");
    long correct = 0;
    for (const auto& s : scores) {
        const int predicted = s.score >= threshold ? 1 : -1;
        if (predicted == s.label) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(scores.size());
}

double threshold_best_accuracy(const std::vector<LabeledScore>& scores) {
    check_scores(scores);
    std::vector<double> values;
    values.reserve(scores.size());
    for (const auto& s : scores) values.push_back(s.score);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    std::vector<double> candidates;
    candidates.push_back(-kInf);
    for (std::size_t i = 1; i < values.size(); ++i) {
        candidates.push_back(cut_between(values[i - 1], values[i]));
    }
    candidates.push_back(kInf);

    double best_threshold = candidates.front();
    double best_accuracy = -1.0;
    for (double t : candidates) {
        const double acc = accuracy_at_threshold(scores, t);
        if (acc > best_accuracy) {
            best_accuracy = acc;
            best_threshold = t;
        }
    }
    return best_threshold;
}

}  // namespace hmmboost
