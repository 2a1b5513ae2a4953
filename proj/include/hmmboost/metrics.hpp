#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace hmmboost {

// One scored sample; label is +1 (malware) or -1 (benign). Higher scores
// mean more malware-like.
struct LabeledScore {
    double score;
    int label;
};

double accuracy(long tp, long tn, long fp, long fn);

struct RocPoint {
    double threshold;  // classify positive iff score >= threshold
    double fpr;
    double tpr;
};

// Threshold sweep from +infinity down; samples with equal scores change
// classification together, producing diagonal segments for ties. The
// trapezoidal auc therefore equals the Mann-Whitney pairwise statistic
// with ties counted 1/2.
struct RocCurve {
    std::vector<RocPoint> points;  // starts at (0,0), ends at (1,1)
    double auc = 0.0;
};

RocCurve roc(const std::vector<LabeledScore>& scores);

// 1 - auc: the score of the same classifier with its sense reversed.
double auc_reverse(double auc);

// Stratified k-fold assignment. positive_fold[i] / negative_fold[i] give
// the fold of the i-th positive / negative sample; per-class fold sizes
// differ by at most one.
struct FoldPlan {
    int fold_count = 0;
    std::vector<int> positive_fold;
    std::vector<int> negative_fold;
    std::uint64_t seed = 0;
};

FoldPlan make_folds(int n_pos, int n_neg, int k, std::uint64_t seed);

// A threshold value strictly between two consecutive distinct scores
// (well-defined when either side is infinite). Shared by stump fitting
// and accuracy-threshold selection.
inline double cut_between(double lo, double hi) {
    const double inf = std::numeric_limits<double>::infinity();
    if (lo == -inf && hi == inf) return 0.0;
    if (lo == -inf) return hi - 1.0;
    if (hi == inf) return lo + 1.0;
    return 0.5 * (lo + hi);
}

// Fraction of samples classified correctly by "positive iff score >=
// threshold".
double accuracy_at_threshold(const std::vector<LabeledScore>& scores, double threshold);

// The threshold maximizing accuracy_at_threshold over the candidate cuts
// (-infinity, midpoints between distinct scores, +infinity); ties keep
// the smallest threshold. Used to pick a reporting threshold on training
// scores, then applied to the test fold.
double threshold_best_accuracy(const std::vector<LabeledScore>& scores);

}  // namespace hmmboost
