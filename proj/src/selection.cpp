#include "feedwatch/selection.hpp"

#include <algorithm>
#include <cmath>

#include "feedwatch/error.hpp"
#include "feedwatch/simplex.hpp"

namespace feedwatch {

ScreenResult candidate_features(const Matrix& x, const std::vector<int>& y, double c_l1,
                                double eps) {
    L1SvmResult lp = train_l1svm(x, y, c_l1);
    ScreenResult out;
    out.weights = lp.w;
    out.bias = lp.b;
    out.subset.provenance = FeatureSubset::Provenance::Candidate;
    for (std::size_t j = 0; j < lp.w.size(); ++j)
        if (std::abs(lp.w[j]) > eps) out.subset.indices.push_back(j);
    return out;
}

FeatureSubset forward_select(const Matrix& x, const std::vector<int>& y,
                             const std::vector<std::size_t>& candidates, const Hyperparams& hp,
                             int folds, std::uint64_t seed, const ConvergenceOpts& opts) {
    if (candidates.empty()) throw Error("forward_select: empty candidate set");
    const std::vector<int> fold_of = stratified_folds(y, folds, seed);
    const KernelSpec kernel = KernelSpec::rbf(hp.gamma);

    // Round 0 baseline: the majority-class rate.
    std::size_t pos = 0;
    for (int yi : y)
        if (yi > 0) ++pos;
    const std::size_t n = y.size();
    double best_acc =
        static_cast<double>(std::max(pos, n - pos)) / static_cast<double>(n);

    std::vector<std::size_t> remaining = candidates;
    std::sort(remaining.begin(), remaining.end());
    remaining.erase(std::unique(remaining.begin(), remaining.end()), remaining.end());

    std::vector<std::size_t> selected;
    std::vector<double> round_accuracies{best_acc};
    while (!remaining.empty()) {
        double round_best = -1.0;
        std::size_t round_pick = 0;
        for (std::size_t c : remaining) {
            std::vector<std::size_t> trial = selected;
            trial.insert(std::lower_bound(trial.begin(), trial.end(), c), c);
            const Matrix xt = x.select_cols(trial);
            const double acc = ssvm_cv_accuracy(xt, y, fold_of, folds, hp, kernel, opts);
            if (acc > round_best) {
                round_best = acc;
                round_pick = c;
            }
        }
        if (!(round_best > best_acc)) break;
        best_acc = round_best;
        round_accuracies.push_back(best_acc);
        selected.insert(std::lower_bound(selected.begin(), selected.end(), round_pick),
                        round_pick);
        remaining.erase(std::find(remaining.begin(), remaining.end(), round_pick));
    }

    FeatureSubset out;
    out.indices = std::move(selected);
    out.provenance = FeatureSubset::Provenance::Forward;
    out.cv_accuracy = best_acc;
    out.round_accuracies = std::move(round_accuracies);
    return out;
}

}  // namespace feedwatch
