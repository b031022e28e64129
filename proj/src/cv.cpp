#include "feedwatch/cv.hpp"

#include <algorithm>
#include <stdexcept>

#include "feedwatch/error.hpp"
#include "feedwatch/rand.hpp"
#include "feedwatch/threads.hpp"

namespace feedwatch {

std::vector<int> stratified_folds(const std::vector<int>& y, int folds, std::uint64_t seed) {
    if (folds < 2) throw Error("stratified_folds: need at least 2 folds");
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < y.size(); ++i) (y[i] > 0 ? pos : neg).push_back(i);
    if (pos.size() < static_cast<std::size_t>(folds) || neg.size() < static_cast<std::size_t>(folds))
        throw Error("stratified_folds: folds exceed a class count");

    std::vector<int> fold_of(y.size(), 0);
    int cls = 0;
    for (auto* group : {&pos, &neg}) {
        Rng rng(derive_seed(seed, "cv.folds", static_cast<std::uint64_t>(cls++)));
        rng.shuffle(*group);
        for (std::size_t k = 0; k < group->size(); ++k)
            fold_of[(*group)[k]] = static_cast<int>(k % static_cast<std::size_t>(folds));
    }
    return fold_of;
}

namespace {

struct Split {
    Matrix x;
    std::vector<int> y;
    std::vector<std::size_t> holdout;
};

Split make_split(const Matrix& x, const std::vector<int>& y, const std::vector<int>& fold_of,
                 int fold) {
    Split s;
    std::vector<std::size_t> train;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (fold_of[i] == fold)
            s.holdout.push_back(i);
        else
            train.push_back(i);
    }
    s.x = x.select_rows(train);
    for (std::size_t i : train) s.y.push_back(y[i]);
    int pos = 0, neg = 0;
    for (int yi : s.y) (yi > 0 ? pos : neg)++;
    if (pos == 0 || neg == 0) throw Error("cv: a class is absent from a training split");
    return s;
}

}  // namespace

CvResult cv_with_folds(const Matrix& x, const std::vector<int>& y,
                       const std::vector<int>& fold_of, const TrainerFn& trainer) {
    int folds = 0;
    for (int f : fold_of) folds = std::max(folds, f + 1);

    CvResult out;
    out.predictions.assign(y.size(), 0);
    out.scores.assign(y.size(), 0.0);

    const int threads = resolve_threads(static_cast<std::size_t>(folds));
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (int fold = 0; fold < folds; ++fold) {
        try {
            Split split = make_split(x, y, fold_of, fold);
            if (split.holdout.empty()) continue;
            ScoreFn score = trainer(split.x, split.y);
            for (std::size_t i : split.holdout) {
                const double s = score(x.row(i));
                out.scores[i] = s;
                out.predictions[i] = s < 0.0 ? -1 : +1;
            }
        } catch (...) {
#pragma omp critical
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return out;
}

CvResult loocv(const Matrix& x, const std::vector<int>& y, const TrainerFn& trainer) {
    std::vector<int> fold_of(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) fold_of[i] = static_cast<int>(i);
    return cv_with_folds(x, y, fold_of, trainer);
}

CvResult kfold_cv(const Matrix& x, const std::vector<int>& y, int folds, std::uint64_t seed,
                  const TrainerFn& trainer) {
    return cv_with_folds(x, y, stratified_folds(y, folds, seed), trainer);
}

double accuracy_of(const std::vector<int>& predictions, const std::vector<int>& y) {
    if (predictions.size() != y.size() || y.empty())
        throw DimensionError("accuracy_of: size mismatch");
    std::size_t correct = 0;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (predictions[i] == y[i]) ++correct;
    return static_cast<double>(correct) / static_cast<double>(y.size());
}

double mean_fold_accuracy(const std::vector<int>& predictions, const std::vector<int>& y,
                          const std::vector<int>& fold_of, int folds) {
    std::vector<std::size_t> correct(folds, 0), total(folds, 0);
    for (std::size_t i = 0; i < y.size(); ++i) {
        ++total[fold_of[i]];
        if (predictions[i] == y[i]) ++correct[fold_of[i]];
    }
    double sum = 0.0;
    int used = 0;
    for (int f = 0; f < folds; ++f) {
        if (total[f] == 0) continue;
        sum += static_cast<double>(correct[f]) / static_cast<double>(total[f]);
        ++used;
    }
    return used == 0 ? 0.0 : sum / used;
}

double ssvm_cv_accuracy(const Matrix& x, const std::vector<int>& y,
                        const std::vector<int>& fold_of, int folds, const Hyperparams& hp,
                        const KernelSpec& kernel, const ConvergenceOpts& opts) {
    CvResult res = cv_with_folds(x, y, fold_of, [&](const Matrix& xt, const std::vector<int>& yt) {
        SsvmModel model = train_ssvm(xt, yt, hp, kernel, opts);
        return ScoreFn([model = std::move(model)](std::span<const double> row) {
            return model.decision(row);
        });
    });
    return mean_fold_accuracy(res.predictions, y, fold_of, folds);
}

}  // namespace feedwatch
