#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "feedwatch/kernels.hpp"
#include "feedwatch/matrix.hpp"
#include "feedwatch/ssvm.hpp"

namespace feedwatch {

/// Stratified fold assignment: indices of each class are shuffled (seeded)
/// and dealt round-robin, so per-fold class ratios stay within one instance
/// of the global ratio. Returns fold id per instance.
std::vector<int> stratified_folds(const std::vector<int>& y, int folds, std::uint64_t seed);

using ScoreFn = std::function<double(std::span<const double>)>;
/// Trains on a split and returns a decision-score function for held-out rows.
using TrainerFn = std::function<ScoreFn(const Matrix& x, const std::vector<int>& y)>;

struct CvResult {
    std::vector<int> predictions;  // aligned with input order; -1/+1
    std::vector<double> scores;    // raw decision values
};

/// Leave-one-out cross validation: trains exactly n models.
CvResult loocv(const Matrix& x, const std::vector<int>& y, const TrainerFn& trainer);

/// Stratified k-fold cross validation, reproducible per seed.
CvResult kfold_cv(const Matrix& x, const std::vector<int>& y, int folds, std::uint64_t seed,
                  const TrainerFn& trainer);

/// Run CV against a precomputed fold assignment.
CvResult cv_with_folds(const Matrix& x, const std::vector<int>& y,
                       const std::vector<int>& fold_of, const TrainerFn& trainer);

double accuracy_of(const std::vector<int>& predictions, const std::vector<int>& y);

/// Mean over folds of the per-fold accuracy (the model-selection score).
double mean_fold_accuracy(const std::vector<int>& predictions, const std::vector<int>& y,
                          const std::vector<int>& fold_of, int folds);

/// Fixed-hyperparameter SSVM CV score used by feature selection and tuning:
/// one SSVM per fold, trained on the fold's complement, all folds evaluated
/// in parallel. Deterministic.
double ssvm_cv_accuracy(const Matrix& x, const std::vector<int>& y,
                        const std::vector<int>& fold_of, int folds, const Hyperparams& hp,
                        const KernelSpec& kernel, const ConvergenceOpts& opts = {});

}  // namespace feedwatch
