#pragma once

#include <cstdint>
#include <vector>

#include "feedwatch/cv.hpp"
#include "feedwatch/matrix.hpp"
#include "feedwatch/ssvm.hpp"

namespace feedwatch {

struct FeatureSubset {
    std::vector<std::size_t> indices;  // sorted ascending
    enum class Provenance { Candidate, Forward } provenance = Provenance::Candidate;
    double cv_accuracy = 0.0;  // recorded at selection time (0 for candidate stage)
    std::vector<double> round_accuracies;  // baseline, then each accepted round
};

struct ScreenResult {
    FeatureSubset subset;
    std::vector<double> weights;  // full-width 1-norm-SVM weights
    double bias = 0.0;
};

/// Stage 1 of feature selection: train the 1-norm SVM on (standardized) X and
/// keep the features whose weight magnitude exceeds eps.
ScreenResult candidate_features(const Matrix& x, const std::vector<int>& y, double c_l1 = 1.0,
                                double eps = 1e-8);

/// Stage 2: greedy forward selection scored by stratified k-fold CV accuracy
/// of an RBF SSVM at fixed hyperparameters. Each round adds the strictest
/// improvement (ties broken by lowest feature index) and stops when no
/// candidate improves the mean fold accuracy. Deterministic given the seed.
FeatureSubset forward_select(const Matrix& x, const std::vector<int>& y,
                             const std::vector<std::size_t>& candidates, const Hyperparams& hp,
                             int folds = 10, std::uint64_t seed = 0,
                             const ConvergenceOpts& opts = {});

}  // namespace feedwatch
