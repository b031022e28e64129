#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "feedwatch/cv.hpp"
#include "feedwatch/matrix.hpp"
#include "feedwatch/selection.hpp"
#include "feedwatch/ssvm.hpp"
#include "feedwatch/tuning.hpp"
#include "feedwatch/types.hpp"

namespace feedwatch {

struct ConfusionTable {
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
    std::size_t total() const { return tp + fp + tn + fn; }
};

ConfusionTable confusion_from(const std::vector<int>& predictions, const std::vector<int>& y);

struct MetricsReport {
    double accuracy = 0.0;
    double fpr = 0.0;
    double fnr = 0.0;
    double tpr = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f_score = 0.0;
    // Metrics whose ratio was 0/0 and reported as 0 by convention.
    std::vector<std::string> degenerate;
};

MetricsReport metrics(const ConfusionTable& table);

struct RocCurve {
    struct Point {
        double fpr, tpr, threshold;
    };
    std::vector<Point> points;  // threshold descending, (0,0) .. (1,1)
    double auc = 0.0;
};

/// Threshold sweep over unique score values (predict +1 when score >=
/// threshold), ties grouped into a single step; AUC by trapezoidal
/// integration in exact integer arithmetic.
RocCurve roc_auc(const std::vector<double>& scores, const std::vector<int>& labels);

/// Duplicate uniformly-sampled minority instances (with replacement) until
/// class counts equalize; originals are retained, duplicates appended.
void oversample(Matrix& x, std::vector<int>& y, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Protocol harness
// ---------------------------------------------------------------------------

struct PipelineConfig {
    double c_l1 = 1.0;              // screening penalty
    double screen_eps = 1e-8;       // candidate weight threshold
    Hyperparams selection_hp{10.0, 0.125, 5.0};  // fixed during forward selection
    int folds = 10;                 // inner CV folds (selection + tuning)
    SearchDomain domain{};
    double alpha = 5.0;
    ConvergenceOpts opts{};
};

/// Outcome of the staged model development on one training corpus:
/// screening -> forward selection -> uniform-design tuning.
struct PipelineFit {
    std::vector<std::size_t> feature_indices;  // selected registry columns
    std::vector<double> screen_weights;        // stage-1 weights (full width)
    Hyperparams hp;                            // tuned (C, gamma)
    double tune_cv_accuracy = 0.0;
    double selection_cv_accuracy = 0.0;
};

/// Run the staged pipeline on a full labeled matrix. With feature_selection
/// off, all columns are kept and only tuning runs.
PipelineFit pipeline_fit(const Matrix& x, const std::vector<int>& y, bool feature_selection,
                         const PipelineConfig& config, std::uint64_t seed);

/// Train the deployable model for a pipeline fit (SSVM on the selected
/// columns, scaler fitted on the raw values, registry-wide feature map).
SsvmModel pipeline_train_model(const Matrix& x, const std::vector<int>& y,
                               const PipelineFit& fit, const ConvergenceOpts& opts = {});

struct EvalConfig {
    PipelineConfig pipeline{};
    int oversample_repeats = 10;
    std::uint64_t seed = 0;
};

struct CellReport {
    MetricsReport mean;
    MetricsReport stddev;                 // zero when a single run
    std::vector<MetricsReport> per_seed;  // one entry per oversampling seed
    std::vector<ConfusionTable> tables;
};

/// The 2x2 evaluation grid {feature selection} x {oversampling} under a
/// leave-one-out outer protocol. Selection and tuning run once per row on the
/// full corpus; oversampling happens inside each training split only, with
/// `oversample_repeats` models averaged. Also returns the ROC of the full
/// (fs_os) cell from its first-seed decision scores.
struct EvalReport {
    std::map<std::string, CellReport> cells;  // keys: fs_os, fs, os, none
    RocCurve roc;
    PipelineFit fit_with_selection;
    PipelineFit fit_without_selection;
};

EvalReport evaluate_protocol(const Matrix& x, const std::vector<int>& y,
                             const EvalConfig& config);

// ---------------------------------------------------------------------------
// Observation-window sweep and feature reports
// ---------------------------------------------------------------------------

struct SweepConfig {
    std::vector<double> l_list;  // observation windows, minutes
    int permutations = 20;
    int folds = 10;
    bool feature_selection = true;
    bool oversampling = true;
    PipelineConfig pipeline{};
    std::uint64_t seed = 0;
};

struct SweepRow {
    double window_minutes;
    double mean_accuracy;
    double std_accuracy;
    std::vector<double> per_permutation;
};

/// For each observation window: truncate -> extract -> staged pipeline on the
/// full corpus -> k-fold CV accuracy, repeated over `permutations` fold
/// shuffles; reports mean/std per window.
std::vector<SweepRow> sweep_observation(const std::vector<Session>& sessions,
                                        const SweepConfig& config);

struct TopFeatureEntry {
    double window_minutes;
    int rank;       // 1-based
    std::string feature;
    double weight;  // screening weight (standardized space)
};

struct TopFeaturesReport {
    std::vector<TopFeatureEntry> positive;  // stalker-indicative
    std::vector<TopFeatureEntry> negative;  // owner-indicative
    std::map<std::string, int> histogram;   // appearances across windows
};

/// Per-window top-k positively and negatively weighted features of the
/// 1-norm screening SVM (zero-weight features never rank).
TopFeaturesReport top_weighted_features(const std::vector<Session>& sessions,
                                        const std::vector<double>& l_list = {1, 2, 3, 4, 5, 6, 7},
                                        int k = 3, double c_l1 = 1.0);

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

std::string serialize_metrics_grid(const EvalReport& report);        // metrics_grid.csv
std::string serialize_roc_points(const RocCurve& roc);               // roc_points.csv
std::string serialize_sweep(const std::vector<SweepRow>& rows);      // sweep_accuracy.csv
std::string serialize_top_features(const TopFeaturesReport& top);    // top_features.csv
std::string serialize_eval_report(const EvalReport& report);         // canonical JSON

}  // namespace feedwatch
