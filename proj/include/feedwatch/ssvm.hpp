#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "feedwatch/kernels.hpp"
#include "feedwatch/matrix.hpp"

namespace feedwatch {

inline constexpr const char* kModelSchemaVersion = "feedwatch.model/1";

/// Smoothed plus function p(x, alpha) = x + ln(1 + e^(-alpha x)) / alpha.
/// Stable for large |alpha x|; p(x) >= max(x, 0) with gap <= ln(2)/alpha.
double smooth_plus(double x, double alpha);
/// First derivative: the logistic sigmoid of alpha*x.
double smooth_plus_d1(double x, double alpha);
/// Second derivative: alpha * s * (1 - s) with s = sigmoid(alpha*x).
double smooth_plus_d2(double x, double alpha);

struct Hyperparams {
    double c = 1.0;      // penalty
    double gamma = 1.0;  // RBF width (ignored for linear kernels)
    double alpha = 5.0;  // smoothing sharpness

    void validate() const;
};

struct ConvergenceOpts {
    double grad_tol = 1e-6;
    int max_iters = 100;
    double armijo_sigma = 0.05;
    double armijo_shrink = 0.5;
    int max_backtracks = 30;
    double ridge = 1e-8;

    void validate() const;
};

/// Per-feature standardization fitted on training data.
struct Scaler {
    std::vector<double> means;
    std::vector<double> stds;  // constant features get std 1

    static Scaler fit(const Matrix& x);
    Matrix transform(const Matrix& x) const;
    void transform_row(std::span<const double> in, std::span<double> out) const;
    static Scaler identity(std::size_t dim);
};

struct TrainingMeta {
    double c = 0.0;
    double alpha = 0.0;
    int iterations = 0;
    double final_gradient_norm = 0.0;
};

/// Trained smooth-SVM classifier. Inputs to decision()/predict() are full
/// vectors of input_dim entries; the model applies feature_indices and the
/// scaler internally. Immutable once trained.
struct SsvmModel {
    KernelSpec kernel;
    std::size_t input_dim = 0;
    std::vector<std::size_t> feature_indices;  // into the input vector
    Scaler scaler;                             // over the selected features
    std::vector<double> coefficients;          // w (linear) or u (kernel)
    double bias = 0.0;
    Matrix support_points;  // scaled training inputs, kernel case only
    TrainingMeta training_meta;

    double decision(std::span<const double> x) const;
    int predict(std::span<const double> x) const;  // sign; 0 maps to +1

    /// Remap a model trained on a column subset so it accepts full-width
    /// inputs and selects `indices` itself.
    SsvmModel with_feature_map(std::size_t full_dim, std::vector<std::size_t> indices) const;

    std::string to_json() const;
    static SsvmModel from_json(const std::string& text);
};

/// Unconstrained smoothed objective over z = (coefficients..., bias):
///   F(z) = (C/2) * sum_i p(1 - y_i * (a_i . z), alpha)^2 + |z|^2 / 2
/// where a_i is the i-th design row (features or kernel row, plus a trailing
/// 1 for the bias). Exposed for direct gradient verification.
class SsvmObjective {
public:
    SsvmObjective(Matrix design, std::vector<int> labels, double c, double alpha);

    std::size_t dim() const { return design_.cols(); }
    double value(const std::vector<double>& z) const;
    std::vector<double> gradient(const std::vector<double>& z) const;
    /// Newton system matrix H = C * A^T D A + (1 + ridge) I.
    Matrix hessian(const std::vector<double>& z, double ridge) const;

    static Matrix design_linear(const Matrix& x);
    static Matrix design_kernel(const Matrix& gram);

private:
    void residuals(const std::vector<double>& z, std::vector<double>& r) const;
    Matrix design_;
    std::vector<int> labels_;
    double c_;
    double alpha_;
};

/// Train by Newton's method with Armijo backtracking. X is standardized
/// internally (scaler fitted here); y entries must be -1/+1 with both classes
/// present. The kernel case keeps all training points as support points.
SsvmModel train_ssvm(const Matrix& x, const std::vector<int>& y, const Hyperparams& hp,
                     const KernelSpec& kernel, const ConvergenceOpts& opts = {},
                     bool standardize = true);

}  // namespace feedwatch
