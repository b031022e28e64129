#pragma once

#include <span>
#include <variant>

#include "feedwatch/matrix.hpp"

namespace feedwatch {

struct LinearKernel {
    bool operator==(const LinearKernel&) const = default;
};
struct RbfKernel {
    double gamma;  // K(a,b) = exp(-gamma * |a-b|^2), gamma > 0
    bool operator==(const RbfKernel&) const = default;
};

struct KernelSpec {
    std::variant<LinearKernel, RbfKernel> variant = LinearKernel{};

    static KernelSpec linear() { return {LinearKernel{}}; }
    static KernelSpec rbf(double gamma);

    bool is_rbf() const { return std::holds_alternative<RbfKernel>(variant); }
    double gamma() const { return std::get<RbfKernel>(variant).gamma; }
    bool operator==(const KernelSpec&) const = default;
};

double kernel_eval(const KernelSpec& kernel, std::span<const double> a,
                   std::span<const double> b);

/// G[i][j] = K(A_i, B_j). Rows are computed independently (OpenMP); entries
/// are bit-identical to gram_matrix_serial.
Matrix gram_matrix(const Matrix& a, const Matrix& b, const KernelSpec& kernel);

/// Single-threaded reference used by tests and the benchmark.
Matrix gram_matrix_serial(const Matrix& a, const Matrix& b, const KernelSpec& kernel);

}  // namespace feedwatch
