#include "feedwatch/kernels.hpp"

#include <cmath>
#include <cstddef>

#include "feedwatch/error.hpp"
#include "feedwatch/threads.hpp"

namespace feedwatch {

KernelSpec KernelSpec::rbf(double gamma) {
    if (!(gamma > 0.0)) throw Error("rbf kernel: gamma must be positive");
    return {RbfKernel{gamma}};
}

namespace {

inline double dot(const double* a, const double* b, std::size_t d) {
    double s = 0.0;
    for (std::size_t k = 0; k < d; ++k) s += a[k] * b[k];
    return s;
}

inline double sq_dist(const double* a, const double* b, std::size_t d) {
    double s = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        const double diff = a[k] - b[k];
        s += diff * diff;
    }
    return s;
}

void gram_row(const Matrix& a, const Matrix& b, const KernelSpec& kernel, std::size_t i,
              double* out) {
    const std::size_t d = a.cols();
    const double* ai = a.row(i).data();
    if (kernel.is_rbf()) {
        const double gamma = kernel.gamma();
        for (std::size_t j = 0; j < b.rows(); ++j)
            out[j] = std::exp(-gamma * sq_dist(ai, b.row(j).data(), d));
    } else {
        for (std::size_t j = 0; j < b.rows(); ++j) out[j] = dot(ai, b.row(j).data(), d);
    }
}

}  // namespace

double kernel_eval(const KernelSpec& kernel, std::span<const double> a,
                   std::span<const double> b) {
    if (a.size() != b.size()) throw DimensionError("kernel_eval: dimension mismatch");
    if (kernel.is_rbf()) return std::exp(-kernel.gamma() * sq_dist(a.data(), b.data(), a.size()));
    return dot(a.data(), b.data(), a.size());
}

Matrix gram_matrix(const Matrix& a, const Matrix& b, const KernelSpec& kernel) {
    if (a.cols() != b.cols()) throw DimensionError("gram_matrix: dimension mismatch");
    Matrix g(a.rows(), b.rows());
    const int threads = resolve_threads(a.rows());
#pragma omp parallel for schedule(static) num_threads(threads)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(a.rows()); ++i)
        gram_row(a, b, kernel, static_cast<std::size_t>(i), g.row(i).data());
    return g;
}

Matrix gram_matrix_serial(const Matrix& a, const Matrix& b, const KernelSpec& kernel) {
    if (a.cols() != b.cols()) throw DimensionError("gram_matrix: dimension mismatch");
    Matrix g(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) gram_row(a, b, kernel, i, g.row(i).data());
    return g;
}

}  // namespace feedwatch
