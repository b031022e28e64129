#pragma once

#include <cstddef>
#include <vector>

#include "feedwatch/matrix.hpp"

namespace feedwatch {

/// Dense tableau simplex for min c.v s.t. E v = rhs, v >= 0, using Bland's
/// anti-cycling rule for both the entering and the leaving choice. The caller
/// supplies a starting basis whose columns form an identity in E (so no
/// phase-1 is needed).
struct SimplexResult {
    std::vector<double> v;
    double objective = 0.0;
    int iterations = 0;
};

SimplexResult simplex_solve(const Matrix& e, const std::vector<double>& rhs,
                            const std::vector<double>& cost,
                            const std::vector<std::size_t>& initial_basis,
                            int max_iterations = 200000);

struct L1SvmResult {
    std::vector<double> w;
    double b = 0.0;
    double objective = 0.0;  // |w|_1 + C * sum(xi)
    int iterations = 0;
};

/// 1-norm SVM via the split-variable linear program
///   min sum_j (w+_j + w-_j) + C * sum_i xi_i
///   s.t. y_i ((w+ - w-) . x_i + b+ - b-) + xi_i >= 1,  all variables >= 0.
/// Solved exactly by the dense simplex above; returns w = w+ - w-. The slack
/// columns give a feasible start, so the LP is always solvable.
L1SvmResult train_l1svm(const Matrix& x, const std::vector<int>& y, double c);

}  // namespace feedwatch
