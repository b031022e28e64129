#pragma once

#include <vector>

#include "feedwatch/error.hpp"
#include "feedwatch/matrix.hpp"

namespace feedwatch {

/// Solve A x = b for symmetric positive-definite A (in-place Cholesky on a
/// copy). Throws Error if A is not positive definite.
std::vector<double> solve_spd(const Matrix& a, const std::vector<double>& b);

/// out = B^T diag(d) B + diag_add * I, with B of shape n x m (row-major).
/// Only needs d >= 0. Writes the full symmetric m x m result.
void weighted_gram_accumulate(const Matrix& b, const std::vector<double>& d, double diag_add,
                              Matrix& out);

/// Eigenvalues of a small symmetric matrix (cyclic Jacobi); ascending order.
std::vector<double> symmetric_eigenvalues(Matrix a, int sweeps = 50);

}  // namespace feedwatch
