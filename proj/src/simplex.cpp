#include "feedwatch/simplex.hpp"

#include <cmath>
#include <limits>

#include "feedwatch/error.hpp"

namespace feedwatch {

namespace {
constexpr double kTol = 1e-9;
}

SimplexResult simplex_solve(const Matrix& e, const std::vector<double>& rhs,
                            const std::vector<double>& cost,
                            const std::vector<std::size_t>& initial_basis, int max_iterations) {
    const std::size_t m = e.rows(), n = e.cols();
    if (rhs.size() != m || cost.size() != n || initial_basis.size() != m)
        throw DimensionError("simplex: shape mismatch");

    Matrix t = e;
    std::vector<double> b = rhs;
    std::vector<std::size_t> basis = initial_basis;

    int iter = 0;
    for (;; ++iter) {
        if (iter >= max_iterations) throw Error("simplex: iteration cap exceeded");

        // Reduced costs recomputed from scratch each round; Bland's rule picks
        // the lowest-index improving column.
        std::size_t enter = n;
        for (std::size_t j = 0; j < n && enter == n; ++j) {
            double zj = 0.0;
            for (std::size_t i = 0; i < m; ++i) zj += cost[basis[i]] * t(i, j);
            if (cost[j] - zj < -kTol) enter = j;
        }
        if (enter == n) break;  // optimal

        // Ratio test; ties broken by the smallest basis variable index.
        std::size_t leave = m;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            if (t(i, enter) > kTol) {
                const double ratio = b[i] / t(i, enter);
                if (ratio < best_ratio - kTol ||
                    (ratio < best_ratio + kTol && (leave == m || basis[i] < basis[leave]))) {
                    best_ratio = ratio;
                    leave = i;
                }
            }
        }
        if (leave == m) throw Error("simplex: unbounded objective");

        // Pivot.
        const double piv = t(leave, enter);
        double* rl = t.row(leave).data();
        for (std::size_t j = 0; j < n; ++j) rl[j] /= piv;
        b[leave] /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave) continue;
            const double f = t(i, enter);
            if (f == 0.0) continue;
            double* ri = t.row(i).data();
            for (std::size_t j = 0; j < n; ++j) ri[j] -= f * rl[j];
            b[i] -= f * b[leave];
        }
        basis[leave] = enter;
    }

    SimplexResult res;
    res.v.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) res.v[basis[i]] = b[i];
    double obj = 0.0;
    for (std::size_t j = 0; j < n; ++j) obj += cost[j] * res.v[j];
    res.objective = obj;
    res.iterations = iter;
    return res;
}

L1SvmResult train_l1svm(const Matrix& x, const std::vector<int>& y, double c) {
    const std::size_t n = x.rows(), d = x.cols();
    if (y.size() != n) throw DimensionError("l1svm: label count mismatch");
    if (n == 0) throw Error("l1svm: empty training set");
    if (!(c > 0.0)) throw Error("l1svm: C must be positive");
    {
        int pos = 0, neg = 0;
        for (int yi : y) (yi > 0 ? pos : neg)++;
        if (pos == 0 || neg == 0) throw Error("l1svm: both classes must be present");
    }

    // Columns: w+ (d), w- (d), b+, b-, xi (n), surplus (n).
    const std::size_t cols = 2 * d + 2 + 2 * n;
    Matrix e(n, cols);
    std::vector<double> rhs(n, 1.0), cost(cols, 0.0);
    std::vector<std::size_t> basis(n);
    for (std::size_t j = 0; j < d; ++j) {
        cost[j] = 1.0;
        cost[d + j] = 1.0;
    }
    for (std::size_t i = 0; i < n; ++i) cost[2 * d + 2 + i] = c;
    for (std::size_t i = 0; i < n; ++i) {
        const double yi = y[i];
        for (std::size_t j = 0; j < d; ++j) {
            e(i, j) = yi * x(i, j);
            e(i, d + j) = -yi * x(i, j);
        }
        e(i, 2 * d) = yi;
        e(i, 2 * d + 1) = -yi;
        e(i, 2 * d + 2 + i) = 1.0;       // xi
        e(i, 2 * d + 2 + n + i) = -1.0;  // surplus
        basis[i] = 2 * d + 2 + i;
    }

    SimplexResult lp = simplex_solve(e, rhs, cost, basis);

    L1SvmResult out;
    out.w.resize(d);
    for (std::size_t j = 0; j < d; ++j) out.w[j] = lp.v[j] - lp.v[d + j];
    out.b = lp.v[2 * d] - lp.v[2 * d + 1];
    out.objective = lp.objective;
    out.iterations = lp.iterations;
    return out;
}

}  // namespace feedwatch
