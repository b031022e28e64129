#include "feedwatch/linalg.hpp"

#include <cmath>

namespace feedwatch {

std::vector<double> solve_spd(const Matrix& a, const std::vector<double>& b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) throw DimensionError("solve_spd: shape mismatch");
    Matrix l = a;  // lower factor built in place
    for (std::size_t j = 0; j < n; ++j) {
        double diag = l(j, j);
        for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
        if (!(diag > 0.0)) throw Error("solve_spd: matrix not positive definite");
        diag = std::sqrt(diag);
        l(j, j) = diag;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = l(i, j);
            const double* ri = l.row(i).data();
            const double* rj = l.row(j).data();
            for (std::size_t k = 0; k < j; ++k) s -= ri[k] * rj[k];
            l(i, j) = s / diag;
        }
    }
    // Forward then backward substitution.
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        const double* ri = l.row(i).data();
        for (std::size_t k = 0; k < i; ++k) s -= ri[k] * y[k];
        y[i] = s / l(i, i);
    }
    std::vector<double> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = y[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * x[k];
        x[ii] = s / l(ii, ii);
    }
    return x;
}

void weighted_gram_accumulate(const Matrix& b, const std::vector<double>& d, double diag_add,
                              Matrix& out) {
    const std::size_t n = b.rows(), m = b.cols();
    if (d.size() != n) throw DimensionError("weighted_gram_accumulate: weight size");
    out = Matrix(m, m);
    // Accumulate the upper triangle of sum_i d_i * b_i b_i^T.
    for (std::size_t i = 0; i < n; ++i) {
        const double* bi = b.row(i).data();
        const double di = d[i];
        if (di == 0.0) continue;
        for (std::size_t j = 0; j < m; ++j) {
            const double s = di * bi[j];
            if (s == 0.0) continue;
            double* oj = out.row(j).data();
            for (std::size_t k = j; k < m; ++k) oj[k] += s * bi[k];
        }
    }
    for (std::size_t j = 0; j < m; ++j) {
        out(j, j) += diag_add;
        for (std::size_t k = j + 1; k < m; ++k) out(k, j) = out(j, k);
    }
}

std::vector<double> symmetric_eigenvalues(Matrix a, int sweeps) {
    const std::size_t n = a.rows();
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (off < 1e-24) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a(p, q) == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

}  // namespace feedwatch
