#pragma once

#include <cstdint>
#include <vector>

#include "feedwatch/cv.hpp"
#include "feedwatch/matrix.hpp"
#include "feedwatch/ssvm.hpp"

namespace feedwatch {

/// Search rectangle in (log2 C, log2 gamma) space plus the per-stage design
/// sizes. Later stages halve the rectangle around the incumbent best.
struct SearchDomain {
    double log2c_lo = -6.0, log2c_hi = 12.0;
    double log2g_lo = -12.0, log2g_hi = 4.0;
    std::vector<int> stage_sizes = {13, 9};

    void validate() const;
};

struct Rect {
    double c_lo, c_hi, g_lo, g_hi;
};

struct UdPoint {
    double log2c, log2g;
};

/// Good-lattice-point uniform design of n runs mapped into the rectangle:
/// point i has u_i = (i + 0.5)/n and v_i = ((i*g mod n) + 0.5)/n with the
/// generator g the smallest integer > n/3 coprime to n (5 for n=13, 4 for
/// n=9). Both coordinate sets are permutations of the same n levels.
std::vector<UdPoint> ud_points(int n, const Rect& rect);

struct TuneTracePoint {
    int stage;
    int point_index;
    double log2c, log2g;
    double cv_accuracy;
};

struct TuneResult {
    Hyperparams best;
    double cv_accuracy = 0.0;
    std::vector<TuneTracePoint> trace;
};

/// Nested uniform-design search scored by stratified k-fold CV accuracy of
/// the RBF SSVM. Ties prefer smaller C, then smaller gamma. Deterministic
/// given the seed.
TuneResult tune(const Matrix& x, const std::vector<int>& y, const SearchDomain& domain = {},
                int folds = 10, std::uint64_t seed = 0, double alpha = 5.0,
                const ConvergenceOpts& opts = {});

/// Trace CSV: `stage,point_index,log2C,log2gamma,cv_accuracy`.
std::string serialize_tune_trace(const std::vector<TuneTracePoint>& trace);

}  // namespace feedwatch
