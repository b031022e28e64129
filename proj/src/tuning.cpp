#include "feedwatch/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "feedwatch/error.hpp"
#include "feedwatch/io_util.hpp"

namespace feedwatch {

void SearchDomain::validate() const {
    if (!(log2c_lo <= log2c_hi) || !(log2g_lo <= log2g_hi))
        throw Error("search domain: lo must not exceed hi");
    if (stage_sizes.empty()) throw Error("search domain: need at least one stage");
    for (int s : stage_sizes)
        if (s < 2) throw Error("search domain: stage sizes must be >= 2");
}

std::vector<UdPoint> ud_points(int n, const Rect& rect) {
    if (n < 2) throw Error("ud_points: need n >= 2");
    int g = static_cast<int>(n / 3.0) + 1;
    while (std::gcd(g, n) != 1) ++g;

    std::vector<UdPoint> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double u = (i + 0.5) / n;
        const double v = ((static_cast<long long>(i) * g) % n + 0.5) / n;
        pts.push_back({rect.c_lo + u * (rect.c_hi - rect.c_lo),
                       rect.g_lo + v * (rect.g_hi - rect.g_lo)});
    }
    return pts;
}

TuneResult tune(const Matrix& x, const std::vector<int>& y, const SearchDomain& domain,
                int folds, std::uint64_t seed, double alpha, const ConvergenceOpts& opts) {
    domain.validate();
    const std::vector<int> fold_of = stratified_folds(y, folds, seed);

    TuneResult result;
    bool have_best = false;
    double best_c = 0.0, best_g = 0.0;

    double side_c = domain.log2c_hi - domain.log2c_lo;
    double side_g = domain.log2g_hi - domain.log2g_lo;
    Rect rect{domain.log2c_lo, domain.log2c_hi, domain.log2g_lo, domain.log2g_hi};

    for (std::size_t stage = 0; stage < domain.stage_sizes.size(); ++stage) {
        if (stage > 0) {
            side_c /= 2.0;
            side_g /= 2.0;
            rect.c_lo = std::max(domain.log2c_lo, best_c - side_c / 2.0);
            rect.c_hi = std::min(domain.log2c_hi, best_c + side_c / 2.0);
            rect.g_lo = std::max(domain.log2g_lo, best_g - side_g / 2.0);
            rect.g_hi = std::min(domain.log2g_hi, best_g + side_g / 2.0);
        }
        const auto pts = ud_points(domain.stage_sizes[stage], rect);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            Hyperparams hp{std::exp2(pts[i].log2c), std::exp2(pts[i].log2g), alpha};
            const double acc =
                ssvm_cv_accuracy(x, y, fold_of, folds, hp, KernelSpec::rbf(hp.gamma), opts);
            result.trace.push_back(
                {static_cast<int>(stage + 1), static_cast<int>(i), pts[i].log2c, pts[i].log2g, acc});
            const bool better =
                !have_best || acc > result.cv_accuracy ||
                (acc == result.cv_accuracy &&
                 (pts[i].log2c < best_c || (pts[i].log2c == best_c && pts[i].log2g < best_g)));
            if (better) {
                have_best = true;
                result.cv_accuracy = acc;
                best_c = pts[i].log2c;
                best_g = pts[i].log2g;
                result.best = hp;
            }
        }
    }
    return result;
}

std::string serialize_tune_trace(const std::vector<TuneTracePoint>& trace) {
    std::string out = "stage,point_index,log2C,log2gamma,cv_accuracy\n";
    for (const auto& p : trace) {
        out += std::to_string(p.stage);
        out += ',';
        out += std::to_string(p.point_index);
        out += ',';
        out += format_g17(p.log2c);
        out += ',';
        out += format_g17(p.log2g);
        out += ',';
        out += format_g17(p.cv_accuracy);
        out += '\n';
    }
    return out;
}

}  // namespace feedwatch
