#include <doctest.h>

#include <cmath>
#include <set>

#include "feedwatch/tuning.hpp"
#include "helpers.hpp"

using namespace feedwatch;
using namespace feedwatch::test;

TEST_CASE("ud_points: lattice structure") {
    SUBCASE("n=13 on the unit square is a latin design") {
        auto pts = ud_points(13, {0, 1, 0, 1});
        REQUIRE(pts.size() == 13);
        std::set<double> us, vs;
        for (const auto& p : pts) {
            us.insert(p.log2c);
            vs.insert(p.log2g);
        }
        CHECK(us.size() == 13);
        CHECK(vs.size() == 13);
    }
    SUBCASE("n=9 uses generator 4") {
        auto pts = ud_points(9, {0, 1, 0, 1});
        const int perm[9] = {0, 4, 8, 3, 7, 2, 6, 1, 5};
        for (int i = 0; i < 9; ++i) {
            CHECK(pts[i].log2c == doctest::Approx((i + 0.5) / 9.0));
            CHECK(pts[i].log2g == doctest::Approx((perm[i] + 0.5) / 9.0));
        }
    }
    SUBCASE("points are pairwise distinct") {
        for (int n : {2, 3, 5, 9, 13}) {
            auto pts = ud_points(n, {-2, 2, -1, 3});
            for (std::size_t i = 0; i < pts.size(); ++i)
                for (std::size_t j = i + 1; j < pts.size(); ++j) {
                    const double dx = pts[i].log2c - pts[j].log2c;
                    const double dy = pts[i].log2g - pts[j].log2g;
                    CHECK(dx * dx + dy * dy > 0.0);
                }
        }
    }
    SUBCASE("n below 2 is rejected") {
        CHECK_THROWS_AS(ud_points(1, {0, 1, 0, 1}), Error);
    }
}

namespace {

/// Two concentric rings: separable by an RBF machine, not by a linear one.
void circles(Rng& rng, Matrix& x, std::vector<int>& y, std::size_t per_class) {
    x = Matrix(2 * per_class, 2);
    y.assign(2 * per_class, 0);
    for (std::size_t i = 0; i < 2 * per_class; ++i) {
        const bool inner = i < per_class;
        const double r = inner ? rng.uniform(0.0, 1.0) : rng.uniform(2.2, 3.0);
        const double theta = rng.uniform(0.0, 2 * 3.14159265358979);
        x(i, 0) = r * std::cos(theta);
        x(i, 1) = r * std::sin(theta);
        y[i] = inner ? -1 : 1;
    }
}

}  // namespace

TEST_CASE("tune separates concentric circles and beats the default") {
    Rng rng(401);
    Matrix x;
    std::vector<int> y;
    circles(rng, x, y, 50);

    TuneResult result = tune(x, y, SearchDomain{}, 5, 11);
    CHECK(result.cv_accuracy >= 0.95);

    // The untuned default (C=1, gamma=1/d) must be matched or beaten.
    const auto folds = stratified_folds(y, 5, 11);
    Hyperparams def{1.0, 1.0 / static_cast<double>(x.cols()), 5.0};
    const double default_acc =
        ssvm_cv_accuracy(x, y, folds, 5, def, KernelSpec::rbf(def.gamma));
    CHECK(result.cv_accuracy >= default_acc);

    SUBCASE("trace audit: the returned accuracy is the max over evaluations") {
        double best = 0.0;
        for (const auto& p : result.trace) best = std::max(best, p.cv_accuracy);
        CHECK(result.cv_accuracy == best);
        CHECK(result.trace.size() == 13 + 9);
    }
    SUBCASE("stage 2 rectangle is contained in the halved neighborhood") {
        double best_c = 0.0, best_g = 0.0, best_acc = -1.0;
        for (const auto& p : result.trace) {
            if (p.stage == 1 && (p.cv_accuracy > best_acc ||
                                 (p.cv_accuracy == best_acc &&
                                  (p.log2c < best_c || (p.log2c == best_c && p.log2g < best_g))))) {
                best_acc = p.cv_accuracy;
                best_c = p.log2c;
                best_g = p.log2g;
            }
        }
        const SearchDomain dom{};
        const double half_c = (dom.log2c_hi - dom.log2c_lo) / 4.0;
        const double half_g = (dom.log2g_hi - dom.log2g_lo) / 4.0;
        for (const auto& p : result.trace) {
            if (p.stage != 2) continue;
            CHECK(p.log2c >= std::max(dom.log2c_lo, best_c - half_c) - 1e-12);
            CHECK(p.log2c <= std::min(dom.log2c_hi, best_c + half_c) + 1e-12);
            CHECK(p.log2g >= std::max(dom.log2g_lo, best_g - half_g) - 1e-12);
            CHECK(p.log2g <= std::min(dom.log2g_hi, best_g + half_g) + 1e-12);
        }
    }
}

TEST_CASE("tune on a collapsed domain returns that point") {
    Rng rng(409);
    Matrix x;
    std::vector<int> y;
    circles(rng, x, y, 20);
    SearchDomain dom;
    dom.log2c_lo = dom.log2c_hi = 3.0;
    dom.log2g_lo = dom.log2g_hi = -2.0;
    TuneResult result = tune(x, y, dom, 4, 5);
    CHECK(result.best.c == doctest::Approx(std::exp2(3.0)));
    CHECK(result.best.gamma == doctest::Approx(std::exp2(-2.0)));
}

TEST_CASE("tune is reproducible for a fixed seed") {
    Rng rng(419);
    Matrix x;
    std::vector<int> y;
    circles(rng, x, y, 25);
    TuneResult a = tune(x, y, SearchDomain{}, 4, 99);
    TuneResult b = tune(x, y, SearchDomain{}, 4, 99);
    CHECK(a.best.c == b.best.c);
    CHECK(a.best.gamma == b.best.gamma);
    CHECK(a.cv_accuracy == b.cv_accuracy);
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i)
        CHECK(a.trace[i].cv_accuracy == b.trace[i].cv_accuracy);
}

TEST_CASE("tune trace serializes with its header") {
    std::vector<TuneTracePoint> trace{{1, 0, -6.0, 2.0, 0.5}};
    const std::string csv = serialize_tune_trace(trace);
    CHECK(csv.find("stage,point_index,log2C,log2gamma,cv_accuracy\n") == 0);
    CHECK(csv.find("1,0,-6,2,0.5") != std::string::npos);
}
