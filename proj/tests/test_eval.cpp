#include <doctest.h>

#include <atomic>
#include <cmath>

#include "feedwatch/eval.hpp"
#include "helpers.hpp"

using namespace feedwatch;
using namespace feedwatch::test;

TEST_CASE("metrics: published-table arithmetic") {
    // 178 positives, 100 negatives; FPR 5.00% and FNR 7.30% imply fp=5, fn=13.
    MetricsReport r = metrics(ConfusionTable{165, 5, 95, 13});
    CHECK(std::round(r.accuracy * 1e4) / 1e4 == 0.9353);
    CHECK(std::round(r.f_score * 1e4) / 1e4 == 0.9483);
    CHECK(r.fpr == doctest::Approx(0.05));
    CHECK(std::round(r.fnr * 1e4) / 1e4 == 0.0730);
    CHECK(r.degenerate.empty());
}

TEST_CASE("metrics: symmetric and perfect tables") {
    SUBCASE("all cells 25") {
        MetricsReport r = metrics(ConfusionTable{25, 25, 25, 25});
        CHECK(r.accuracy == 0.5);
        CHECK(r.precision == 0.5);
        CHECK(r.f_score == 0.5);
    }
    SUBCASE("perfect classifier") {
        MetricsReport r = metrics(ConfusionTable{10, 0, 20, 0});
        CHECK(r.accuracy == 1.0);
        CHECK(r.precision == 1.0);
        CHECK(r.recall == 1.0);
        CHECK(r.f_score == 1.0);
        CHECK(r.fpr == 0.0);
        CHECK(r.fnr == 0.0);
    }
    SUBCASE("0/0 cells report zero and are flagged") {
        MetricsReport r = metrics(ConfusionTable{0, 0, 5, 0});  // no positives, none predicted
        CHECK(r.tpr == 0.0);
        CHECK(r.precision == 0.0);
        CHECK(r.f_score == 0.0);
        CHECK(!r.degenerate.empty());
    }
    SUBCASE("recall equals tpr and accuracy identity holds") {
        Rng rng(501);
        for (int trial = 0; trial < 50; ++trial) {
            ConfusionTable t{rng.uniform_int(30), rng.uniform_int(30), rng.uniform_int(30),
                             rng.uniform_int(30)};
            if (t.total() == 0) continue;
            MetricsReport r = metrics(t);
            CHECK(r.recall == r.tpr);
            CHECK(r.accuracy ==
                  doctest::Approx(1.0 - static_cast<double>(t.fp + t.fn) / t.total()));
        }
    }
}

TEST_CASE("confusion is invariant under joint permutation") {
    Rng rng(503);
    std::vector<int> preds, labels;
    for (int i = 0; i < 200; ++i) {
        preds.push_back(rng.uniform() < 0.5 ? 1 : -1);
        labels.push_back(rng.uniform() < 0.6 ? 1 : -1);
    }
    ConfusionTable before = confusion_from(preds, labels);
    std::vector<std::size_t> order(preds.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);
    std::vector<int> p2, l2;
    for (std::size_t i : order) {
        p2.push_back(preds[i]);
        l2.push_back(labels[i]);
    }
    ConfusionTable after = confusion_from(p2, l2);
    CHECK(before.tp == after.tp);
    CHECK(before.fp == after.fp);
    CHECK(before.tn == after.tn);
    CHECK(before.fn == after.fn);
}

TEST_CASE("roc: canonical shapes") {
    SUBCASE("perfect separation gives auc 1") {
        RocCurve c = roc_auc({0.9, 0.8, 0.2, 0.1}, {1, 1, -1, -1});
        CHECK(c.auc == 1.0);
        CHECK(c.points.front().fpr == 0.0);
        CHECK(c.points.front().tpr == 0.0);
        CHECK(c.points.back().fpr == 1.0);
        CHECK(c.points.back().tpr == 1.0);
    }
    SUBCASE("constant scores give auc one half via a single diagonal step") {
        RocCurve c = roc_auc({0.5, 0.5, 0.5, 0.5}, {1, -1, 1, -1});
        CHECK(c.auc == 0.5);
        CHECK(c.points.size() == 2);
    }
    SUBCASE("single-class input is rejected") {
        CHECK_THROWS_AS(roc_auc({0.1, 0.2}, {1, 1}), Error);
    }
    SUBCASE("curve is monotone") {
        Rng rng(509);
        std::vector<double> scores;
        std::vector<int> labels;
        for (int i = 0; i < 100; ++i) {
            scores.push_back(rng.uniform(-1, 1));
            labels.push_back(i % 3 == 0 ? -1 : 1);
        }
        RocCurve c = roc_auc(scores, labels);
        for (std::size_t i = 1; i < c.points.size(); ++i) {
            CHECK(c.points[i].fpr >= c.points[i - 1].fpr);
            CHECK(c.points[i].tpr >= c.points[i - 1].tpr);
            CHECK(c.points[i].threshold < c.points[i - 1].threshold);
        }
    }
}

TEST_CASE("trapezoidal auc equals the pairwise rank statistic exactly") {
    Rng rng(521);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 20 + rng.uniform_int(181);  // <= 200
        std::vector<double> scores;
        std::vector<int> labels;
        bool pos = false, neg = false;
        for (std::size_t i = 0; i < n; ++i) {
            scores.push_back(rng.uniform(-5.0, 5.0));  // ties have probability ~0
            labels.push_back(rng.uniform() < 0.5 ? 1 : -1);
            (labels.back() > 0 ? pos : neg) = true;
        }
        if (!pos) labels[0] = 1;
        if (!neg) labels[1] = -1;

        RocCurve c = roc_auc(scores, labels);

        // O(n^2) oracle: P(score+ > score-) + P(tie)/2.
        unsigned long long wins2 = 0, pairs = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (labels[i] <= 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (labels[j] > 0) continue;
                ++pairs;
                if (scores[i] > scores[j])
                    wins2 += 2;
                else if (scores[i] == scores[j])
                    wins2 += 1;
            }
        }
        const double oracle = static_cast<double>(wins2) / (2.0 * static_cast<double>(pairs));
        CHECK(c.auc == oracle);
    }
}

TEST_CASE("oversampling balances the corpus") {
    Rng rng(523);

    SUBCASE("178 positives and 100 negatives gain 78 duplicates") {
        Matrix x(278, 3);
        std::vector<int> y;
        for (int i = 0; i < 278; ++i) {
            y.push_back(i < 178 ? 1 : -1);
            for (int j = 0; j < 3; ++j) x(i, j) = rng.uniform(-1, 1);
        }
        Matrix x2 = x;
        auto y2 = y;
        oversample(x2, y2, 7);
        CHECK(x2.rows() == 356);
        std::size_t pos = 0, neg = 0;
        for (int yi : y2) (yi > 0 ? pos : neg)++;
        CHECK(pos == 178);
        CHECK(neg == 178);
        // Originals retained in place.
        for (std::size_t i = 0; i < x.rows(); ++i)
            CHECK(std::equal(x.row(i).begin(), x.row(i).end(), x2.row(i).begin()));
        // Every duplicate is bit-identical to some original minority row.
        for (std::size_t i = x.rows(); i < x2.rows(); ++i) {
            CHECK(y2[i] == -1);
            bool found = false;
            for (int orig = 178; orig < 278 && !found; ++orig)
                found = std::equal(x2.row(i).begin(), x2.row(i).end(), x.row(orig).begin());
            CHECK(found);
        }
        // Determinism.
        Matrix x3 = x;
        auto y3 = y;
        oversample(x3, y3, 7);
        CHECK(x3 == x2);
    }
    SUBCASE("balanced input is untouched") {
        Matrix x(4, 1);
        std::vector<int> y{1, 1, -1, -1};
        Matrix before = x;
        oversample(x, y, 3);
        CHECK(x == before);
        CHECK(y.size() == 4);
    }
}

namespace {

TrainerFn counting_trainer(std::atomic<int>& calls) {
    return [&calls](const Matrix& x, const std::vector<int>& y) {
        ++calls;
        SsvmModel m = train_ssvm(x, y, Hyperparams{10.0, 1.0, 5.0}, KernelSpec::linear());
        return ScoreFn(
            [m = std::move(m)](std::span<const double> row) { return m.decision(row); });
    };
}

}  // namespace

TEST_CASE("loocv: separable four points, one trainer call per instance") {
    Matrix x(4, 1);
    x(0, 0) = -2;
    x(1, 0) = -1;
    x(2, 0) = 1;
    x(3, 0) = 2;
    std::vector<int> y{-1, -1, 1, 1};
    std::atomic<int> calls{0};
    CvResult res = loocv(x, y, counting_trainer(calls));
    CHECK(calls.load() == 4);
    CHECK(res.predictions == y);
}

TEST_CASE("stratified folds balance the minority class") {
    std::vector<int> y;
    for (int i = 0; i < 278; ++i) y.push_back(i < 178 ? 1 : -1);
    auto fold_of = stratified_folds(y, 10, 99);
    int neg_count[10] = {}, pos_count[10] = {};
    for (int i = 0; i < 278; ++i) (y[i] > 0 ? pos_count : neg_count)[fold_of[i]]++;
    for (int f = 0; f < 10; ++f) {
        CHECK(neg_count[f] == 10);
        CHECK(std::abs(pos_count[f] - 17.8) <= 1.0);
    }
}

TEST_CASE("kfold is reproducible bit-identically") {
    Rng rng(541);
    Matrix x = random_matrix(rng, 40, 2);
    std::vector<int> y(40);
    for (int i = 0; i < 40; ++i) y[i] = x(i, 0) + 0.2 * x(i, 1) > 0 ? 1 : -1;
    std::atomic<int> calls{0};
    CvResult a = kfold_cv(x, y, 5, 77, counting_trainer(calls));
    CvResult b = kfold_cv(x, y, 5, 77, counting_trainer(calls));
    CHECK(a.predictions == b.predictions);
    CHECK(a.scores == b.scores);
    CHECK(calls.load() == 10);
}

TEST_CASE("cv reports a class missing from a training split") {
    Matrix x(4, 1);
    std::vector<int> y{1, 1, 1, -1};  // leaving out the only negative breaks a split
    std::atomic<int> calls{0};
    CHECK_THROWS_AS(loocv(x, y, counting_trainer(calls)), Error);
}

TEST_CASE("serializers emit headed csv") {
    std::vector<SweepRow> rows{{2.0, 0.8, 0.01, {0.79, 0.81}}};
    CHECK(serialize_sweep(rows).find("L,mean_accuracy,std_accuracy,permutations\n") == 0);

    RocCurve roc;
    roc.points = {{0, 0, std::numeric_limits<double>::infinity()}, {1, 1, -1.0}};
    roc.auc = 0.5;
    const std::string csv = serialize_roc_points(roc);
    CHECK(csv.find("fpr,tpr,threshold\n") == 0);
    CHECK(csv.find("inf") != std::string::npos);
}
