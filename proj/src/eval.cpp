#include "feedwatch/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "feedwatch/error.hpp"
#include "feedwatch/features.hpp"
#include "feedwatch/io_util.hpp"
#include "feedwatch/log_io.hpp"
#include "feedwatch/rand.hpp"
#include "feedwatch/simplex.hpp"

namespace feedwatch {

ConfusionTable confusion_from(const std::vector<int>& predictions, const std::vector<int>& y) {
    if (predictions.size() != y.size()) throw DimensionError("confusion_from: size mismatch");
    ConfusionTable t;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] > 0)
            (predictions[i] > 0 ? t.tp : t.fn)++;
        else
            (predictions[i] > 0 ? t.fp : t.tn)++;
    }
    return t;
}

namespace {

double ratio(std::size_t num, std::size_t den, const char* name,
             std::vector<std::string>& degenerate) {
    if (den == 0) {
        if (num == 0) degenerate.push_back(name);
        return 0.0;
    }
    return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

MetricsReport metrics(const ConfusionTable& t) {
    MetricsReport r;
    r.accuracy = ratio(t.tp + t.tn, t.total(), "accuracy", r.degenerate);
    r.fpr = ratio(t.fp, t.tn + t.fp, "fpr", r.degenerate);
    r.fnr = ratio(t.fn, t.tp + t.fn, "fnr", r.degenerate);
    r.tpr = ratio(t.tp, t.tp + t.fn, "tpr", r.degenerate);
    r.precision = ratio(t.tp, t.tp + t.fp, "precision", r.degenerate);
    r.recall = ratio(t.tp, t.tp + t.fn, "recall", r.degenerate);
    if (r.precision + r.recall > 0.0)
        r.f_score = 2.0 * r.precision * r.recall / (r.precision + r.recall);
    else
        r.degenerate.push_back("f_score");
    return r;
}

RocCurve roc_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
    if (scores.size() != labels.size() || scores.empty())
        throw DimensionError("roc_auc: size mismatch");
    std::size_t pos = 0, neg = 0;
    for (int y : labels) (y > 0 ? pos : neg)++;
    if (pos == 0 || neg == 0) throw Error("roc_auc: both classes must be present");

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&scores](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    RocCurve curve;
    curve.points.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});
    std::size_t tp = 0, fp = 0;
    unsigned long long area2 = 0;  // 2 * area * pos * neg, exact
    std::size_t i = 0;
    while (i < order.size()) {
        const double v = scores[order[i]];
        std::size_t dp = 0, dn = 0;
        // One step per unique score value: ties move diagonally.
        while (i < order.size() && scores[order[i]] == v) {
            (labels[order[i]] > 0 ? dp : dn)++;
            ++i;
        }
        area2 += static_cast<unsigned long long>(dn) * (2 * tp + dp);
        tp += dp;
        fp += dn;
        curve.points.push_back({static_cast<double>(fp) / static_cast<double>(neg),
                                static_cast<double>(tp) / static_cast<double>(pos), v});
    }
    curve.auc = static_cast<double>(area2) /
                (2.0 * static_cast<double>(pos) * static_cast<double>(neg));
    return curve;
}

void oversample(Matrix& x, std::vector<int>& y, std::uint64_t seed) {
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < y.size(); ++i) (y[i] > 0 ? pos : neg).push_back(i);
    if (pos.size() == neg.size()) return;
    const auto& minority = pos.size() < neg.size() ? pos : neg;
    const std::size_t deficit =
        pos.size() < neg.size() ? neg.size() - pos.size() : pos.size() - neg.size();

    Rng rng(derive_seed(seed, "oversample"));
    Matrix out(x.rows() + deficit, x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        std::copy(x.row(i).begin(), x.row(i).end(), out.row(i).begin());
    for (std::size_t k = 0; k < deficit; ++k) {
        const std::size_t src = minority[rng.uniform_int(minority.size())];
        std::copy(x.row(src).begin(), x.row(src).end(), out.row(x.rows() + k).begin());
        y.push_back(y[src]);
    }
    x = std::move(out);
}

PipelineFit pipeline_fit(const Matrix& x, const std::vector<int>& y, bool feature_selection,
                         const PipelineConfig& config, std::uint64_t seed) {
    PipelineFit fit;
    if (feature_selection) {
        const Scaler scaler = Scaler::fit(x);
        const Matrix xs = scaler.transform(x);
        ScreenResult screen = candidate_features(xs, y, config.c_l1, config.screen_eps);
        if (screen.subset.indices.empty())
            throw Error("pipeline: screening selected no features (raise C_l1)");
        fit.screen_weights = std::move(screen.weights);

        FeatureSubset forward =
            forward_select(x, y, screen.subset.indices, config.selection_hp, config.folds,
                           derive_seed(seed, "pipeline.selection"), config.opts);
        fit.selection_cv_accuracy = forward.cv_accuracy;
        // Forward selection can return empty when nothing beats the majority
        // baseline; keep the screened candidates in that case.
        fit.feature_indices =
            forward.indices.empty() ? screen.subset.indices : std::move(forward.indices);
    } else {
        fit.feature_indices.resize(x.cols());
        std::iota(fit.feature_indices.begin(), fit.feature_indices.end(), 0);
    }

    const Matrix xsel = x.select_cols(fit.feature_indices);
    TuneResult tuned = tune(xsel, y, config.domain, config.folds,
                            derive_seed(seed, "pipeline.tune"), config.alpha, config.opts);
    fit.hp = tuned.best;
    fit.tune_cv_accuracy = tuned.cv_accuracy;
    return fit;
}

SsvmModel pipeline_train_model(const Matrix& x, const std::vector<int>& y,
                               const PipelineFit& fit, const ConvergenceOpts& opts) {
    const Matrix xsel = x.select_cols(fit.feature_indices);
    SsvmModel model = train_ssvm(xsel, y, fit.hp, KernelSpec::rbf(fit.hp.gamma), opts);
    return model.with_feature_map(x.cols(), fit.feature_indices);
}

namespace {

MetricsReport metrics_mean(const std::vector<MetricsReport>& reports) {
    MetricsReport m;
    const double n = static_cast<double>(reports.size());
    for (const auto& r : reports) {
        m.accuracy += r.accuracy / n;
        m.fpr += r.fpr / n;
        m.fnr += r.fnr / n;
        m.tpr += r.tpr / n;
        m.precision += r.precision / n;
        m.recall += r.recall / n;
        m.f_score += r.f_score / n;
    }
    return m;
}

MetricsReport metrics_std(const std::vector<MetricsReport>& reports, const MetricsReport& mean) {
    MetricsReport s;
    if (reports.size() < 2) return s;
    const double n1 = static_cast<double>(reports.size() - 1);
    for (const auto& r : reports) {
        s.accuracy += (r.accuracy - mean.accuracy) * (r.accuracy - mean.accuracy) / n1;
        s.fpr += (r.fpr - mean.fpr) * (r.fpr - mean.fpr) / n1;
        s.fnr += (r.fnr - mean.fnr) * (r.fnr - mean.fnr) / n1;
        s.tpr += (r.tpr - mean.tpr) * (r.tpr - mean.tpr) / n1;
        s.precision += (r.precision - mean.precision) * (r.precision - mean.precision) / n1;
        s.recall += (r.recall - mean.recall) * (r.recall - mean.recall) / n1;
        s.f_score += (r.f_score - mean.f_score) * (r.f_score - mean.f_score) / n1;
    }
    s.accuracy = std::sqrt(s.accuracy);
    s.fpr = std::sqrt(s.fpr);
    s.fnr = std::sqrt(s.fnr);
    s.tpr = std::sqrt(s.tpr);
    s.precision = std::sqrt(s.precision);
    s.recall = std::sqrt(s.recall);
    s.f_score = std::sqrt(s.f_score);
    return s;
}

TrainerFn ssvm_trainer(const Hyperparams& hp, const ConvergenceOpts& opts,
                       std::optional<std::uint64_t> oversample_seed) {
    return [hp, opts, oversample_seed](const Matrix& xt, const std::vector<int>& yt) {
        Matrix x = xt;
        std::vector<int> y = yt;
        if (oversample_seed) oversample(x, y, *oversample_seed);
        SsvmModel model = train_ssvm(x, y, hp, KernelSpec::rbf(hp.gamma), opts);
        return ScoreFn(
            [model = std::move(model)](std::span<const double> row) { return model.decision(row); });
    };
}

}  // namespace

EvalReport evaluate_protocol(const Matrix& x, const std::vector<int>& y,
                             const EvalConfig& config) {
    EvalReport report;
    report.fit_with_selection = pipeline_fit(x, y, true, config.pipeline,
                                             derive_seed(config.seed, "eval.fit.fs"));
    report.fit_without_selection = pipeline_fit(x, y, false, config.pipeline,
                                                derive_seed(config.seed, "eval.fit.nofs"));

    struct CellSpec {
        const char* name;
        const PipelineFit* fit;
        bool os;
    };
    const CellSpec cells[] = {
        {"fs_os", &report.fit_with_selection, true},
        {"fs", &report.fit_with_selection, false},
        {"os", &report.fit_without_selection, true},
        {"none", &report.fit_without_selection, false},
    };

    for (const auto& cell : cells) {
        const Matrix xsel = x.select_cols(cell.fit->feature_indices);
        CellReport cr;
        const int repeats = cell.os ? config.oversample_repeats : 1;
        for (int k = 0; k < repeats; ++k) {
            std::optional<std::uint64_t> os_seed;
            if (cell.os) os_seed = derive_seed(config.seed, "eval.oversample", k);
            CvResult res =
                loocv(xsel, y, ssvm_trainer(cell.fit->hp, config.pipeline.opts, os_seed));
            cr.tables.push_back(confusion_from(res.predictions, y));
            cr.per_seed.push_back(metrics(cr.tables.back()));
            if (std::string(cell.name) == "fs_os" && k == 0) report.roc = roc_auc(res.scores, y);
        }
        cr.mean = metrics_mean(cr.per_seed);
        cr.stddev = metrics_std(cr.per_seed, cr.mean);
        report.cells.emplace(cell.name, std::move(cr));
    }
    return report;
}

std::vector<SweepRow> sweep_observation(const std::vector<Session>& sessions,
                                        const SweepConfig& config) {
    if (config.l_list.empty()) throw Error("sweep: empty window list");
    std::vector<int> y;
    for (const auto& s : sessions) {
        if (!s.label) throw Error("sweep: session '" + s.session_id + "' is unlabeled");
        y.push_back(binary_label(*s.label));
    }

    std::vector<SweepRow> rows;
    for (std::size_t li = 0; li < config.l_list.size(); ++li) {
        const double window = config.l_list[li];
        std::vector<Session> windowed;
        windowed.reserve(sessions.size());
        for (const auto& s : sessions) windowed.push_back(truncate(s, window));
        const FeatureTable table = extract_table(windowed, window);

        const PipelineFit fit =
            pipeline_fit(table.x, y, config.feature_selection, config.pipeline,
                         derive_seed(config.seed, "sweep.fit", li));
        const Matrix xsel = table.x.select_cols(fit.feature_indices);

        SweepRow row{window, 0.0, 0.0, {}};
        for (int p = 0; p < config.permutations; ++p) {
            std::optional<std::uint64_t> os_seed;
            if (config.oversampling)
                os_seed = derive_seed(config.seed, "sweep.oversample", li * 10000 + p);
            CvResult res =
                kfold_cv(xsel, y, config.folds, derive_seed(config.seed, "sweep.perm", li * 10000 + p),
                         ssvm_trainer(fit.hp, config.pipeline.opts, os_seed));
            row.per_permutation.push_back(accuracy_of(res.predictions, y));
        }
        const double n = static_cast<double>(row.per_permutation.size());
        for (double a : row.per_permutation) row.mean_accuracy += a / n;
        if (row.per_permutation.size() > 1) {
            double ss = 0.0;
            for (double a : row.per_permutation)
                ss += (a - row.mean_accuracy) * (a - row.mean_accuracy);
            row.std_accuracy = std::sqrt(ss / (n - 1.0));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

TopFeaturesReport top_weighted_features(const std::vector<Session>& sessions,
                                        const std::vector<double>& l_list, int k, double c_l1) {
    std::vector<int> y;
    for (const auto& s : sessions) {
        if (!s.label) throw Error("top_weighted_features: unlabeled session");
        y.push_back(binary_label(*s.label));
    }

    TopFeaturesReport report;
    for (double window : l_list) {
        std::vector<Session> windowed;
        windowed.reserve(sessions.size());
        for (const auto& s : sessions) windowed.push_back(truncate(s, window));
        const FeatureTable table = extract_table(windowed, window);
        const Scaler scaler = Scaler::fit(table.x);
        const L1SvmResult lp = train_l1svm(scaler.transform(table.x), y, c_l1);

        std::vector<std::size_t> order(lp.w.size());
        std::iota(order.begin(), order.end(), 0);

        auto take = [&](bool positive, std::vector<TopFeatureEntry>& out) {
            std::vector<std::size_t> side;
            for (std::size_t j : order)
                if (positive ? lp.w[j] > 0.0 : lp.w[j] < 0.0) side.push_back(j);
            std::sort(side.begin(), side.end(), [&](std::size_t a, std::size_t b) {
                const double wa = positive ? lp.w[a] : -lp.w[a];
                const double wb = positive ? lp.w[b] : -lp.w[b];
                return wa > wb || (wa == wb && a < b);
            });
            for (int r = 0; r < k && r < static_cast<int>(side.size()); ++r) {
                const std::size_t j = side[r];
                out.push_back({window, r + 1, registry()[j].name, lp.w[j]});
                ++report.histogram[registry()[j].name];
            }
        };
        take(true, report.positive);
        take(false, report.negative);
    }
    return report;
}

std::string serialize_metrics_grid(const EvalReport& report) {
    std::string out =
        "cell,accuracy,fpr,fnr,tpr,precision,recall,f_score,"
        "accuracy_std,fpr_std,fnr_std,tpr_std,precision_std,recall_std,f_score_std\n";
    for (const char* name : {"fs_os", "fs", "os", "none"}) {
        const CellReport& c = report.cells.at(name);
        out += name;
        for (double v : {c.mean.accuracy, c.mean.fpr, c.mean.fnr, c.mean.tpr, c.mean.precision,
                         c.mean.recall, c.mean.f_score, c.stddev.accuracy, c.stddev.fpr,
                         c.stddev.fnr, c.stddev.tpr, c.stddev.precision, c.stddev.recall,
                         c.stddev.f_score}) {
            out += ',';
            out += format_g17(v);
        }
        out += '\n';
    }
    return out;
}

std::string serialize_roc_points(const RocCurve& roc) {
    std::string out = "fpr,tpr,threshold\n";
    for (const auto& p : roc.points) {
        out += format_g17(p.fpr);
        out += ',';
        out += format_g17(p.tpr);
        out += ',';
        out += std::isinf(p.threshold) ? "inf" : format_g17(p.threshold);
        out += '\n';
    }
    return out;
}

std::string serialize_sweep(const std::vector<SweepRow>& rows) {
    std::string out = "L,mean_accuracy,std_accuracy,permutations\n";
    for (const auto& r : rows) {
        out += format_g17(r.window_minutes);
        out += ',';
        out += format_g17(r.mean_accuracy);
        out += ',';
        out += format_g17(r.std_accuracy);
        out += ',';
        out += std::to_string(r.per_permutation.size());
        out += '\n';
    }
    return out;
}

std::string serialize_top_features(const TopFeaturesReport& top) {
    std::string out = "L,side,rank,feature,weight\n";
    auto emit = [&out](const std::vector<TopFeatureEntry>& entries, const char* side) {
        for (const auto& e : entries) {
            out += format_g17(e.window_minutes);
            out += ',';
            out += side;
            out += ',';
            out += std::to_string(e.rank);
            out += ',';
            out += e.feature;
            out += ',';
            out += format_g17(e.weight);
            out += '\n';
        }
    };
    emit(top.positive, "positive");
    emit(top.negative, "negative");
    return out;
}

namespace {

nlohmann::json metrics_json(const MetricsReport& m) {
    nlohmann::json j;
    j["accuracy"] = m.accuracy;
    j["fpr"] = m.fpr;
    j["fnr"] = m.fnr;
    j["tpr"] = m.tpr;
    j["precision"] = m.precision;
    j["recall"] = m.recall;
    j["f_score"] = m.f_score;
    if (!m.degenerate.empty()) j["degenerate"] = m.degenerate;
    return j;
}

}  // namespace

std::string serialize_eval_report(const EvalReport& report) {
    nlohmann::json j;
    j["schema_version"] = "feedwatch.eval/1";
    for (const auto& [name, cell] : report.cells) {
        nlohmann::json jc;
        jc["mean"] = metrics_json(cell.mean);
        jc["std"] = metrics_json(cell.stddev);
        for (std::size_t k = 0; k < cell.per_seed.size(); ++k) {
            nlohmann::json seed = metrics_json(cell.per_seed[k]);
            seed["confusion"] = {{"tp", cell.tables[k].tp},
                                 {"fp", cell.tables[k].fp},
                                 {"tn", cell.tables[k].tn},
                                 {"fn", cell.tables[k].fn}};
            jc["per_seed"].push_back(seed);
        }
        j["cells"][name] = jc;
    }
    j["roc"]["auc"] = report.roc.auc;
    for (const auto& p : report.roc.points)
        j["roc"]["points"].push_back({p.fpr, p.tpr});
    auto fit_json = [](const PipelineFit& fit) {
        nlohmann::json jf;
        jf["feature_indices"] = fit.feature_indices;
        jf["C"] = fit.hp.c;
        jf["gamma"] = fit.hp.gamma;
        jf["tune_cv_accuracy"] = fit.tune_cv_accuracy;
        jf["selection_cv_accuracy"] = fit.selection_cv_accuracy;
        return jf;
    };
    j["fit_with_selection"] = fit_json(report.fit_with_selection);
    j["fit_without_selection"] = fit_json(report.fit_without_selection);
    return j.dump(2) + "\n";
}

}  // namespace feedwatch
