#include "feedwatch/ssvm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "feedwatch/error.hpp"
#include "feedwatch/io_util.hpp"
#include "feedwatch/linalg.hpp"

namespace feedwatch {

double smooth_plus(double x, double alpha) {
    const double ax = alpha * x;
    if (ax >= 0.0) return x + std::log1p(std::exp(-ax)) / alpha;
    return std::log1p(std::exp(ax)) / alpha;
}

double smooth_plus_d1(double x, double alpha) {
    const double ax = alpha * x;
    if (ax >= 0.0) return 1.0 / (1.0 + std::exp(-ax));
    const double e = std::exp(ax);
    return e / (1.0 + e);
}

double smooth_plus_d2(double x, double alpha) {
    const double s = smooth_plus_d1(x, alpha);
    return alpha * s * (1.0 - s);
}

void Hyperparams::validate() const {
    if (!(c > 0.0) || !std::isfinite(c)) throw Error("hyperparams: C must be positive");
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw Error("hyperparams: gamma must be positive");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw Error("hyperparams: alpha must be positive");
}

void ConvergenceOpts::validate() const {
    if (!(grad_tol > 0.0)) throw Error("convergence: grad_tol must be positive");
    if (max_iters < 1) throw Error("convergence: max_iters must be >= 1");
    if (!(armijo_sigma > 0.0 && armijo_sigma < 0.5))
        throw Error("convergence: armijo_sigma must be in (0, 0.5)");
    if (!(armijo_shrink > 0.0 && armijo_shrink < 1.0))
        throw Error("convergence: armijo_shrink must be in (0, 1)");
}

Scaler Scaler::fit(const Matrix& x) {
    const std::size_t n = x.rows(), d = x.cols();
    Scaler s;
    s.means.assign(d, 0.0);
    s.stds.assign(d, 1.0);
    if (n == 0) return s;
    for (std::size_t j = 0; j < d; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum += x(i, j);
        s.means[j] = sum / static_cast<double>(n);
    }
    if (n > 1) {
        for (std::size_t j = 0; j < d; ++j) {
            double ss = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double diff = x(i, j) - s.means[j];
                ss += diff * diff;
            }
            double sd = std::sqrt(ss / static_cast<double>(n - 1));
            if (sd <= 1e-12 * std::max(1.0, std::abs(s.means[j]))) sd = 1.0;
            s.stds[j] = sd;
        }
    }
    return s;
}

Matrix Scaler::transform(const Matrix& x) const {
    if (x.cols() != means.size()) throw DimensionError("scaler: dimension mismatch");
    Matrix out(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) out(i, j) = (x(i, j) - means[j]) / stds[j];
    return out;
}

void Scaler::transform_row(std::span<const double> in, std::span<double> out) const {
    if (in.size() != means.size()) throw DimensionError("scaler: dimension mismatch");
    for (std::size_t j = 0; j < in.size(); ++j) out[j] = (in[j] - means[j]) / stds[j];
}

Scaler Scaler::identity(std::size_t dim) {
    Scaler s;
    s.means.assign(dim, 0.0);
    s.stds.assign(dim, 1.0);
    return s;
}

SsvmObjective::SsvmObjective(Matrix design, std::vector<int> labels, double c, double alpha)
    : design_(std::move(design)), labels_(std::move(labels)), c_(c), alpha_(alpha) {
    if (design_.rows() != labels_.size()) throw DimensionError("objective: label count");
}

Matrix SsvmObjective::design_linear(const Matrix& x) {
    Matrix a(x.rows(), x.cols() + 1);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        auto src = x.row(i);
        auto dst = a.row(i);
        std::copy(src.begin(), src.end(), dst.begin());
        dst[x.cols()] = 1.0;
    }
    return a;
}

Matrix SsvmObjective::design_kernel(const Matrix& gram) { return design_linear(gram); }

void SsvmObjective::residuals(const std::vector<double>& z, std::vector<double>& r) const {
    const std::size_t n = design_.rows(), m = design_.cols();
    r.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double* ai = design_.row(i).data();
        double f = 0.0;
        for (std::size_t k = 0; k < m; ++k) f += ai[k] * z[k];
        r[i] = 1.0 - labels_[i] * f;
    }
}

double SsvmObjective::value(const std::vector<double>& z) const {
    std::vector<double> r;
    residuals(z, r);
    double loss = 0.0;
    for (double ri : r) {
        const double p = smooth_plus(ri, alpha_);
        loss += p * p;
    }
    double reg = 0.0;
    for (double zk : z) reg += zk * zk;
    return 0.5 * c_ * loss + 0.5 * reg;
}

std::vector<double> SsvmObjective::gradient(const std::vector<double>& z) const {
    const std::size_t n = design_.rows(), m = design_.cols();
    std::vector<double> r;
    residuals(z, r);
    std::vector<double> g(z);
    for (std::size_t i = 0; i < n; ++i) {
        const double p = smooth_plus(r[i], alpha_);
        const double dp = smooth_plus_d1(r[i], alpha_);
        const double coeff = -c_ * p * dp * labels_[i];
        const double* ai = design_.row(i).data();
        for (std::size_t k = 0; k < m; ++k) g[k] += coeff * ai[k];
    }
    return g;
}

Matrix SsvmObjective::hessian(const std::vector<double>& z, double ridge) const {
    const std::size_t n = design_.rows();
    std::vector<double> r;
    residuals(z, r);
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double p = smooth_plus(r[i], alpha_);
        const double dp = smooth_plus_d1(r[i], alpha_);
        const double ddp = smooth_plus_d2(r[i], alpha_);
        d[i] = c_ * (dp * dp + p * ddp);
    }
    Matrix h;
    weighted_gram_accumulate(design_, d, 1.0 + ridge, h);
    return h;
}

namespace {

void check_training_input(const Matrix& x, const std::vector<int>& y) {
    if (x.rows() != y.size()) throw DimensionError("train: label count mismatch");
    if (x.rows() == 0) throw Error("train: empty training set");
    int pos = 0, neg = 0;
    for (int yi : y) {
        if (yi == 1)
            ++pos;
        else if (yi == -1)
            ++neg;
        else
            throw Error("train: labels must be -1 or +1");
    }
    if (pos == 0 || neg == 0) throw Error("train: both classes must be present");
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (double v : x.row(i))
            if (!std::isfinite(v)) throw Error("train: non-finite feature value");
}

struct NewtonResult {
    std::vector<double> z;
    int iterations = 0;
    double grad_norm = 0.0;
};

NewtonResult newton_armijo(const SsvmObjective& obj, const ConvergenceOpts& opts) {
    std::vector<double> z(obj.dim(), 0.0);
    double fz = obj.value(z);
    int iter = 0;
    double gnorm = 0.0;
    for (; iter < opts.max_iters; ++iter) {
        const std::vector<double> g = obj.gradient(z);
        gnorm = 0.0;
        for (double gk : g) gnorm = std::max(gnorm, std::abs(gk));
        if (gnorm < opts.grad_tol) break;

        const Matrix h = obj.hessian(z, opts.ridge);
        std::vector<double> rhs(g.size());
        for (std::size_t k = 0; k < g.size(); ++k) rhs[k] = -g[k];
        const std::vector<double> step = solve_spd(h, rhs);

        double gd = 0.0;
        for (std::size_t k = 0; k < g.size(); ++k) gd += g[k] * step[k];

        double t = 1.0;
        bool accepted = false;
        std::vector<double> trial(z.size());
        for (int bt = 0; bt <= opts.max_backtracks; ++bt) {
            for (std::size_t k = 0; k < z.size(); ++k) trial[k] = z[k] + t * step[k];
            const double ft = obj.value(trial);
            if (ft <= fz + opts.armijo_sigma * t * gd) {
                z = trial;
                fz = ft;
                accepted = true;
                break;
            }
            t *= opts.armijo_shrink;
        }
        if (!accepted) break;  // keep the best iterate found so far
    }
    return {std::move(z), iter, gnorm};
}

}  // namespace

SsvmModel train_ssvm(const Matrix& x, const std::vector<int>& y, const Hyperparams& hp,
                     const KernelSpec& kernel, const ConvergenceOpts& opts, bool standardize) {
    hp.validate();
    opts.validate();
    check_training_input(x, y);

    SsvmModel model;
    model.kernel = kernel;
    model.input_dim = x.cols();
    model.feature_indices.resize(x.cols());
    for (std::size_t j = 0; j < x.cols(); ++j) model.feature_indices[j] = j;
    model.scaler = standardize ? Scaler::fit(x) : Scaler::identity(x.cols());

    const Matrix xs = model.scaler.transform(x);
    const KernelSpec effective =
        kernel.is_rbf() ? KernelSpec::rbf(hp.gamma) : KernelSpec::linear();
    model.kernel = effective;

    Matrix design;
    if (effective.is_rbf())
        design = SsvmObjective::design_kernel(gram_matrix(xs, xs, effective));
    else
        design = SsvmObjective::design_linear(xs);

    SsvmObjective obj(std::move(design), y, hp.c, hp.alpha);
    NewtonResult res = newton_armijo(obj, opts);

    model.bias = res.z.back();
    model.coefficients.assign(res.z.begin(), res.z.end() - 1);
    if (effective.is_rbf()) model.support_points = xs;
    model.training_meta = {hp.c, hp.alpha, res.iterations, res.grad_norm};
    return model;
}

double SsvmModel::decision(std::span<const double> x) const {
    if (x.size() != input_dim) throw DimensionError("decision: dimension mismatch");
    std::vector<double> sel(feature_indices.size());
    for (std::size_t j = 0; j < feature_indices.size(); ++j) sel[j] = x[feature_indices[j]];
    std::vector<double> z(sel.size());
    scaler.transform_row(sel, z);
    double f = bias;
    if (kernel.is_rbf()) {
        for (std::size_t i = 0; i < support_points.rows(); ++i)
            f += coefficients[i] * kernel_eval(kernel, support_points.row(i), z);
    } else {
        for (std::size_t j = 0; j < z.size(); ++j) f += coefficients[j] * z[j];
    }
    return f;
}

int SsvmModel::predict(std::span<const double> x) const {
    return decision(x) < 0.0 ? -1 : +1;
}

SsvmModel SsvmModel::with_feature_map(std::size_t full_dim,
                                      std::vector<std::size_t> indices) const {
    if (indices.size() != feature_indices.size())
        throw DimensionError("with_feature_map: index count mismatch");
    for (std::size_t idx : indices)
        if (idx >= full_dim) throw DimensionError("with_feature_map: index out of range");
    SsvmModel out = *this;
    out.input_dim = full_dim;
    out.feature_indices = std::move(indices);
    return out;
}

namespace {

void append_array(std::string& out, const std::vector<double>& v) {
    out += '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += format_g17(v[i]);
    }
    out += ']';
}

}  // namespace

std::string SsvmModel::to_json() const {
    // Hand-assembled so every number carries 17 significant digits.
    std::string out = "{\n";
    out += "  \"schema_version\": \"" + std::string(kModelSchemaVersion) + "\",\n";
    out += "  \"kernel\": {\"type\": \"";
    out += kernel.is_rbf() ? "rbf" : "linear";
    out += '"';
    if (kernel.is_rbf()) out += ", \"gamma\": " + format_g17(kernel.gamma());
    out += "},\n";
    out += "  \"C\": " + format_g17(training_meta.c) + ",\n";
    out += "  \"alpha\": " + format_g17(training_meta.alpha) + ",\n";
    out += "  \"input_dim\": " + std::to_string(input_dim) + ",\n";
    out += "  \"feature_indices\": [";
    for (std::size_t i = 0; i < feature_indices.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(feature_indices[i]);
    }
    out += "],\n";
    out += "  \"scaler\": {\"means\": ";
    append_array(out, scaler.means);
    out += ", \"stds\": ";
    append_array(out, scaler.stds);
    out += "},\n";
    out += "  \"coefficients\": ";
    append_array(out, coefficients);
    out += ",\n";
    out += "  \"bias\": " + format_g17(bias);
    if (kernel.is_rbf()) {
        out += ",\n  \"support_points\": [";
        for (std::size_t i = 0; i < support_points.rows(); ++i) {
            if (i) out += ',';
            out += '[';
            auto row = support_points.row(i);
            for (std::size_t j = 0; j < row.size(); ++j) {
                if (j) out += ',';
                out += format_g17(row[j]);
            }
            out += ']';
        }
        out += ']';
    }
    out += ",\n  \"training_meta\": {\"C\": " + format_g17(training_meta.c) +
           ", \"alpha\": " + format_g17(training_meta.alpha) +
           ", \"iterations\": " + std::to_string(training_meta.iterations) +
           ", \"final_gradient_norm\": " + format_g17(training_meta.final_gradient_norm) + "}\n";
    out += "}\n";
    return out;
}

SsvmModel SsvmModel::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("model file: ") + e.what());
    }
    if (j.value("schema_version", std::string()) != kModelSchemaVersion)
        throw ParseError("model file: unsupported schema_version");

    SsvmModel m;
    const auto& jk = j.at("kernel");
    const std::string type = jk.at("type").get<std::string>();
    if (type == "rbf")
        m.kernel = KernelSpec::rbf(jk.at("gamma").get<double>());
    else if (type == "linear")
        m.kernel = KernelSpec::linear();
    else
        throw ParseError("model file: unknown kernel type '" + type + "'");

    m.input_dim = j.at("input_dim").get<std::size_t>();
    m.feature_indices = j.at("feature_indices").get<std::vector<std::size_t>>();
    m.scaler.means = j.at("scaler").at("means").get<std::vector<double>>();
    m.scaler.stds = j.at("scaler").at("stds").get<std::vector<double>>();
    m.coefficients = j.at("coefficients").get<std::vector<double>>();
    m.bias = j.at("bias").get<double>();
    if (m.kernel.is_rbf()) {
        auto rows = j.at("support_points").get<std::vector<std::vector<double>>>();
        m.support_points = Matrix(rows.size(), m.feature_indices.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.feature_indices.size())
                throw ParseError("model file: support point width mismatch");
            std::copy(rows[i].begin(), rows[i].end(), m.support_points.row(i).begin());
        }
        if (m.coefficients.size() != rows.size())
            throw ParseError("model file: coefficient count mismatch");
    } else if (m.coefficients.size() != m.feature_indices.size()) {
        throw ParseError("model file: coefficient count mismatch");
    }
    const auto& tm = j.at("training_meta");
    m.training_meta = {tm.at("C").get<double>(), tm.at("alpha").get<double>(),
                       tm.at("iterations").get<int>(),
                       tm.at("final_gradient_norm").get<double>()};
    return m;
}

}  // namespace feedwatch
