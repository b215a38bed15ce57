#include "wvcl/svm.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "wvcl/error.hpp"

namespace wvcl {
namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMatrixMap = Eigen::Map<const RowMatrix>;

ConstMatrixMap as_eigen(const FeatureMatrix& m) {
    return ConstMatrixMap(m.data().data(), static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
}

// Kernel values between every row of a and every row of b.
Eigen::MatrixXd gram(const FeatureMatrix& a, const FeatureMatrix& b, const KernelSpec& spec) {
    Eigen::MatrixXd dots = as_eigen(a) * as_eigen(b).transpose();
    return dots.unaryExpr([&](double d) { return std::pow(spec.gamma * d + spec.coef0, spec.degree); });
}

constexpr double kTau = 1e-12;

}  // namespace

FeatureMatrix FeatureMatrix::from_rows(const std::vector<RealVector>& rows) {
    FeatureMatrix m;
    for (const RealVector& r : rows) m.append_row(r);
    return m;
}

void FeatureMatrix::append_row(std::span<const double> values) {
    if (rows_ == 0 && data_.empty()) cols_ = values.size();
    if (values.size() != cols_) {
        throw InvalidInput("FeatureMatrix: row length " + std::to_string(values.size()) + " differs from " +
                           std::to_string(cols_));
    }
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
}

FeatureMatrix FeatureMatrix::select_rows(std::span<const std::size_t> indices) const {
    FeatureMatrix out(indices.size(), cols_);
    for (std::size_t r = 0; r < indices.size(); ++r) {
        const auto src = row(indices[r]);
        std::copy(src.begin(), src.end(), out.row(r).begin());
    }
    return out;
}

void KernelSpec::validate() const {
    if (degree < 1) throw InvalidInput("KernelSpec: degree must be >= 1");
    if (!(gamma > 0.0)) throw InvalidInput("KernelSpec: gamma must be positive");
}

double kernel(std::span<const double> x, std::span<const double> y, const KernelSpec& spec) {
    if (x.size() != y.size()) throw InvalidInput("kernel: vector lengths differ");
    double dot = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * y[i];
    return std::pow(spec.gamma * dot + spec.coef0, spec.degree);
}

RealVector Standardizer::apply(std::span<const double> x) const {
    if (x.size() != mean.size()) {
        throw InvalidInput("Standardizer: feature length " + std::to_string(x.size()) + " differs from training length " +
                           std::to_string(mean.size()));
    }
    RealVector out(x.size());
    for (std::size_t d = 0; d < x.size(); ++d) out[d] = (x[d] - mean[d]) / stddev[d];
    return out;
}

FeatureMatrix Standardizer::apply(const FeatureMatrix& x) const {
    if (x.cols() != mean.size()) {
        throw InvalidInput("Standardizer: feature length " + std::to_string(x.cols()) + " differs from training length " +
                           std::to_string(mean.size()));
    }
    FeatureMatrix out(x.rows(), x.cols());
    for (std::size_t r = 0; r < x.rows(); ++r) {
        const auto src = x.row(r);
        auto dst = out.row(r);
        for (std::size_t d = 0; d < x.cols(); ++d) dst[d] = (src[d] - mean[d]) / stddev[d];
    }
    return out;
}

Standardizer fit_standardizer(const FeatureMatrix& features) {
    if (features.rows() < 2) throw InvalidInput("fit_standardizer: need at least 2 training rows");
    const std::size_t dims = features.cols();
    Standardizer s;
    s.mean.assign(dims, 0.0);
    s.stddev.assign(dims, 0.0);
    const double n = static_cast<double>(features.rows());
    for (std::size_t r = 0; r < features.rows(); ++r) {
        const auto row = features.row(r);
        for (std::size_t d = 0; d < dims; ++d) s.mean[d] += row[d];
    }
    for (double& m : s.mean) m /= n;
    for (std::size_t r = 0; r < features.rows(); ++r) {
        const auto row = features.row(r);
        for (std::size_t d = 0; d < dims; ++d) {
            const double dev = row[d] - s.mean[d];
            s.stddev[d] += dev * dev;
        }
    }
    for (double& v : s.stddev) {
        v = std::sqrt(v / n);
        if (!(v >= 1e-12)) v = 1.0;
    }
    return s;
}

double BinarySvm::decision(std::span<const double> x) const {
    double f = bias;
    for (std::size_t i = 0; i < coef.size(); ++i) f += coef[i] * wvcl::kernel(support_vectors.row(i), x, kernel);
    return f;
}

RealVector BinarySvm::decision_batch(const FeatureMatrix& x) const {
    RealVector out(x.rows(), bias);
    if (coef.empty() || x.rows() == 0) return out;
    if (x.cols() != support_vectors.cols()) throw InvalidInput("BinarySvm: feature dimension mismatch");
    const Eigen::MatrixXd k = gram(x, support_vectors, kernel);
    const Eigen::Map<const Eigen::VectorXd> c(coef.data(), static_cast<Eigen::Index>(coef.size()));
    const Eigen::VectorXd f = k * c;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += f[static_cast<Eigen::Index>(i)];
    return out;
}

double kkt_violation(const FeatureMatrix& x, std::span<const int> y, std::span<const double> alpha,
                     double bias, double box_c, const KernelSpec& spec) {
    const Eigen::MatrixXd k = gram(x, x, spec);
    double worst = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        double f = bias;
        for (std::size_t j = 0; j < x.rows(); ++j) {
            if (alpha[j] > 0.0) f += alpha[j] * y[j] * k(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
        }
        const double margin = y[i] * f;
        double v = 0.0;
        if (alpha[i] <= 0.0)
            v = std::max(0.0, 1.0 - margin);
        else if (alpha[i] >= box_c)
            v = std::max(0.0, margin - 1.0);
        else
            v = std::abs(margin - 1.0);
        worst = std::max(worst, v);
    }
    return worst;
}

BinaryTrainResult train_binary_svm(const FeatureMatrix& x, std::span<const int> y, double box_c,
                                   const KernelSpec& spec, const SmoOptions& options) {
    spec.validate();
    const std::size_t n = x.rows();
    if (n == 0) throw InvalidInput("train_binary_svm: empty training set");
    if (y.size() != n) throw InvalidInput("train_binary_svm: label count differs from row count");
    if (!(box_c > 0.0)) throw InvalidInput("train_binary_svm: C must be positive");
    bool has_pos = false, has_neg = false;
    for (int label : y) {
        if (label == 1)
            has_pos = true;
        else if (label == -1)
            has_neg = true;
        else
            throw InvalidInput("train_binary_svm: labels must be +1 or -1");
    }
    if (!has_pos || !has_neg) throw InvalidInput("train_binary_svm: both classes must be present");

    // Q_ij = y_i y_j K(x_i, x_j)
    Eigen::MatrixXd q = gram(x, x, spec);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *= y[i] * y[j];

    RealVector alpha(n, 0.0);
    RealVector grad(n, -1.0);  // Q alpha - e
    const std::size_t max_iter =
        options.max_iterations != 0 ? options.max_iterations : std::max<std::size_t>(10'000'000, 100 * n);

    auto in_up = [&](std::size_t t) { return (y[t] == 1 && alpha[t] < box_c) || (y[t] == -1 && alpha[t] > 0.0); };
    auto in_low = [&](std::size_t t) { return (y[t] == 1 && alpha[t] > 0.0) || (y[t] == -1 && alpha[t] < box_c); };
    auto objective = [&] {
        double acc = 0.0;
        for (std::size_t t = 0; t < n; ++t) acc += alpha[t] * (grad[t] - 1.0);
        return 0.5 * acc;
    };

    SmoReport report;
    double g_up = 0.0, g_low = 0.0;
    for (;;) {
        // i maximizes -y G over I_up, j minimizes it over I_low.
        std::size_t i = n, j = n;
        g_up = -std::numeric_limits<double>::infinity();
        g_low = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < n; ++t) {
            const double v = -y[t] * grad[t];
            if (in_up(t) && v > g_up) {
                g_up = v;
                i = t;
            }
            if (in_low(t) && v < g_low) {
                g_low = v;
                j = t;
            }
        }
        if (i == n || j == n || g_up - g_low < options.tol) {
            report.converged = true;
            break;
        }
        if (report.iterations >= max_iter) break;
        ++report.iterations;

        const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
        const double old_ai = alpha[i], old_aj = alpha[j];
        if (y[i] != y[j]) {
            double quad = q(ii, ii) + q(jj, jj) + 2.0 * q(ii, jj);
            if (quad <= 0.0) quad = kTau;
            const double delta = (-grad[i] - grad[j]) / quad;
            const double diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if (diff > 0.0) {
                if (alpha[j] < 0.0) { alpha[j] = 0.0; alpha[i] = diff; }
            } else {
                if (alpha[i] < 0.0) { alpha[i] = 0.0; alpha[j] = -diff; }
            }
            if (diff > 0.0) {
                if (alpha[i] > box_c) { alpha[i] = box_c; alpha[j] = box_c - diff; }
            } else {
                if (alpha[j] > box_c) { alpha[j] = box_c; alpha[i] = box_c + diff; }
            }
        } else {
            double quad = q(ii, ii) + q(jj, jj) - 2.0 * q(ii, jj);
            if (quad <= 0.0) quad = kTau;
            const double delta = (grad[i] - grad[j]) / quad;
            const double sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if (sum > box_c) {
                if (alpha[i] > box_c) { alpha[i] = box_c; alpha[j] = sum - box_c; }
            } else {
                if (alpha[j] < 0.0) { alpha[j] = 0.0; alpha[i] = sum; }
            }
            if (sum > box_c) {
                if (alpha[j] > box_c) { alpha[j] = box_c; alpha[i] = sum - box_c; }
            } else {
                if (alpha[i] < 0.0) { alpha[i] = 0.0; alpha[j] = sum; }
            }
        }
        const double d_ai = alpha[i] - old_ai, d_aj = alpha[j] - old_aj;
        // Q is symmetric; walk its columns for contiguous access.
        const double* qi = q.col(ii).data();
        const double* qj = q.col(jj).data();
        for (std::size_t t = 0; t < n; ++t) grad[t] += qi[t] * d_ai + qj[t] * d_aj;
        if (options.record_objective) report.objective_history.push_back(objective());
    }

    // Bias: mean of -y G over free vectors, else midpoint of the violating-pair bounds.
    double free_sum = 0.0;
    std::size_t free_count = 0;
    for (std::size_t t = 0; t < n; ++t) {
        if (alpha[t] > 0.0 && alpha[t] < box_c) {
            free_sum += -y[t] * grad[t];
            ++free_count;
        }
    }
    const double bias = free_count > 0 ? free_sum / static_cast<double>(free_count) : 0.5 * (g_up + g_low);

    BinaryTrainResult result;
    result.model.kernel = spec;
    result.model.box_c = box_c;
    result.model.bias = bias;
    std::vector<std::size_t> sv;
    for (std::size_t t = 0; t < n; ++t) {
        if (alpha[t] > 0.0) {
            sv.push_back(t);
            result.model.coef.push_back(alpha[t] * y[t]);
        }
    }
    result.model.support_vectors = x.select_rows(sv);

    report.objective = objective();
    report.max_kkt_violation = kkt_violation(x, y, alpha, bias, box_c, spec);
    report.alpha = std::move(alpha);
    result.report = std::move(report);
    return result;
}

}  // namespace wvcl
