#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wvcl/types.hpp"

namespace wvcl {

// Dense row-major sample matrix.
class FeatureMatrix {
public:
    FeatureMatrix() = default;
    FeatureMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
    static FeatureMatrix from_rows(const std::vector<RealVector>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    const RealVector& data() const noexcept { return data_; }
    RealVector& data() noexcept { return data_; }

    void append_row(std::span<const double> values);
    FeatureMatrix select_rows(std::span<const std::size_t> indices) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    RealVector data_;
};

enum class KernelKind { Polynomial };

// (gamma <x, y> + coef0)^degree
struct KernelSpec {
    KernelKind kind = KernelKind::Polynomial;
    int degree = 2;
    double gamma = 1.0;
    double coef0 = 1.0;

    void validate() const;
};

double kernel(std::span<const double> x, std::span<const double> y, const KernelSpec& spec);

// Per-dimension affine map to zero mean and unit variance (population).
// Zero-variance dimensions keep std = 1 so they map to 0 on the training set.
struct Standardizer {
    RealVector mean;
    RealVector stddev;

    RealVector apply(std::span<const double> x) const;
    FeatureMatrix apply(const FeatureMatrix& x) const;
};

Standardizer fit_standardizer(const FeatureMatrix& features);

struct SmoOptions {
    double tol = 1e-3;
    std::size_t max_iterations = 0;  // 0: max(10^7, 100 n)
    bool record_objective = false;
};

struct SmoReport {
    std::size_t iterations = 0;
    bool converged = false;
    // Largest KKT violation over the training set, measured on y_i f(x_i) with
    // the final bias.
    double max_kkt_violation = 0.0;
    double objective = 0.0;            // dual objective 1/2 a'Qa - e'a at exit
    RealVector objective_history;      // per iteration, when requested
    RealVector alpha;                  // full dual vector, training order
};

struct BinarySvm {
    FeatureMatrix support_vectors;
    RealVector coef;  // alpha_i * y_i, alpha_i > 0
    double bias = 0.0;
    KernelSpec kernel;
    double box_c = 1.0;

    double decision(std::span<const double> x) const;
    // Decision values for every row of x.
    RealVector decision_batch(const FeatureMatrix& x) const;
};

struct BinaryTrainResult {
    BinarySvm model;
    SmoReport report;
};

// Dual SMO with maximal-violating-pair working-set selection. Labels are +1/-1.
BinaryTrainResult train_binary_svm(const FeatureMatrix& x, std::span<const int> y, double box_c,
                                   const KernelSpec& spec, const SmoOptions& options = {});

// Max KKT violation of (alpha, bias) on a training set, as used by SmoReport.
double kkt_violation(const FeatureMatrix& x, std::span<const int> y, std::span<const double> alpha,
                     double bias, double box_c, const KernelSpec& spec);

}  // namespace wvcl
