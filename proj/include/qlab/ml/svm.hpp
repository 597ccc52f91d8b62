#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qlab::ml {

/// Per-feature z-score standardization; statistics come from training rows
/// only. Zero-variance features pass through centered.
struct Scaler {
    std::vector<double> mean;
    std::vector<double> std_dev;

    static Scaler fit(const std::vector<std::vector<double>>& rows);
    std::vector<double> transform(std::span<const double> row) const;
};

struct SmoParams {
    double c = 1.0;
    double gamma = 0.1;
    double tol = 1e-3;             // KKT tolerance
    std::size_t max_passes = 10000; // sweep budget; exhaustion sets converged=false
};

/// One binary soft-margin SVM with RBF kernel, trained by sequential minimal
/// optimization over the dual. Iteration order is fixed, so training is a
/// deterministic function of (rows, labels, params).
class BinarySvm {
public:
    static BinarySvm train(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                           const SmoParams& params);

    double decision(std::span<const double> point) const;
    int predict(std::span<const double> point) const { return decision(point) >= 0.0 ? 1 : -1; }

    const std::vector<double>& alphas() const { return alpha_; }
    double bias() const { return bias_; }
    bool converged() const { return converged_; }
    double max_kkt_violation() const { return max_kkt_violation_; }

    /// Dual objective sum(alpha) - 1/2 sum_ij alpha_i alpha_j y_i y_j K_ij.
    double dual_objective() const;

private:
    std::vector<std::vector<double>> x_;
    std::vector<int> y_;
    std::vector<double> alpha_;
    double bias_ = 0.0;
    double gamma_ = 0.0;
    double c_ = 0.0;
    bool converged_ = false;
    double max_kkt_violation_ = 0.0;
};

double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma);

} // namespace qlab::ml
