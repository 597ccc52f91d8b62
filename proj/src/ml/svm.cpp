#include "qlab/ml/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qlab/core/errors.hpp"

namespace qlab::ml {

Scaler Scaler::fit(const std::vector<std::vector<double>>& rows) {
    Scaler out;
    if (rows.empty()) return out;
    const std::size_t dim = rows[0].size();
    out.mean.assign(dim, 0.0);
    out.std_dev.assign(dim, 0.0);
    for (const auto& row : rows) {
        for (std::size_t f = 0; f < dim; ++f) out.mean[f] += row[f];
    }
    for (std::size_t f = 0; f < dim; ++f) out.mean[f] /= static_cast<double>(rows.size());
    for (const auto& row : rows) {
        for (std::size_t f = 0; f < dim; ++f) {
            const double d = row[f] - out.mean[f];
            out.std_dev[f] += d * d;
        }
    }
    for (std::size_t f = 0; f < dim; ++f) {
        out.std_dev[f] = std::sqrt(out.std_dev[f] / static_cast<double>(rows.size()));
    }
    return out;
}

std::vector<double> Scaler::transform(std::span<const double> row) const {
    std::vector<double> out(row.size());
    for (std::size_t f = 0; f < row.size(); ++f) {
        const double sd = std_dev[f];
        out[f] = sd > 0.0 ? (row[f] - mean[f]) / sd : row[f] - mean[f];
    }
    return out;
}

double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma) {
    double dist2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        dist2 += d * d;
    }
    return std::exp(-gamma * dist2);
}

BinarySvm BinarySvm::train(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                           const SmoParams& params) {
    const std::size_t m = x.size();
    if (m == 0 || y.size() != m) {
        throw Error(ErrorCode::LengthMismatch, "svm rows vs labels");
    }
    if (params.c <= 0.0 || params.gamma <= 0.0) {
        throw Error(ErrorCode::DomainError, "C and gamma must be > 0");
    }

    BinarySvm model;
    model.x_ = x;
    model.y_ = y;
    model.gamma_ = params.gamma;
    model.c_ = params.c;
    model.alpha_.assign(m, 0.0);

    std::vector<double> kernel(m * m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            const double k = rbf_kernel(x[i], x[j], params.gamma);
            kernel[i * m + j] = k;
            kernel[j * m + i] = k;
        }
    }

    auto& alpha = model.alpha_;
    double& b = model.bias_;
    const double c = params.c;

    // f[i] = sum_j alpha_j y_j K_ij + b, maintained incrementally.
    std::vector<double> f(m, 0.0);

    auto take_step = [&](std::size_t i, std::size_t j) {
        if (i == j) return false;
        const double e_i = f[i] - y[i];
        const double e_j = f[j] - y[j];
        const double a_i_old = alpha[i];
        const double a_j_old = alpha[j];
        double lo, hi;
        if (y[i] != y[j]) {
            lo = std::max(0.0, a_j_old - a_i_old);
            hi = std::min(c, c + a_j_old - a_i_old);
        } else {
            lo = std::max(0.0, a_i_old + a_j_old - c);
            hi = std::min(c, a_i_old + a_j_old);
        }
        if (lo >= hi) return false;
        const double eta = 2.0 * kernel[i * m + j] - kernel[i * m + i] - kernel[j * m + j];
        double a_j;
        if (eta < 0.0) {
            a_j = a_j_old - static_cast<double>(y[j]) * (e_i - e_j) / eta;
            a_j = std::clamp(a_j, lo, hi);
        } else {
            // flat or convex direction: the constrained optimum sits at an
            // endpoint; compare the dual objective at both (Platt's fallback)
            const double s = static_cast<double>(y[i] * y[j]);
            const double f_i = y[i] * e_i - a_i_old * kernel[i * m + i] - s * a_j_old * kernel[i * m + j];
            const double f_j = y[j] * e_j - s * a_i_old * kernel[i * m + j] - a_j_old * kernel[j * m + j];
            const double i_at_lo = a_i_old + s * (a_j_old - lo);
            const double i_at_hi = a_i_old + s * (a_j_old - hi);
            const double obj_lo = i_at_lo * f_i + lo * f_j + 0.5 * i_at_lo * i_at_lo * kernel[i * m + i] +
                                  0.5 * lo * lo * kernel[j * m + j] + s * lo * i_at_lo * kernel[i * m + j];
            const double obj_hi = i_at_hi * f_i + hi * f_j + 0.5 * i_at_hi * i_at_hi * kernel[i * m + i] +
                                  0.5 * hi * hi * kernel[j * m + j] + s * hi * i_at_hi * kernel[i * m + j];
            if (obj_lo < obj_hi - 1e-12) a_j = lo;
            else if (obj_hi < obj_lo - 1e-12) a_j = hi;
            else return false;
        }
        if (std::abs(a_j - a_j_old) < 1e-12) return false;
        const double a_i = a_i_old + static_cast<double>(y[i] * y[j]) * (a_j_old - a_j);
        alpha[i] = a_i;
        alpha[j] = a_j;

        const double b_old = b;
        const double b1 = b - e_i - y[i] * (a_i - a_i_old) * kernel[i * m + i] -
                          y[j] * (a_j - a_j_old) * kernel[i * m + j];
        const double b2 = b - e_j - y[i] * (a_i - a_i_old) * kernel[i * m + j] -
                          y[j] * (a_j - a_j_old) * kernel[j * m + j];
        if (a_i > 0.0 && a_i < c) b = b1;
        else if (a_j > 0.0 && a_j < c) b = b2;
        else b = 0.5 * (b1 + b2);

        const double delta_i = y[i] * (a_i - a_i_old);
        const double delta_j = y[j] * (a_j - a_j_old);
        const double delta_b = b - b_old;
        for (std::size_t k = 0; k < m; ++k) {
            f[k] += delta_i * kernel[i * m + k] + delta_j * kernel[j * m + k] + delta_b;
        }
        return true;
    };

    auto examine = [&](std::size_t i) {
        const double e_i = f[i] - y[i];
        const double r = e_i * static_cast<double>(y[i]);
        const bool violates = (r < -params.tol && alpha[i] < c) || (r > params.tol && alpha[i] > 0.0);
        if (!violates) return false;

        // Second-choice heuristic: largest |E_i - E_j| first, then everything
        // else in index order.
        std::size_t best_j = m;
        double best_gap = -1.0;
        for (std::size_t j = 0; j < m; ++j) {
            if (j == i) continue;
            const double gap = std::abs(e_i - (f[j] - y[j]));
            if (gap > best_gap) {
                best_gap = gap;
                best_j = j;
            }
        }
        if (best_j < m && take_step(i, best_j)) return true;
        for (std::size_t j = 0; j < m; ++j) {
            if (j == i || j == best_j) continue;
            if (take_step(i, j)) return true;
        }
        return false;
    };

    bool examine_all = true;
    std::size_t pass = 0;
    for (; pass < params.max_passes; ++pass) {
        std::size_t changed = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (!examine_all && (alpha[i] <= 0.0 || alpha[i] >= c)) continue;
            if (examine(i)) ++changed;
        }
        if (changed == 0) {
            if (examine_all) break; // clean full sweep: KKT satisfied within tol
            examine_all = true;
        } else {
            examine_all = false;
        }
    }

    // Recompute the bias from the final alphas. Each point bounds the
    // feasible bias from one side (both sides when interior); the interval
    // midpoint minimizes the worst KKT violation. The incremental b from the
    // last step is only exact for that step's pair.
    {
        const double eps = 1e-9 * c;
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            const double margin = f[i] - b; // sum_j alpha_j y_j K_ij
            const double pivot = y[i] > 0 ? 1.0 - margin : -1.0 - margin;
            const bool at_lower = alpha[i] <= eps;
            const bool at_upper = alpha[i] >= c - eps;
            const bool wants_lower = (y[i] > 0 && !at_upper) || (y[i] < 0 && !at_lower);
            const bool wants_upper = (y[i] > 0 && !at_lower) || (y[i] < 0 && !at_upper);
            if (wants_lower) lo = std::max(lo, pivot);
            if (wants_upper) hi = std::min(hi, pivot);
        }
        double b_new = b;
        if (std::isfinite(lo) && std::isfinite(hi)) b_new = 0.5 * (lo + hi);
        else if (std::isfinite(lo)) b_new = lo;
        else if (std::isfinite(hi)) b_new = hi;
        const double shift = b_new - b;
        if (shift != 0.0) {
            for (std::size_t i = 0; i < m; ++i) f[i] += shift;
            b = b_new;
        }
    }

    double worst = 0.0;
    const double bound_eps = 1e-9 * c; // paired updates land within ulps of a bound
    for (std::size_t i = 0; i < m; ++i) {
        const double r = (f[i] - y[i]) * static_cast<double>(y[i]);
        if (alpha[i] < c - bound_eps) worst = std::max(worst, -r);
        if (alpha[i] > bound_eps) worst = std::max(worst, r);
    }
    model.max_kkt_violation_ = std::max(worst, 0.0);
    model.converged_ = pass < params.max_passes;
    return model;
}

double BinarySvm::decision(std::span<const double> point) const {
    double acc = bias_;
    for (std::size_t j = 0; j < x_.size(); ++j) {
        if (alpha_[j] != 0.0) {
            acc += alpha_[j] * y_[j] * rbf_kernel(x_[j], point, gamma_);
        }
    }
    return acc;
}

double BinarySvm::dual_objective() const {
    double linear = 0.0;
    double quad = 0.0;
    for (std::size_t i = 0; i < alpha_.size(); ++i) {
        if (alpha_[i] == 0.0) continue;
        linear += alpha_[i];
        for (std::size_t j = 0; j < alpha_.size(); ++j) {
            if (alpha_[j] == 0.0) continue;
            quad += alpha_[i] * alpha_[j] * y_[i] * y_[j] * rbf_kernel(x_[i], x_[j], gamma_);
        }
    }
    return linear - 0.5 * quad;
}

} // namespace qlab::ml
