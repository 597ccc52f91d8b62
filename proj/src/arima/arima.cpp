#include "qlab/arima/arima.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "qlab/core/errors.hpp"
#include "qlab/core/linalg.hpp"
#include "qlab/core/numeric.hpp"

namespace qlab::arima {

namespace {

constexpr double kZ95 = 1.959964; // normal 97.5% quantile

std::vector<double> difference(std::span<const double> closes) {
    std::vector<double> diffs(closes.size() - 1);
    for (std::size_t i = 0; i + 1 < closes.size(); ++i) diffs[i] = closes[i + 1] - closes[i];
    return diffs;
}

double css_on_diffs(std::span<const double> diffs, std::span<const double> theta) {
    const std::size_t p = theta.size() - 1;
    double acc = 0.0;
    for (std::size_t t = p; t < diffs.size(); ++t) {
        double pred = theta[0];
        for (std::size_t i = 1; i <= p; ++i) pred += theta[i] * diffs[t - i];
        const double eps = diffs[t] - pred;
        acc += eps * eps;
    }
    return acc;
}

// Profile negative log-likelihood with sigma^2 concentrated out.
double profile_nll(std::span<const double> diffs, std::span<const double> theta) {
    const std::size_t p = theta.size() - 1;
    const double m = static_cast<double>(diffs.size() - p);
    const double css = css_on_diffs(diffs, theta);
    if (css <= 0.0) return -std::numeric_limits<double>::infinity();
    return 0.5 * m * (std::log(2.0 * std::numbers::pi) + std::log(css / m) + 1.0);
}

core::Matrix ar_design(std::span<const double> diffs, std::size_t p) {
    const std::size_t rows = diffs.size() - p;
    core::Matrix x(rows, p + 1);
    for (std::size_t r = 0; r < rows; ++r) {
        x(r, 0) = 1.0;
        for (std::size_t i = 1; i <= p; ++i) x(r, i) = diffs[p + r - i];
    }
    return x;
}

} // namespace

double css_objective(std::span<const double> closes, std::span<const double> theta) {
    const auto diffs = difference(closes);
    return css_on_diffs(diffs, theta);
}

ArimaFit fit_arima(std::span<const double> closes, std::size_t p) {
    if (p == 0) {
        throw Error(ErrorCode::DomainError, "AR order p must be >= 1");
    }
    if (closes.size() < p + 2 || closes.size() - 1 - p < p + 3) {
        throw Error(ErrorCode::TooShort,
                    "arima(" + std::to_string(p) + ",1,0) on " + std::to_string(closes.size()) + " closes");
    }

    const auto diffs = difference(closes);
    const std::size_t m = diffs.size() - p; // conditional observations
    const std::size_t k = p + 1;            // const + AR terms

    // The CSS objective of a pure AR model is a linear least-squares problem,
    // so OLS supplies the starting point and Newton steps (constant Hessian
    // 2*X'X) polish it to the stated gradient tolerance.
    const auto design = ar_design(diffs, p);
    std::vector<double> target(diffs.begin() + static_cast<std::ptrdiff_t>(p), diffs.end());
    auto start = core::ols(design, target);
    std::vector<double> theta = start.coef;

    core::Matrix hessian(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            double acc = 0.0;
            for (std::size_t r = 0; r < design.rows(); ++r) acc += design(r, i) * design(r, j);
            hessian(i, j) = 2.0 * acc;
        }
    }

    auto gradient = [&](std::span<const double> at, std::vector<double>& g) {
        g.assign(k, 0.0);
        for (std::size_t r = 0; r < design.rows(); ++r) {
            double pred = 0.0;
            for (std::size_t c = 0; c < k; ++c) pred += design(r, c) * at[c];
            const double eps = target[r] - pred;
            for (std::size_t c = 0; c < k; ++c) g[c] -= 2.0 * eps * design(r, c);
        }
    };

    ArimaFit fit;
    fit.p = p;
    fit.n_obs = diffs.size();
    fit.converged = false;

    std::vector<double> grad;
    for (int iter = 0; iter < 500; ++iter) {
        gradient(theta, grad);
        double norm = 0.0;
        for (double g : grad) norm = std::max(norm, std::abs(g));
        const double scale = 1.0 + css_on_diffs(diffs, theta);
        fit.gradient_scaled_norm = norm / scale;
        if (fit.gradient_scaled_norm < 1e-6) {
            fit.converged = true;
            break;
        }
        std::vector<double> step;
        if (!core::solve_linear(hessian, grad, step)) {
            throw Error(ErrorCode::SingularRegression, "singular CSS Hessian");
        }
        for (std::size_t c = 0; c < k; ++c) theta[c] -= step[c];
    }
    if (!fit.converged) {
        throw Error(ErrorCode::NonConvergence,
                    "gradient norm " + std::to_string(fit.gradient_scaled_norm) + " after 500 iterations");
    }

    fit.constant = theta[0];
    fit.ar_coeffs.assign(theta.begin() + 1, theta.end());
    fit.css = css_on_diffs(diffs, theta);

    const double md = static_cast<double>(m);
    const double sigma2 = fit.css / md;
    fit.sigma = std::sqrt(sigma2);
    fit.log_likelihood = -0.5 * md * (std::log(2.0 * std::numbers::pi) + std::log(sigma2) + 1.0);

    const double n_params = static_cast<double>(p + 2); // AR terms + const + variance
    const double nd = static_cast<double>(fit.n_obs);
    fit.aic = -2.0 * fit.log_likelihood + 2.0 * n_params;
    fit.bic = -2.0 * fit.log_likelihood + std::log(nd) * n_params;
    fit.hqic = -2.0 * fit.log_likelihood + 2.0 * std::log(std::log(nd)) * n_params;

    // Observed information via central-difference Hessian of the profile nll.
    core::Matrix info(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            const double hi = 1e-4 * std::max(1.0, std::abs(theta[i]));
            const double hj = 1e-4 * std::max(1.0, std::abs(theta[j]));
            auto shifted = [&](double di, double dj) {
                std::vector<double> at = theta;
                at[i] += di;
                at[j] += dj;
                return profile_nll(diffs, at);
            };
            info(i, j) = (shifted(hi, hj) - shifted(hi, -hj) - shifted(-hi, hj) + shifted(-hi, -hj)) /
                         (4.0 * hi * hj);
        }
    }

    fit.std_errs.assign(k, 0.0);
    fit.z_stats.assign(k, 0.0);
    fit.p_values.assign(k, 1.0);
    for (std::size_t c = 0; c < k; ++c) {
        std::vector<double> unit(k, 0.0);
        unit[c] = 1.0;
        std::vector<double> column;
        if (!core::solve_linear(info, unit, column) || column[c] <= 0.0) {
            throw Error(ErrorCode::SingularRegression, "information matrix not invertible");
        }
        fit.std_errs[c] = std::sqrt(column[c]);
        const double coef = c == 0 ? fit.constant : fit.ar_coeffs[c - 1];
        fit.z_stats[c] = coef / fit.std_errs[c];
        fit.p_values[c] = 2.0 * (1.0 - core::norm_cdf(std::abs(fit.z_stats[c])));
    }

    // Roots of 1 - phi_1 z - ... - phi_p z^p.
    std::vector<double> poly(p + 1);
    poly[0] = 1.0;
    for (std::size_t i = 1; i <= p; ++i) poly[i] = -fit.ar_coeffs[i - 1];
    const auto roots = core::polynomial_roots(poly);
    fit.stationary = true;
    for (const auto& root : roots) {
        ArRoot entry;
        entry.value = root;
        entry.modulus = std::abs(root);
        if (root.imag() == 0.0) {
            entry.frequency = root.real() < 0.0 ? -0.5 : 0.0;
        } else {
            entry.frequency = std::atan2(root.imag(), root.real()) / (2.0 * std::numbers::pi);
        }
        if (entry.modulus <= 1.0) fit.stationary = false;
        fit.roots.push_back(entry);
    }
    return fit;
}

ArimaFit fit_arima(const data::ValidatedSeries& series, std::size_t p) {
    auto fit = fit_arima(std::span<const double>(series.series().closes()), p);
    fit.sample_start = series.series().candles.front().date.to_us();
    fit.sample_end = series.series().candles.back().date.to_us();
    return fit;
}

Forecast forecast(const ArimaFit& fit, std::span<const double> last_values, std::size_t horizon) {
    const std::size_t p = fit.p;
    if (last_values.size() < p + 1) {
        throw Error(ErrorCode::InsufficientHistory,
                    "need >= " + std::to_string(p + 1) + " closes, got " + std::to_string(last_values.size()));
    }

    // Most recent p differences, newest first.
    std::vector<double> recent(p);
    const std::size_t n = last_values.size();
    for (std::size_t i = 0; i < p; ++i) {
        recent[i] = last_values[n - 1 - i] - last_values[n - 2 - i];
    }

    Forecast out;
    out.levels.reserve(horizon);
    out.std_errs.reserve(horizon);

    double level = last_values.back();
    for (std::size_t step = 0; step < horizon; ++step) {
        double delta = fit.constant;
        for (std::size_t i = 0; i < p; ++i) delta += fit.ar_coeffs[i] * recent[i];
        level += delta;
        out.levels.push_back(level);
        for (std::size_t i = p; i-- > 1;) recent[i] = recent[i - 1];
        if (p > 0) recent[0] = delta;
    }

    // psi weights of the differenced AR, accumulated into the integrated
    // representation for the level forecast bands.
    std::vector<double> psi_diff(horizon, 0.0);
    std::vector<double> psi_level(horizon, 0.0);
    double running = 0.0;
    for (std::size_t j = 0; j < horizon; ++j) {
        if (j == 0) {
            psi_diff[0] = 1.0;
        } else {
            double acc = 0.0;
            for (std::size_t i = 1; i <= std::min<std::size_t>(j, p); ++i) {
                acc += fit.ar_coeffs[i - 1] * psi_diff[j - i];
            }
            psi_diff[j] = acc;
        }
        running += psi_diff[j];
        psi_level[j] = running;
    }
    double var_acc = 0.0;
    for (std::size_t step = 0; step < horizon; ++step) {
        var_acc += psi_level[step] * psi_level[step];
        out.std_errs.push_back(fit.sigma * std::sqrt(var_acc));
    }
    return out;
}

namespace {

std::string pad_left(const std::string& text, std::size_t width) {
    if (text.size() >= width) return text;
    return std::string(width - text.size(), ' ') + text;
}

std::string pad_right(const std::string& text, std::size_t width) {
    if (text.size() >= width) return text;
    return text + std::string(width - text.size(), ' ');
}

std::string centered(const std::string& text, std::size_t width) {
    if (text.size() >= width) return text;
    const std::size_t left = (width - text.size()) / 2;
    return std::string(left, ' ') + text + std::string(width - text.size() - left, ' ');
}

std::string fmt(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}

// Renders exact zeros as "-0.0000" so real roots line up with conjugates.
std::string fmt_signed_zero(double value, int decimals) {
    return fmt(value == 0.0 ? -0.0 : value, decimals);
}

} // namespace

std::string arima_report(const ArimaFit& fit) {
    constexpr std::size_t kWidth = 78;
    const std::string rule(kWidth, '=');
    const std::string dashes(kWidth, '-');
    std::ostringstream out;

    auto header_row = [&](const std::string& lk, const std::string& lv, const std::string& rk,
                          const std::string& rv) {
        const std::string left = pad_right(lk, 17) + pad_left(lv, 21);
        const std::string right = pad_right(rk, 21) + pad_left(rv, 17);
        out << left << "   " << right << "\n";
    };

    out << centered("ARIMA Model Results", kWidth) << "\n" << rule << "\n";
    const std::string model =
        "ARIMA(" + std::to_string(fit.p) + ", " + std::to_string(fit.d) + ", " + std::to_string(fit.q) + ")";
    header_row("Dep. Variable:", fit.dep_variable, "No. Observations:", std::to_string(fit.n_obs));
    header_row("Model:", model, "Log Likelihood", fmt(fit.log_likelihood, 3));
    header_row("Method:", "css-mle", "S.D. of innovations", fmt(fit.sigma, 3));
    header_row("Sample:", fit.sample_start, "AIC", fmt(fit.aic, 3));
    header_row("", fit.sample_end.empty() ? "" : "- " + fit.sample_end, "BIC", fmt(fit.bic, 3));
    header_row("", "", "HQIC", fmt(fit.hqic, 3));
    out << rule << "\n";

    out << pad_left("coef", 24) << pad_left("std err", 11) << pad_left("z", 11) << pad_left("P>|z|", 11)
        << pad_left("[0.025", 12) << pad_left("0.975]", 12) << "\n";
    out << dashes << "\n";
    for (std::size_t row = 0; row < fit.std_errs.size(); ++row) {
        const double coef = row == 0 ? fit.constant : fit.ar_coeffs[row - 1];
        const std::string name =
            row == 0 ? "const" : "ar.L" + std::to_string(row) + "." + fit.dep_variable;
        const double lo = coef - kZ95 * fit.std_errs[row];
        const double hi = coef + kZ95 * fit.std_errs[row];
        out << pad_right(name, 14) << pad_left(fmt(coef, 4), 10) << pad_left(fmt(fit.std_errs[row], 3), 11)
            << pad_left(fmt(fit.z_stats[row], 3), 11) << pad_left(fmt(fit.p_values[row], 3), 11)
            << pad_left(fmt(lo, 3), 12) << pad_left(fmt(hi, 3), 12) << "\n";
    }

    out << centered("Roots", kWidth) << "\n" << rule << "\n";
    out << pad_left("Real", 22) << pad_left("Imaginary", 19) << pad_left("Modulus", 18)
        << pad_left("Frequency", 18) << "\n";
    out << dashes << "\n";
    for (std::size_t i = 0; i < fit.roots.size(); ++i) {
        const auto& root = fit.roots[i];
        out << pad_right("AR." + std::to_string(i + 1), 8) << pad_left(fmt(root.value.real(), 4), 14)
            << pad_left(fmt_signed_zero(root.value.imag(), 4) + "j", 19)
            << pad_left(fmt(root.modulus, 4), 18) << pad_left(fmt_signed_zero(root.frequency, 4), 18)
            << "\n";
    }
    out << dashes << "\n";
    return out.str();
}

} // namespace qlab::arima
