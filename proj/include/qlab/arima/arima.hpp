#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "qlab/data/series.hpp"

namespace qlab::arima {

struct ArRoot {
    std::complex<double> value;
    double modulus = 0.0;
    double frequency = 0.0; // arg(root)/(2*pi) in [-0.5, 0.5]
};

/// ARIMA(p, 1, 0) fitted by conditional-sum-of-squares maximum likelihood:
/// the first p differenced values are conditioned on, sigma^2 is concentrated
/// out, and standard errors come from the inverse observed information
/// (numerical Hessian of the profile log-likelihood).
struct ArimaFit {
    std::size_t p = 0;
    std::size_t d = 1;
    std::size_t q = 0;
    double constant = 0.0;          // drift of the differenced equation
    std::vector<double> ar_coeffs;  // phi_1..phi_p
    std::vector<double> std_errs;   // const first, then AR terms
    std::vector<double> z_stats;
    std::vector<double> p_values;
    double sigma = 0.0; // innovation standard deviation
    double log_likelihood = 0.0;
    double aic = 0.0;
    double bic = 0.0;
    double hqic = 0.0;
    std::size_t n_obs = 0; // observations after differencing
    std::vector<ArRoot> roots;
    bool stationary = false; // all root moduli > 1
    bool converged = true;
    double css = 0.0;
    double gradient_scaled_norm = 0.0;
    std::string dep_variable = "D.Close";
    std::string sample_start; // report labels, empty when unknown
    std::string sample_end;
};

ArimaFit fit_arima(std::span<const double> closes, std::size_t p);
ArimaFit fit_arima(const data::ValidatedSeries& series, std::size_t p);

/// CSS objective at arbitrary parameters (theta = const, phi_1..phi_p) on the
/// given closes; exposed for the local-optimality checks.
double css_objective(std::span<const double> closes, std::span<const double> theta);

struct Forecast {
    std::vector<double> levels;   // h entries
    std::vector<double> std_errs; // forecast-error bands from the psi weights
};

/// Iterates the AR recursion on differences with future shocks at zero and
/// integrates back to levels. last_values must supply at least p+1 closes.
Forecast forecast(const ArimaFit& fit, std::span<const double> last_values, std::size_t horizon);

/// The three-block diagnostic table (header, coefficients, AR roots).
std::string arima_report(const ArimaFit& fit);

} // namespace qlab::arima
