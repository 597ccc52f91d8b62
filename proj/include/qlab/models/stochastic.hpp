#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qlab/core/parallel.hpp"
#include "qlab/core/rng.hpp"

namespace qlab::models {

struct GbmParams {
    double s0 = 100.0;  // initial price, > 0
    double mu = 0.0;    // drift per unit time
    double sigma = 0.2; // volatility per sqrt(time), >= 0
};

/// Exact log-Euler scheme: S_{t+1} = S_t * exp((mu - sigma^2/2) dt + sigma sqrt(dt) Z).
/// `arithmetic` switches to the additive Brownian special case
/// S_{t+1} = S_t + mu dt + sigma sqrt(dt) Z.
std::vector<double> simulate_gbm(const GbmParams& params, double dt, std::size_t steps,
                                 core::Rng& rng, bool arithmetic = false);

struct HestonParams {
    double s0 = 100.0;
    double v0 = 0.04;     // initial variance >= 0
    double r = 0.0;       // risk-free rate
    double kappa = 2.0;   // reversion rate >= 0
    double theta = 0.04;  // long-term variance >= 0
    double sigma_v = 0.3; // vol of vol >= 0
    double rho = 0.0;     // Brownian correlation; 0 by default (independent drivers)

    double feller_ratio() const { return sigma_v > 0.0 ? 2.0 * kappa * theta / (sigma_v * sigma_v) : 0.0; }
};

struct HestonPath {
    std::vector<double> prices;    // steps + 1
    std::vector<double> variances; // steps + 1, pre-truncation values
    std::size_t floor_touches = 0; // times the variance went below zero
};

/// Euler full-truncation scheme: V+ = max(V, 0) in both the drift's sqrt and
/// the diffusion; prices via log-Euler with sqrt(V+).
HestonPath simulate_heston(const HestonParams& params, double dt, std::size_t steps, core::Rng& rng);

/// Terminal values of an ensemble, one seeded substream per path; results are
/// independent of the worker count.
std::vector<double> gbm_terminal_ensemble(const GbmParams& params, double dt, std::size_t steps,
                                          std::size_t n_paths, const core::RngFactory& rng,
                                          core::Exec exec = core::Exec::parallel);

struct HestonTerminal {
    double price = 0.0;
    double variance = 0.0;
};

std::vector<HestonTerminal> heston_terminal_ensemble(const HestonParams& params, double dt,
                                                     std::size_t steps, std::size_t n_paths,
                                                     const core::RngFactory& rng,
                                                     core::Exec exec = core::Exec::parallel);

struct OptionQuote {
    double s = 0.0;
    double k = 0.0;
    double r = 0.0;
    double t = 0.0;
    double sigma = 0.0;
    double call_price = 0.0;
    double put_price = 0.0; // from the same N, for parity checks
    double vega = 0.0;      // analytic s*phi(d1)*sqrt(t)
};

/// C = S N(d1) - K e^{-rt} N(d2); sigma = 0 handled analytically.
OptionQuote black_scholes_call(double s, double k, double r, double t, double sigma);

/// P0 = D1 / (k - g); requires k > g.
double gordon_shapiro(double next_dividend, double required_return, double growth);

struct QtmInput {
    std::optional<double> m;
    std::optional<double> v;
    std::optional<double> p;
    std::optional<double> y;
};

struct QtmResult {
    char solved_for = ' ';       // 'M','V','P','Y', or ' ' in verification mode
    double value = 0.0;          // the solved quantity
    std::optional<bool> consistent; // set when all four were supplied
};

/// Solves MV = PY for the missing symbol; with all four supplied, verifies
/// the identity instead (relative tolerance 1e-9).
QtmResult quantity_theory_solve(const QtmInput& input);

} // namespace qlab::models
