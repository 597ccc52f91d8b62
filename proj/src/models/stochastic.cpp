#include "qlab/models/stochastic.hpp"

#include <cmath>

#include "qlab/core/errors.hpp"
#include "qlab/core/numeric.hpp"

namespace qlab::models {

namespace {

void check_simulation_args(double s0, double sigma, double dt, std::size_t steps) {
    if (s0 <= 0.0) throw Error(ErrorCode::DomainError, "initial price must be > 0");
    if (sigma < 0.0) throw Error(ErrorCode::DomainError, "volatility must be >= 0");
    if (dt <= 0.0) throw Error(ErrorCode::DomainError, "dt must be > 0");
    if (steps == 0) throw Error(ErrorCode::DomainError, "steps must be >= 1");
}

} // namespace

std::vector<double> simulate_gbm(const GbmParams& params, double dt, std::size_t steps,
                                 core::Rng& rng, bool arithmetic) {
    check_simulation_args(params.s0, params.sigma, dt, steps);

    std::vector<double> path(steps + 1);
    path[0] = params.s0;
    const double sqrt_dt = std::sqrt(dt);
    if (arithmetic) {
        for (std::size_t i = 0; i < steps; ++i) {
            path[i + 1] = path[i] + params.mu * dt + params.sigma * sqrt_dt * rng.normal();
        }
    } else {
        const double drift = (params.mu - 0.5 * params.sigma * params.sigma) * dt;
        for (std::size_t i = 0; i < steps; ++i) {
            path[i + 1] = path[i] * std::exp(drift + params.sigma * sqrt_dt * rng.normal());
        }
    }
    return path;
}

HestonPath simulate_heston(const HestonParams& params, double dt, std::size_t steps, core::Rng& rng) {
    check_simulation_args(params.s0, params.sigma_v, dt, steps);
    if (params.v0 < 0.0 || params.kappa < 0.0 || params.theta < 0.0) {
        throw Error(ErrorCode::DomainError, "v0, kappa, theta must be >= 0");
    }
    if (params.rho < -1.0 || params.rho > 1.0) {
        throw Error(ErrorCode::DomainError, "rho must be in [-1, 1]");
    }

    HestonPath out;
    out.prices.resize(steps + 1);
    out.variances.resize(steps + 1);
    out.prices[0] = params.s0;
    out.variances[0] = params.v0;

    const double sqrt_dt = std::sqrt(dt);
    const double rho_bar = std::sqrt(1.0 - params.rho * params.rho);
    double variance = params.v0;
    for (std::size_t i = 0; i < steps; ++i) {
        const double z1 = rng.normal();
        const double w2 = rng.normal();
        const double z2 = params.rho * z1 + rho_bar * w2;

        const double v_plus = std::max(variance, 0.0);
        if (variance < 0.0) ++out.floor_touches;

        out.prices[i + 1] =
            out.prices[i] * std::exp((params.r - 0.5 * v_plus) * dt + std::sqrt(v_plus) * sqrt_dt * z1);
        variance = variance + params.kappa * (params.theta - v_plus) * dt +
                   params.sigma_v * std::sqrt(v_plus) * sqrt_dt * z2;
        out.variances[i + 1] = variance;
    }
    return out;
}

std::vector<double> gbm_terminal_ensemble(const GbmParams& params, double dt, std::size_t steps,
                                          std::size_t n_paths, const core::RngFactory& rng,
                                          core::Exec exec) {
    return core::parallel_map<double>(exec, n_paths, [&](std::size_t path) {
        auto stream = rng.stream("gbm.path", path);
        return simulate_gbm(params, dt, steps, stream).back();
    });
}

std::vector<HestonTerminal> heston_terminal_ensemble(const HestonParams& params, double dt,
                                                     std::size_t steps, std::size_t n_paths,
                                                     const core::RngFactory& rng, core::Exec exec) {
    return core::parallel_map<HestonTerminal>(exec, n_paths, [&](std::size_t path) {
        auto stream = rng.stream("heston.path", path);
        const auto result = simulate_heston(params, dt, steps, stream);
        return HestonTerminal{result.prices.back(), result.variances.back()};
    });
}

OptionQuote black_scholes_call(double s, double k, double r, double t, double sigma) {
    if (s <= 0.0 || k <= 0.0 || t <= 0.0) {
        throw Error(ErrorCode::DomainError, "spot, strike, and maturity must be > 0");
    }
    if (sigma < 0.0) {
        throw Error(ErrorCode::DomainError, "volatility must be >= 0");
    }

    OptionQuote quote{s, k, r, t, sigma, 0.0, 0.0, 0.0};
    const double discounted_strike = k * std::exp(-r * t);
    if (sigma == 0.0) {
        quote.call_price = std::max(s - discounted_strike, 0.0);
        quote.put_price = std::max(discounted_strike - s, 0.0);
        quote.vega = 0.0;
        return quote;
    }

    const double sigma_sqrt_t = sigma * std::sqrt(t);
    const double d1 = (std::log(s / k) + (r + 0.5 * sigma * sigma) * t) / sigma_sqrt_t;
    const double d2 = d1 - sigma_sqrt_t;
    quote.call_price = s * core::norm_cdf(d1) - discounted_strike * core::norm_cdf(d2);
    quote.put_price = discounted_strike * core::norm_cdf(-d2) - s * core::norm_cdf(-d1);
    quote.vega = s * core::norm_pdf(d1) * std::sqrt(t);
    return quote;
}

double gordon_shapiro(double next_dividend, double required_return, double growth) {
    if (required_return <= growth) {
        throw Error(ErrorCode::NonPositiveSpread, "required return must exceed growth");
    }
    return next_dividend / (required_return - growth);
}

QtmResult quantity_theory_solve(const QtmInput& input) {
    const int supplied = static_cast<int>(input.m.has_value()) + static_cast<int>(input.v.has_value()) +
                         static_cast<int>(input.p.has_value()) + static_cast<int>(input.y.has_value());
    if (supplied < 3) {
        throw Error(ErrorCode::Underdetermined, "need at least three of M, V, P, Y");
    }
    for (const auto& value : {input.m, input.v, input.p, input.y}) {
        if (value && *value <= 0.0) {
            throw Error(ErrorCode::DomainError, "all quantities must be > 0");
        }
    }

    QtmResult out;
    if (supplied == 4) {
        const double lhs = *input.m * *input.v;
        const double rhs = *input.p * *input.y;
        out.consistent = std::abs(lhs - rhs) <= 1e-9 * std::max(std::abs(lhs), std::abs(rhs));
        return out;
    }

    if (!input.m) {
        out.solved_for = 'M';
        out.value = (*input.p * *input.y) / *input.v;
    } else if (!input.v) {
        out.solved_for = 'V';
        out.value = (*input.p * *input.y) / *input.m;
    } else if (!input.p) {
        out.solved_for = 'P';
        out.value = (*input.m * *input.v) / *input.y;
    } else {
        out.solved_for = 'Y';
        out.value = (*input.m * *input.v) / *input.p;
    }
    return out;
}

} // namespace qlab::models
