#include "qlab/ind/indicators.hpp"

#include <algorithm>
#include <cmath>

#include "qlab/core/errors.hpp"
#include "qlab/core/numeric.hpp"

namespace qlab::ind {

using core::kNaN;

namespace {

void require_window(std::size_t n, std::size_t len, const char* what) {
    if (n == 0 || n > len) {
        throw Error(ErrorCode::WindowTooLarge,
                    std::string(what) + ": window " + std::to_string(n) + " on " + std::to_string(len) + " bars");
    }
}

void require_equal(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw Error(ErrorCode::LengthMismatch,
                    std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b));
    }
}

double true_range(double high, double low, double prev_close) {
    return std::max({high - low, std::abs(high - prev_close), std::abs(low - prev_close)});
}

} // namespace

bool IndicatorSeries::defined(std::size_t i) const {
    return i < values.size() && !std::isnan(values[i]);
}

std::size_t IndicatorSeries::first_defined() const {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isnan(values[i])) return i;
    }
    return values.size();
}

IndicatorSeries sma(std::span<const double> closes, std::size_t n, bool lagged) {
    require_window(n, closes.size(), "sma");
    IndicatorSeries out;
    out.name = lagged ? "sma_lagged" : "sma";
    out.values.assign(closes.size(), kNaN);

    double window_sum = 0.0;
    for (std::size_t i = 0; i < closes.size(); ++i) {
        window_sum += closes[i];
        if (i >= n) window_sum -= closes[i - n];
        if (i + 1 >= n) {
            const double value = window_sum / static_cast<double>(n);
            const std::size_t at = lagged ? i + 1 : i;
            if (at < out.values.size()) out.values[at] = value;
        }
    }
    return out;
}

IndicatorSeries rsi(std::span<const double> closes, std::size_t n) {
    if (closes.size() <= n) {
        throw Error(ErrorCode::WindowTooLarge,
                    "rsi: need more than " + std::to_string(n) + " closes, got " + std::to_string(closes.size()));
    }
    require_window(n, closes.size(), "rsi");

    IndicatorSeries out;
    out.name = "rsi";
    out.values.assign(closes.size(), kNaN);

    double avg_gain = 0.0;
    double avg_loss = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        const double change = closes[i] - closes[i - 1];
        if (change > 0.0) avg_gain += change;
        else avg_loss -= change;
    }
    avg_gain /= static_cast<double>(n);
    avg_loss /= static_cast<double>(n);

    auto to_rsi = [](double gain, double loss) {
        if (loss == 0.0 && gain == 0.0) return 50.0;
        if (loss == 0.0) return 100.0;
        const double rs = gain / loss;
        return 100.0 - 100.0 / (1.0 + rs);
    };

    out.values[n] = to_rsi(avg_gain, avg_loss);
    for (std::size_t i = n + 1; i < closes.size(); ++i) {
        const double change = closes[i] - closes[i - 1];
        const double gain = change > 0.0 ? change : 0.0;
        const double loss = change < 0.0 ? -change : 0.0;
        avg_gain = (avg_gain * static_cast<double>(n - 1) + gain) / static_cast<double>(n);
        avg_loss = (avg_loss * static_cast<double>(n - 1) + loss) / static_cast<double>(n);
        out.values[i] = to_rsi(avg_gain, avg_loss);
    }
    return out;
}

IndicatorSeries parabolic_sar(std::span<const double> highs, std::span<const double> lows,
                              std::span<const double> closes, double accel_init, double accel_max) {
    require_equal(highs.size(), lows.size(), "sar");
    require_equal(highs.size(), closes.size(), "sar");
    if (highs.size() < 2) {
        throw Error(ErrorCode::TooShort, "sar: need >= 2 bars");
    }
    if (!(accel_init > 0.0) || accel_init > accel_max) {
        throw Error(ErrorCode::DomainError, "sar: need 0 < accel_init <= accel_max");
    }

    IndicatorSeries out;
    out.name = "sar";
    out.values.assign(highs.size(), kNaN);

    bool is_long = closes[1] >= closes[0];
    double sar = is_long ? std::min(lows[0], lows[1]) : std::max(highs[0], highs[1]);
    double extreme = is_long ? std::max(highs[0], highs[1]) : std::min(lows[0], lows[1]);
    double accel = accel_init;
    out.values[1] = sar;

    for (std::size_t i = 2; i < highs.size(); ++i) {
        sar += accel * (extreme - sar);
        // SAR may not penetrate the prior two bars' range.
        if (is_long) {
            sar = std::min({sar, lows[i - 1], lows[i - 2]});
        } else {
            sar = std::max({sar, highs[i - 1], highs[i - 2]});
        }

        const bool reversed = is_long ? lows[i] < sar : highs[i] > sar;
        if (reversed) {
            is_long = !is_long;
            sar = extreme;
            extreme = is_long ? highs[i] : lows[i];
            accel = accel_init;
        } else if (is_long && highs[i] > extreme) {
            extreme = highs[i];
            accel = std::min(accel + accel_init, accel_max);
        } else if (!is_long && lows[i] < extreme) {
            extreme = lows[i];
            accel = std::min(accel + accel_init, accel_max);
        }
        out.values[i] = sar;
    }
    return out;
}

IndicatorSeries atr(std::span<const double> highs, std::span<const double> lows,
                    std::span<const double> closes, std::size_t n) {
    require_equal(highs.size(), lows.size(), "atr");
    require_equal(highs.size(), closes.size(), "atr");
    if (highs.size() <= n) {
        throw Error(ErrorCode::WindowTooLarge,
                    "atr: need more than " + std::to_string(n) + " bars, got " + std::to_string(highs.size()));
    }
    require_window(n, highs.size(), "atr");

    IndicatorSeries out;
    out.name = "atr";
    out.values.assign(highs.size(), kNaN);

    double acc = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        acc += true_range(highs[i], lows[i], closes[i - 1]);
    }
    double smoothed = acc / static_cast<double>(n);
    out.values[n] = smoothed;
    for (std::size_t i = n + 1; i < highs.size(); ++i) {
        const double tr = true_range(highs[i], lows[i], closes[i - 1]);
        smoothed = (smoothed * static_cast<double>(n - 1) + tr) / static_cast<double>(n);
        out.values[i] = smoothed;
    }
    return out;
}

IndicatorSeries adx(std::span<const double> highs, std::span<const double> lows,
                    std::span<const double> closes, std::size_t n) {
    require_equal(highs.size(), lows.size(), "adx");
    require_equal(highs.size(), closes.size(), "adx");
    if (n == 0 || highs.size() <= 2 * n) {
        throw Error(ErrorCode::WindowTooLarge,
                    "adx: need more than " + std::to_string(2 * n) + " bars, got " + std::to_string(highs.size()));
    }

    IndicatorSeries out;
    out.name = "adx";
    out.values.assign(highs.size(), kNaN);

    const std::size_t len = highs.size();
    std::vector<double> dx(len, kNaN);

    double smooth_plus = 0.0;
    double smooth_minus = 0.0;
    double smooth_tr = 0.0;

    auto directional_moves = [&](std::size_t i, double& plus, double& minus) {
        const double up = highs[i] - highs[i - 1];
        const double down = lows[i - 1] - lows[i];
        plus = (up > down && up > 0.0) ? up : 0.0;
        minus = (down > up && down > 0.0) ? down : 0.0;
    };

    auto compute_dx = [&]() {
        if (smooth_tr == 0.0) return 0.0; // flat market convention
        const double di_plus = 100.0 * smooth_plus / smooth_tr;
        const double di_minus = 100.0 * smooth_minus / smooth_tr;
        const double denom = di_plus + di_minus;
        if (denom == 0.0) return 0.0;
        return 100.0 * std::abs(di_plus - di_minus) / denom;
    };

    for (std::size_t i = 1; i <= n; ++i) {
        double plus, minus;
        directional_moves(i, plus, minus);
        smooth_plus += plus;
        smooth_minus += minus;
        smooth_tr += true_range(highs[i], lows[i], closes[i - 1]);
    }
    dx[n] = compute_dx();

    for (std::size_t i = n + 1; i < len; ++i) {
        double plus, minus;
        directional_moves(i, plus, minus);
        const double nd = static_cast<double>(n);
        smooth_plus = smooth_plus - smooth_plus / nd + plus;
        smooth_minus = smooth_minus - smooth_minus / nd + minus;
        smooth_tr = smooth_tr - smooth_tr / nd + true_range(highs[i], lows[i], closes[i - 1]);
        dx[i] = compute_dx();
    }

    double adx_acc = 0.0;
    for (std::size_t i = n; i < 2 * n; ++i) adx_acc += dx[i];
    double smoothed = adx_acc / static_cast<double>(n);
    out.values[2 * n - 1] = smoothed;
    for (std::size_t i = 2 * n; i < len; ++i) {
        smoothed = (smoothed * static_cast<double>(n - 1) + dx[i]) / static_cast<double>(n);
        out.values[i] = smoothed;
    }
    return out;
}

Bbands bbands(std::span<const double> closes, std::size_t n, double k) {
    if (n < 2) {
        throw Error(ErrorCode::WindowTooLarge, "bbands: window must be >= 2");
    }
    require_window(n, closes.size(), "bbands");

    Bbands out;
    out.middle = sma(closes, n);
    out.middle.name = "bbands_middle";
    out.upper.name = "bbands_upper";
    out.lower.name = "bbands_lower";
    out.upper.values.assign(closes.size(), kNaN);
    out.lower.values.assign(closes.size(), kNaN);

    for (std::size_t i = n - 1; i < closes.size(); ++i) {
        const auto window = closes.subspan(i + 1 - n, n);
        const double sd = std::sqrt(core::variance_population(window));
        out.upper.values[i] = out.middle.values[i] + k * sd;
        out.lower.values[i] = out.middle.values[i] - k * sd;
    }
    return out;
}

IndicatorSeries rolling_corr(std::span<const double> a, std::span<const double> b, std::size_t n) {
    require_equal(a.size(), b.size(), "rolling_corr");
    if (n < 2) {
        throw Error(ErrorCode::WindowTooLarge, "rolling_corr: window must be >= 2");
    }
    require_window(n, a.size(), "rolling_corr");

    IndicatorSeries out;
    out.name = "rolling_corr";
    out.values.assign(a.size(), kNaN);

    for (std::size_t i = n - 1; i < a.size(); ++i) {
        const std::size_t start = i + 1 - n;
        bool ok = true;
        double mean_a = 0.0;
        double mean_b = 0.0;
        for (std::size_t j = start; j <= i; ++j) {
            if (std::isnan(a[j]) || std::isnan(b[j])) {
                ok = false;
                break;
            }
            mean_a += a[j];
            mean_b += b[j];
        }
        if (!ok) continue;
        mean_a /= static_cast<double>(n);
        mean_b /= static_cast<double>(n);
        double cov = 0.0;
        double var_a = 0.0;
        double var_b = 0.0;
        for (std::size_t j = start; j <= i; ++j) {
            const double da = a[j] - mean_a;
            const double db = b[j] - mean_b;
            cov += da * db;
            var_a += da * da;
            var_b += db * db;
        }
        if (var_a == 0.0 || var_b == 0.0) continue; // undefined, dropped downstream
        out.values[i] = std::clamp(cov / std::sqrt(var_a * var_b), -1.0, 1.0);
    }
    return out;
}

std::vector<double> shift(std::span<const double> xs, std::size_t k) {
    std::vector<double> out(xs.size(), kNaN);
    for (std::size_t i = k; i < xs.size(); ++i) out[i] = xs[i - k];
    return out;
}

} // namespace qlab::ind
