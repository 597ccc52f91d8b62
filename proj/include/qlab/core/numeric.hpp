#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qlab::core {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

inline bool defined(double x) { return !std::isnan(x); }

/// Decimal rounding with ties-to-even on the exact binary value, the
/// banker's convention: round_half_even(2.5) == 2, round_half_even(0.5) == 0.
double round_half_even(double x);
double round_half_even(double x, int decimals);

/// Shortest decimal representation that round-trips, with a trailing ".0" for
/// integral values (the float-repr convention the trade ledgers use).
std::string repr_double(double x);

/// Fixed-decimal formatting ("%.nf") parsed back to double; used where
/// percentages are string-rounded before further arithmetic.
double fixed_round(double x, int decimals);
std::string format_fixed(double x, int decimals);

double mean(std::span<const double> xs);
double variance_population(std::span<const double> xs);
double variance_sample(std::span<const double> xs);

/// Standard normal CDF via erf; absolute error well below 1e-12.
double norm_cdf(double x);
double norm_pdf(double x);

/// Linear-interpolation quantile, q in [0, 1] (the dataframe convention).
double quantile_linear(std::vector<double> xs, double q);

/// FNV-1a 64-bit, used for content digests and label hashing.
std::uint64_t fnv1a64(std::span<const unsigned char> bytes);
std::uint64_t fnv1a64(std::string_view text);

} // namespace qlab::core
