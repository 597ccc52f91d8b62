#include "qlab/core/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "qlab/core/errors.hpp"

namespace qlab::core {

bool solve_linear(Matrix a, std::vector<double> b, std::vector<double>& x) {
    const std::size_t n = a.rows();
    if (n == 0 || a.cols() != n || b.size() != n) return false;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a(r, col)) > best) {
                best = std::abs(a(r, col));
                pivot = r;
            }
        }
        if (best < 1e-12) return false;
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
            std::swap(b[pivot], b[col]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a(r, col) / a(col, col);
            if (factor == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a(r, c) -= factor * a(col, c);
            b[r] -= factor * b[col];
        }
    }

    x.assign(n, 0.0);
    for (std::size_t ri = n; ri-- > 0;) {
        double acc = b[ri];
        for (std::size_t c = ri + 1; c < n; ++c) acc -= a(ri, c) * x[c];
        x[ri] = acc / a(ri, ri);
    }
    return true;
}

OlsFit ols(const Matrix& x, std::span<const double> y) {
    const std::size_t n = x.rows();
    const std::size_t k = x.cols();
    if (n != y.size() || n < k || k == 0) {
        throw Error(ErrorCode::SingularRegression, "design shape " + std::to_string(n) + "x" + std::to_string(k));
    }

    // Normal equations scaled by column norms to keep the pivoting honest on
    // level-vs-difference regressors of very different magnitude.
    std::vector<double> scale(k, 1.0);
    for (std::size_t c = 0; c < k; ++c) {
        double norm = 0.0;
        for (std::size_t r = 0; r < n; ++r) norm += x(r, c) * x(r, c);
        norm = std::sqrt(norm);
        scale[c] = norm > 0.0 ? norm : 1.0;
    }

    Matrix xtx(k, k);
    std::vector<double> xty(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            double acc = 0.0;
            for (std::size_t r = 0; r < n; ++r) acc += x(r, i) * x(r, j);
            acc /= scale[i] * scale[j];
            xtx(i, j) = acc;
            xtx(j, i) = acc;
        }
        double acc = 0.0;
        for (std::size_t r = 0; r < n; ++r) acc += x(r, i) * y[r];
        xty[i] = acc / scale[i];
    }

    std::vector<double> beta_scaled;
    if (!solve_linear(xtx, xty, beta_scaled)) {
        throw Error(ErrorCode::SingularRegression, "rank-deficient design");
    }

    OlsFit fit;
    fit.n_obs = n;
    fit.n_params = k;
    fit.coef.resize(k);
    for (std::size_t c = 0; c < k; ++c) fit.coef[c] = beta_scaled[c] / scale[c];

    fit.residuals.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
        double pred = 0.0;
        for (std::size_t c = 0; c < k; ++c) pred += x(r, c) * fit.coef[c];
        fit.residuals[r] = y[r] - pred;
        fit.rss += fit.residuals[r] * fit.residuals[r];
    }

    fit.std_err.assign(k, 0.0);
    if (n > k) {
        const double sigma2 = fit.rss / static_cast<double>(n - k);
        // diag of (X'X)^-1 via k solves against unit vectors (scaled space).
        for (std::size_t c = 0; c < k; ++c) {
            std::vector<double> e(k, 0.0);
            e[c] = 1.0;
            std::vector<double> col;
            if (!solve_linear(xtx, e, col)) {
                throw Error(ErrorCode::SingularRegression, "covariance solve failed");
            }
            const double var = sigma2 * col[c] / (scale[c] * scale[c]);
            fit.std_err[c] = var > 0.0 ? std::sqrt(var) : 0.0;
        }
    }
    return fit;
}

std::vector<std::complex<double>> polynomial_roots(std::span<const double> coeffs) {
    using cd = std::complex<double>;
    std::size_t degree = coeffs.size();
    while (degree > 0 && coeffs[degree - 1] == 0.0) --degree;
    if (degree < 2) return {};
    const std::size_t n = degree - 1;

    std::vector<cd> c(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(degree));
    const cd lead = c.back();
    for (auto& v : c) v /= lead;

    auto eval = [&](cd z) {
        cd acc = 0.0;
        for (std::size_t i = degree; i-- > 0;) acc = acc * z + c[i];
        return acc;
    };

    // Durand-Kerner from a non-real seed ring.
    std::vector<cd> roots(n);
    const cd seed(0.4, 0.9);
    roots[0] = seed;
    for (std::size_t i = 1; i < n; ++i) roots[i] = roots[i - 1] * seed;

    for (int iter = 0; iter < 500; ++iter) {
        double moved = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            cd denom = 1.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i) denom *= roots[i] - roots[j];
            }
            if (std::abs(denom) < 1e-300) continue;
            const cd delta = eval(roots[i]) / denom;
            roots[i] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-14) break;
    }

    // Snap to exact conjugate pairs / real axis so callers can rely on the
    // symmetry bit-for-bit.
    const double tol = 1e-8;
    std::vector<bool> used(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (used[i]) continue;
        if (std::abs(roots[i].imag()) < tol * (1.0 + std::abs(roots[i].real()))) {
            roots[i] = cd(roots[i].real(), 0.0);
            used[i] = true;
            continue;
        }
        std::size_t mate = n;
        double best = 1e300;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (used[j]) continue;
            const double dist = std::abs(roots[j] - std::conj(roots[i]));
            if (dist < best) {
                best = dist;
                mate = j;
            }
        }
        if (mate < n) {
            const double re = 0.5 * (roots[i].real() + roots[mate].real());
            const double im = 0.5 * (std::abs(roots[i].imag()) + std::abs(roots[mate].imag()));
            const bool i_upper = roots[i].imag() > 0.0;
            roots[i] = cd(re, i_upper ? im : -im);
            roots[mate] = cd(re, i_upper ? -im : im);
            used[i] = used[mate] = true;
        } else {
            used[i] = true;
        }
    }

    std::sort(roots.begin(), roots.end(), [](const cd& a, const cd& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

} // namespace qlab::core
