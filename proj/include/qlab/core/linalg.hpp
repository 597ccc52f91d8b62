#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qlab::core {

/// Small dense row-major matrix; sized for regression designs, not BLAS work.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Solves A x = b by Gaussian elimination with partial pivoting.
/// Returns false when A is numerically singular.
bool solve_linear(Matrix a, std::vector<double> b, std::vector<double>& x);

struct OlsFit {
    std::vector<double> coef;
    std::vector<double> std_err;
    std::vector<double> residuals;
    double rss = 0.0;
    std::size_t n_obs = 0;
    std::size_t n_params = 0;
};

/// Ordinary least squares via normal equations; throws SingularRegression
/// when the design is rank deficient.
OlsFit ols(const Matrix& x, std::span<const double> y);

/// All complex roots of c0 + c1 z + ... + cn z^n (cn != 0) by Durand-Kerner
/// iteration; real-coefficient inputs get exactly conjugate-paired output.
std::vector<std::complex<double>> polynomial_roots(std::span<const double> coeffs);

} // namespace qlab::core
