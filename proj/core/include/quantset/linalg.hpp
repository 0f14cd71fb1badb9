#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace quantset::linalg {

/// Dense row-major matrix of doubles. Small sizes only; everything here is O(n^3) textbook code.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::vector<double>& data() const { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix multiply(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
std::vector<double> matvec(const Matrix& a, const std::vector<double>& x);

/// Lower-triangular Cholesky factor of a symmetric positive definite matrix.
/// Throws input_error when the matrix is not positive definite.
Matrix cholesky(const Matrix& a);

/// Solve a x = b by LU decomposition with partial pivoting.
std::vector<double> solve(Matrix a, std::vector<double> b);

/// Matrix inverse via LU. Throws input_error on singular input.
Matrix inverse(const Matrix& a);

struct LeastSquares {
    std::vector<double> coef;
    std::vector<double> residuals;
    double rss = 0.0;
    std::size_t n = 0;
    std::size_t k = 0;
    Matrix xtx_inv;  // (X'X)^-1, for coefficient standard errors

    /// Error variance estimate rss / (n - k).
    double sigma2() const { return rss / static_cast<double>(n - k); }
};

/// Ordinary least squares via Householder QR. Throws input_error when the
/// regressor matrix is rank deficient.
LeastSquares ols(const Matrix& x, const std::vector<double>& y);

/// Eigenvalues of a general real square matrix: balancing, Hessenberg
/// reduction, then Francis double-shift QR iteration.
std::vector<std::complex<double>> eigenvalues(Matrix a);

}  // namespace quantset::linalg
