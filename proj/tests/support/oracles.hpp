#pragma once

// Independent numerical oracles used to verify the library implementations.
// Everything here is deliberately written from the raw definitions (direct
// summation, quadrature, Durand-Kerner roots, dense matrix densities) rather
// than reusing any library code path it is checking.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracles {

// ---------------------------------------------------------------------------
// Adaptive Simpson quadrature
// ---------------------------------------------------------------------------
inline double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                          double fb, double fm, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    const double child_tol = std::max(0.5 * tol, 1e-16);
    return simpson_rec(f, a, m, fa, fm, flm, left, child_tol, depth - 1) +
           simpson_rec(f, m, b, fm, fb, frm, right, child_tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fb, fm, whole, tol, 22);
}

// ---------------------------------------------------------------------------
// Standard normal density / CDF (independent of the library's erfc route:
// the CDF integrates the density numerically from zero)
// ---------------------------------------------------------------------------
inline double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * 3.14159265358979323846);
}

inline double normal_cdf_quadrature(double x) {
    if (x < 0.0) return 1.0 - normal_cdf_quadrature(-x);
    // mass beyond 9 sigma is ~1e-19, below every tolerance used here
    return 0.5 + integrate(normal_pdf, 0.0, std::min(x, 9.0), 1e-14);
}

/// Inverse normal CDF by bisection on the quadrature CDF.
inline double normal_quantile_bisect(double p) {
    double lo = -9.0, hi = 9.0;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (normal_cdf_quadrature(mid) < p)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Brute-force sample autocorrelation (biased estimator, direct double loop)
// ---------------------------------------------------------------------------
inline double acf_brute_force(const std::vector<double>& x, int lag) {
    const std::size_t n = x.size();
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    double num = 0.0, den = 0.0;
    for (std::size_t t = static_cast<std::size_t>(lag); t < n; ++t)
        num += (x[t] - mean) * (x[t - static_cast<std::size_t>(lag)] - mean);
    for (std::size_t t = 0; t < n; ++t) den += (x[t] - mean) * (x[t] - mean);
    return num / den;
}

// ---------------------------------------------------------------------------
// Durand-Kerner simultaneous root finding for real-coefficient polynomials
// c[0] + c[1] z + ... + c[d] z^d
// ---------------------------------------------------------------------------
inline std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeffs) {
    using cplx = std::complex<double>;
    std::size_t degree = coeffs.size() - 1;
    while (degree > 0 && coeffs[degree] == 0.0) --degree;
    if (degree == 0) return {};

    std::vector<cplx> c(degree + 1);
    for (std::size_t i = 0; i <= degree; ++i) c[i] = coeffs[i] / coeffs[degree];

    auto eval = [&](cplx z) {
        cplx v = c[degree];
        for (std::size_t i = degree; i-- > 0;) v = v * z + c[i];
        return v;
    };

    std::vector<cplx> roots(degree);
    for (std::size_t i = 0; i < degree; ++i)
        roots[i] = std::pow(cplx(0.4, 0.9), static_cast<double>(i + 1));

    for (int iter = 0; iter < 2000; ++iter) {
        double shift = 0.0;
        for (std::size_t i = 0; i < degree; ++i) {
            cplx denom(1.0, 0.0);
            for (std::size_t j = 0; j < degree; ++j)
                if (j != i) denom *= roots[i] - roots[j];
            const cplx delta = eval(roots[i]) / denom;
            roots[i] -= delta;
            shift = std::max(shift, std::abs(delta));
        }
        if (shift < 1e-14) break;
    }
    return roots;
}

// ---------------------------------------------------------------------------
// Dense multivariate-normal log-density of an ARMA sample: builds the full
// n x n autocovariance matrix from truncated psi-weight sums and evaluates
// -n/2 log 2pi - 1/2 log|G| - 1/2 x' G^-1 x via Cholesky.
// ---------------------------------------------------------------------------
inline double arma_loglik_dense(const std::vector<double>& x, const std::vector<double>& ar,
                                const std::vector<double>& ma, double sigma2) {
    const std::size_t n = x.size();
    const int truncation = 5000;
    std::vector<double> psi(truncation, 0.0);
    psi[0] = 1.0;
    for (int j = 1; j < truncation; ++j) {
        double v = (j <= static_cast<int>(ma.size())) ? ma[static_cast<std::size_t>(j - 1)] : 0.0;
        for (int i = 1; i <= std::min<int>(j, static_cast<int>(ar.size())); ++i)
            v += ar[static_cast<std::size_t>(i - 1)] * psi[static_cast<std::size_t>(j - i)];
        psi[static_cast<std::size_t>(j)] = v;
    }
    std::vector<double> gamma(n, 0.0);
    for (std::size_t h = 0; h < n; ++h) {
        double s = 0.0;
        for (int j = 0; j + static_cast<int>(h) < truncation; ++j)
            s += psi[static_cast<std::size_t>(j)] * psi[static_cast<std::size_t>(j) + h];
        gamma[h] = sigma2 * s;
    }

    // Cholesky of the Toeplitz covariance
    std::vector<std::vector<double>> l(n, std::vector<double>(n, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
        double d = gamma[0];
        for (std::size_t k = 0; k < j; ++k) d -= l[j][k] * l[j][k];
        if (d <= 0.0) throw std::runtime_error("oracle covariance not positive definite");
        l[j][j] = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = gamma[i - j];
            for (std::size_t k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
            l[i][j] = s / l[j][j];
        }
    }
    double log_det = 0.0;
    for (std::size_t j = 0; j < n; ++j) log_det += 2.0 * std::log(l[j][j]);

    // solve L y = x
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = x[i];
        for (std::size_t k = 0; k < i; ++k) s -= l[i][k] * y[k];
        y[i] = s / l[i][i];
    }
    double quad = 0.0;
    for (double v : y) quad += v * v;
    return -0.5 * (static_cast<double>(n) * std::log(2.0 * 3.14159265358979323846) + log_det + quad);
}

}  // namespace oracles
