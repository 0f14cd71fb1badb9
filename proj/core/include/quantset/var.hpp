#pragma once

#include "quantset/linalg.hpp"
#include "quantset/series.hpp"
#include "quantset/stattests.hpp"

#include <complex>
#include <string>
#include <vector>

namespace quantset {

/// k aligned component series of equal length, k >= 2.
struct MultiSeries {
    std::vector<Series> components;

    std::size_t k() const { return components.size(); }
    std::size_t length() const { return components.empty() ? 0 : components.front().size(); }
    std::vector<std::string> names() const;
    const Series& component(const std::string& name) const;
};

void validate_multiseries(const MultiSeries& m);

struct VarFit {
    int lag_order = 1;
    std::vector<std::string> names;
    std::vector<double> intercepts;        // k entries
    std::vector<linalg::Matrix> coef;      // p matrices, each k x k; coef[l](i, j) multiplies x_j(t-l-1) in equation i
    linalg::Matrix resid_cov;              // k x k
    linalg::Matrix companion;              // (k p) x (k p)
    std::size_t n_effective = 0;
    std::vector<std::vector<double>> residuals;  // per equation
    std::vector<std::vector<double>> last_values;  // most recent p observations, oldest first
};

/// Equation-by-equation OLS with intercepts. Residual covariance uses the
/// divisor n_effective - (k p + 1).
VarFit fit_var(const MultiSeries& m, int lag_order);

/// Granger causality F-test between a pair of components.
TestResult granger_test(const MultiSeries& m, const std::string& cause,
                        const std::string& effect, int lag_order);

/// All ordered pairs, in component order.
std::vector<TestResult> granger_all_pairs(const MultiSeries& m, int lag_order);

struct StabilityReport {
    std::vector<std::complex<double>> roots;  // companion eigenvalues
    std::vector<double> moduli;               // sorted descending
    bool stable = false;                      // all moduli < 1
};

StabilityReport stability_roots(const VarFit& fit);

struct ImpulseResponse {
    int horizon = 0;
    std::vector<std::string> ordering;          // variable order used for the Cholesky factor
    std::vector<linalg::Matrix> responses;      // horizon+1 matrices, indexed in ordering space
};

/// Orthogonalized impulse responses, Cholesky identification in the given
/// ordering (defaults to input component order when empty).
ImpulseResponse irf(const VarFit& fit, int horizon, const std::vector<std::string>& ordering = {});

struct FevdTable {
    std::vector<std::string> ordering;
    // shares[h][i][j]: percent of variable i's h+1-step forecast error variance due to shock j
    std::vector<std::vector<std::vector<double>>> shares;
    std::vector<std::vector<double>> forecast_std;  // [h][i]
};

FevdTable fevd(const VarFit& fit, int horizon, const std::vector<std::string>& ordering = {});

/// Iterated deterministic forecasts; one path per component, in fit.names order.
std::vector<std::vector<double>> var_forecast(const VarFit& fit, int horizon);

}  // namespace quantset
