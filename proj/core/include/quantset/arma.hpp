#pragma once

#include "quantset/series.hpp"

#include <cstdint>
#include <vector>

namespace quantset {

struct ArmaSpec {
    int p = 0;
    int q = 0;
    bool include_mean = true;
};

struct ArmaFit {
    ArmaSpec spec;
    double mean_c = 0.0;
    std::vector<double> ar;          // phi_1..phi_p
    std::vector<double> ma;          // theta_1..theta_q
    double sigma2 = 0.0;             // innovation variance
    std::vector<double> std_errors;  // ordered ar..., ma..., mean
    double log_lik = 0.0;
    double aic = 0.0;
    double bic = 0.0;
    Series residuals;  // one-step prediction errors from the innovations recursion
    std::size_t n = 0;
    bool converged = false;
    int n_params = 0;          // k in the information criteria (free coefficients + sigma2)
    std::vector<double> data;  // the fitted sample, kept for forecasting
};

struct ArmaFitOptions {
    std::uint64_t seed = 42;
    int max_restarts = 3;
    // Optional fixed-to-zero masks (size p / q); masked coefficients are held at zero
    // and excluded from the parameter count.
    std::vector<bool> fix_zero_ar;
    std::vector<bool> fix_zero_ma;
};

/// Exact Gaussian maximum likelihood via the state-space innovations recursion.
/// Throws convergence_error after bounded jittered restarts.
ArmaFit fit_arma(const Series& s, const ArmaSpec& spec, const ArmaFitOptions& opts = {});

enum class Criterion { aic, bic };

struct OrderSelection {
    struct Cell {
        int p = 0;
        int q = 0;
        double score = 0.0;
        bool converged = false;
    };
    ArmaSpec best;
    std::vector<Cell> grid;
    Criterion criterion = Criterion::aic;
};

/// Fit every spec on the (p, q) grid and pick the criterion minimizer.
/// Ties break toward smaller p+q, then smaller p.
OrderSelection select_order(const Series& s, int p_max, int q_max, Criterion criterion,
                            const ArmaFitOptions& opts = {});

struct ForecastPath {
    int horizon = 0;
    std::vector<double> point;
    std::vector<double> std_err;
    std::vector<double> psi;  // psi_0..psi_{h-1} of the MA(inf) representation
};

/// Multi-step forecasts from the ARMA recursion with future innovations zeroed;
/// standard errors from the psi weights.
ForecastPath forecast(const ArmaFit& fit, int horizon);

inline const Series& residuals(const ArmaFit& fit) { return fit.residuals; }

/// Durbin-Levinson map from partial autocorrelations in (-1,1) to AR coefficients
/// of a stationary polynomial, and its inverse. The inverse throws input_error
/// when the polynomial is not stationary.
std::vector<double> pacf_to_coeffs(const std::vector<double>& pac);
std::vector<double> coeffs_to_pacf(const std::vector<double>& coef);

/// psi weights of the MA(inf) representation, psi_0 = 1.
std::vector<double> psi_weights(const std::vector<double>& ar, const std::vector<double>& ma,
                                int count);

/// Exact Gaussian log-likelihood of a zero-mean ARMA sample at the given
/// parameters, evaluated by the innovations recursion.
double arma_loglik(const std::vector<double>& x, const std::vector<double>& ar,
                   const std::vector<double>& ma, double sigma2);

}  // namespace quantset
