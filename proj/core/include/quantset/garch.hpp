#pragma once

#include "quantset/series.hpp"
#include "quantset/stattests.hpp"

#include <cstdint>
#include <vector>

namespace quantset {

struct GarchFit {
    int q_arch = 1;   // ARCH order (alpha terms)
    int p_garch = 1;  // GARCH order (beta terms)
    double alpha0 = 0.0;
    std::vector<double> alpha;
    std::vector<double> beta;
    std::vector<double> std_errors;  // ordered alpha0, alpha..., beta...
    double log_lik = 0.0;
    std::vector<double> cond_var;  // sigma_t^2 path
    Series std_residuals;
    double persistence = 0.0;  // sum(alpha) + sum(beta)
    bool converged = false;
    bool boundary_warning = false;  // persistence pinned against 1
    std::size_t n = 0;
    std::vector<double> residual_data;  // input residuals, kept for forecasting

    double unconditional_variance() const { return alpha0 / (1.0 - persistence); }
};

struct EgarchFit {
    double omega = 0.0;
    double beta_lnh = 0.0;    // coefficient on ln h_{t-1}
    double alpha_mag = 0.0;   // coefficient on |z| - E|z|
    double gamma_sign = 0.0;  // coefficient on z
    std::vector<double> std_errors;  // ordered omega, beta, alpha, gamma
    double log_lik = 0.0;
    std::vector<double> cond_var;
    Series std_residuals;
    bool converged = false;
    bool boundary_warning = false;  // |beta| pinned against 1
    std::size_t n = 0;
    std::vector<double> residual_data;
};

struct GarchFitOptions {
    std::uint64_t seed = 42;
    int max_restarts = 3;
};

/// Gaussian MLE of GARCH(p, q) on mean-free residuals. Positivity and
/// covariance stationarity are enforced by construction during the search.
GarchFit fit_garch(const Series& residuals, int q_arch = 1, int p_garch = 1,
                   const GarchFitOptions& opts = {});

/// Gaussian MLE of eGARCH(1,1):
/// ln h_t = omega + beta ln h_{t-1} + alpha (|z_{t-1}| - sqrt(2/pi)) + gamma z_{t-1}.
EgarchFit fit_egarch(const Series& residuals, const GarchFitOptions& opts = {});

struct VolForecast {
    int horizon = 0;
    std::vector<double> sigma2;
    std::vector<double> sigma;
};

/// Closed-recursion variance forecasts.
VolForecast forecast_variance(const GarchFit& fit, int horizon);

struct EgarchForecastOptions {
    int paths = 10000;
    std::uint64_t seed = 42;
};

/// Monte Carlo variance forecasts; the one-step value is exact, later steps
/// average simulated log-variance paths with deterministic per-path seeds.
VolForecast forecast_variance(const EgarchFit& fit, int horizon,
                              const EgarchForecastOptions& opts = {});

inline const Series& standardized_residuals(const GarchFit& fit) { return fit.std_residuals; }
inline const Series& standardized_residuals(const EgarchFit& fit) { return fit.std_residuals; }

struct DiagnosticsReport {
    std::vector<TestResult> tests;
};

/// The volatility-model diagnostic battery: normality, portmanteau tests on z
/// and z^2, ARCH-LM, sign bias, Pearson goodness of fit.
DiagnosticsReport garch_diagnostics(const GarchFit& fit);
DiagnosticsReport garch_diagnostics(const EgarchFit& fit);

/// Variance recursions at explicit parameters. Pre-sample squared residuals and
/// variances are set to the sample mean square of u.
std::vector<double> garch_cond_var(const std::vector<double>& u, double alpha0,
                                   const std::vector<double>& alpha,
                                   const std::vector<double>& beta);
std::vector<double> egarch_cond_var(const std::vector<double>& u, double omega, double beta,
                                    double alpha, double gamma);

}  // namespace quantset
