#include "quantset/garch.hpp"

#include "quantset/error.hpp"
#include "quantset/optim.hpp"
#include "quantset/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace quantset {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLog2Pi = 1.8378770664093454835606594728112;
const double kAbsMoment = std::sqrt(2.0 / 3.14159265358979323846);  // E|z| for standard normal

double mean_square(const std::vector<double>& u) {
    double s = 0.0;
    for (double v : u) s += v * v;
    return s / static_cast<double>(u.size());
}

double gaussian_negll(const std::vector<double>& u, const std::vector<double>& h) {
    double nll = 0.0;
    for (std::size_t t = 0; t < u.size(); ++t) {
        if (!(h[t] > 0.0) || !std::isfinite(h[t])) return kInf;
        nll += 0.5 * (kLog2Pi + std::log(h[t]) + u[t] * u[t] / h[t]);
    }
    return nll;
}

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Transformed parameter vector for GARCH(p, q):
//   v[0]       log alpha0
//   v[1]       logit of persistence s in (0, 1)
//   v[2..]     softmax logits splitting s across the p+q coefficients (first logit fixed at 0)
struct GarchTransform {
    int q_arch;
    int p_garch;

    std::size_t dim() const {
        return 2 + static_cast<std::size_t>(std::max(0, q_arch + p_garch - 1));
    }

    void expand(const std::vector<double>& v, double* alpha0, std::vector<double>* alpha,
                std::vector<double>* beta) const {
        *alpha0 = std::exp(v[0]);
        const double s = logistic(v[1]);
        const int m = q_arch + p_garch;
        std::vector<double> w(static_cast<std::size_t>(m));
        if (m == 1) {
            w[0] = s;
        } else {
            double zmax = 0.0;
            for (int i = 1; i < m; ++i) zmax = std::max(zmax, v[static_cast<std::size_t>(1 + i)]);
            double denom = std::exp(-zmax);
            for (int i = 1; i < m; ++i)
                denom += std::exp(v[static_cast<std::size_t>(1 + i)] - zmax);
            w[0] = s * std::exp(-zmax) / denom;
            for (int i = 1; i < m; ++i)
                w[static_cast<std::size_t>(i)] =
                    s * std::exp(v[static_cast<std::size_t>(1 + i)] - zmax) / denom;
        }
        alpha->assign(w.begin(), w.begin() + q_arch);
        beta->assign(w.begin() + q_arch, w.end());
    }
};

// Hessian of f with explicit per-parameter steps; non-finite probes poison the entry.
linalg::Matrix hessian_with_steps(const optim::Objective& f, const std::vector<double>& x,
                                  const std::vector<double>& steps) {
    const std::size_t n = x.size();
    linalg::Matrix h(n, n);
    std::vector<double> xp = x;
    const double f0 = f(x);
    for (std::size_t i = 0; i < n; ++i) {
        xp[i] = x[i] + steps[i];
        const double fp = f(xp);
        xp[i] = x[i] - steps[i];
        const double fm = f(xp);
        xp[i] = x[i];
        h(i, i) = (fp - 2.0 * f0 + fm) / (steps[i] * steps[i]);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            xp[i] = x[i] + steps[i];
            xp[j] = x[j] + steps[j];
            const double fpp = f(xp);
            xp[j] = x[j] - steps[j];
            const double fpm = f(xp);
            xp[i] = x[i] - steps[i];
            const double fmm = f(xp);
            xp[j] = x[j] + steps[j];
            const double fmp = f(xp);
            xp[i] = x[i];
            xp[j] = x[j];
            h(i, j) = h(j, i) = (fpp - fpm - fmp + fmm) / (4.0 * steps[i] * steps[j]);
        }
    return h;
}

std::vector<double> std_errors_from_hessian(const optim::Objective& f,
                                            const std::vector<double>& x,
                                            const std::vector<double>& steps) {
    std::vector<double> se(x.size(), 0.0);
    try {
        const linalg::Matrix hess = hessian_with_steps(f, x, steps);
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = 0; j < x.size(); ++j)
                if (!std::isfinite(hess(i, j))) return se;
        const linalg::Matrix cov = linalg::inverse(hess);
        for (std::size_t i = 0; i < x.size(); ++i)
            se[i] = cov(i, i) > 0.0 ? std::sqrt(cov(i, i)) : 0.0;
    } catch (const input_error&) {
        // singular Hessian: standard errors stay at zero
    }
    return se;
}

Series make_std_residuals(const Series& input, const std::vector<double>& u,
                          const std::vector<double>& h) {
    Series z;
    z.name = input.name + "_std";
    z.kind = SeriesKind::residual;
    z.labels = input.labels;
    z.values.resize(u.size());
    for (std::size_t t = 0; t < u.size(); ++t) z.values[t] = u[t] / std::sqrt(h[t]);
    return z;
}

DiagnosticsReport run_diagnostics(const Series& z, int variance_params) {
    DiagnosticsReport rep;
    rep.tests.push_back(jarque_bera(z));
    for (int lag : {6, 12, 18}) rep.tests.push_back(ljung_box(z, lag, 0));

    Series z2;
    z2.name = z.name + "_sq";
    z2.kind = SeriesKind::other;
    z2.labels = z.labels;
    z2.values.resize(z.size());
    for (std::size_t t = 0; t < z.size(); ++t) z2.values[t] = z.values[t] * z.values[t];
    for (int lag : {6, 12, 18}) {
        TestResult t = ljung_box(z2, lag, variance_params);
        t.name = "Ljung-Box z^2";
        rep.tests.push_back(t);
    }

    rep.tests.push_back(arch_lm(z, 12));
    const SignBiasResult sb = sign_bias(z);
    rep.tests.push_back(sb.sign_bias);
    rep.tests.push_back(sb.negative_size);
    rep.tests.push_back(sb.positive_size);
    rep.tests.push_back(sb.joint);
    rep.tests.push_back(pearson_gof(z, 20));
    return rep;
}

}  // namespace

std::vector<double> garch_cond_var(const std::vector<double>& u, double alpha0,
                                   const std::vector<double>& alpha,
                                   const std::vector<double>& beta) {
    const std::size_t n = u.size();
    const std::size_t q = alpha.size();
    const std::size_t p = beta.size();
    const double presample = mean_square(u);
    std::vector<double> h(n);
    for (std::size_t t = 0; t < n; ++t) {
        double v = alpha0;
        for (std::size_t i = 1; i <= q; ++i) {
            const double u2 = (t >= i) ? u[t - i] * u[t - i] : presample;
            v += alpha[i - 1] * u2;
        }
        for (std::size_t j = 1; j <= p; ++j) {
            const double hh = (t >= j) ? h[t - j] : presample;
            v += beta[j - 1] * hh;
        }
        h[t] = v;
    }
    return h;
}

std::vector<double> egarch_cond_var(const std::vector<double>& u, double omega, double beta,
                                    double alpha, double gamma) {
    const std::size_t n = u.size();
    std::vector<double> h(n);
    double lnh = std::log(mean_square(u));
    h[0] = std::exp(lnh);
    for (std::size_t t = 1; t < n; ++t) {
        const double z = u[t - 1] / std::sqrt(h[t - 1]);
        lnh = omega + beta * std::log(h[t - 1]) + alpha * (std::fabs(z) - kAbsMoment) + gamma * z;
        if (!std::isfinite(lnh) || lnh > 700.0) lnh = 700.0;  // keep exp finite
        h[t] = std::exp(lnh);
    }
    return h;
}

GarchFit fit_garch(const Series& residuals, int q_arch, int p_garch,
                   const GarchFitOptions& opts) {
    validate_series(residuals);
    if (q_arch < 1) throw input_error("fit_garch: need at least one ARCH term");
    if (p_garch < 0) throw input_error("fit_garch: negative GARCH order");
    const std::size_t n = residuals.size();
    if (n < 250) throw input_error("fit_garch: need at least 250 observations");

    const std::vector<double>& u = residuals.values;
    const double s2 = mean_square(u);
    if (!(s2 > 0.0)) throw input_error("fit_garch: zero-variance residuals");

    const GarchTransform tf{q_arch, p_garch};
    const auto objective = [&](const std::vector<double>& v) {
        double alpha0;
        std::vector<double> alpha, beta;
        tf.expand(v, &alpha0, &alpha, &beta);
        if (!std::isfinite(alpha0) || alpha0 <= 0.0) return kInf;
        return gaussian_negll(u, garch_cond_var(u, alpha0, alpha, beta));
    };

    // Start from the usual volatility-targeting guess: persistence 0.9 split
    // 0.1 on the ARCH side and 0.8 on the GARCH side.
    std::vector<double> x0(tf.dim(), 0.0);
    x0[0] = std::log(s2 * 0.1);
    x0[1] = std::log(0.9 / 0.1);
    {
        const int m = q_arch + p_garch;
        std::vector<double> targets(static_cast<std::size_t>(m));
        for (int i = 0; i < q_arch; ++i)
            targets[static_cast<std::size_t>(i)] =
                (p_garch > 0 ? 0.1 : 0.9) / static_cast<double>(q_arch);
        for (int j = 0; j < p_garch; ++j)
            targets[static_cast<std::size_t>(q_arch + j)] = 0.8 / static_cast<double>(p_garch);
        const double base = std::log(targets[0]);
        for (int i = 1; i < m; ++i)
            x0[static_cast<std::size_t>(1 + i)] = std::log(targets[static_cast<std::size_t>(i)]) - base;
    }

    Rng rng(opts.seed);
    optim::Options nm_opts;
    nm_opts.max_iter = 500 * static_cast<int>(tf.dim());
    nm_opts.initial_step = 0.25;
    optim::Options bfgs_opts;
    bfgs_opts.max_iter = 500;
    bfgs_opts.tol_rel = 1e-13;

    std::vector<double> best;
    bool ok = false;
    for (int attempt = 0; attempt <= opts.max_restarts; ++attempt) {
        std::vector<double> start = x0;
        if (attempt > 0)
            for (double& v : start) v += 0.5 * rng.normal();
        optim::Result r = optim::nelder_mead(objective, start, nm_opts);
        r = optim::bfgs(objective, r.x, bfgs_opts);
        if (std::isfinite(r.fx) && r.converged) {
            best = r.x;
            ok = true;
            break;
        }
    }
    if (!ok) throw convergence_error("fit_garch: optimizer failed to converge");

    GarchFit fit;
    fit.q_arch = q_arch;
    fit.p_garch = p_garch;
    tf.expand(best, &fit.alpha0, &fit.alpha, &fit.beta);
    fit.cond_var = garch_cond_var(u, fit.alpha0, fit.alpha, fit.beta);
    fit.log_lik = -gaussian_negll(u, fit.cond_var);
    fit.persistence = 0.0;
    for (double a : fit.alpha) fit.persistence += a;
    for (double b : fit.beta) fit.persistence += b;
    fit.boundary_warning = fit.persistence > 0.999;
    fit.converged = true;
    fit.n = n;
    fit.residual_data = u;
    fit.std_residuals = make_std_residuals(residuals, u, fit.cond_var);

    // Standard errors from the Hessian in natural parameter space.
    const auto natural_obj = [&](const std::vector<double>& v) {
        const double alpha0 = v[0];
        if (alpha0 <= 0.0) return kInf;
        std::vector<double> alpha(v.begin() + 1, v.begin() + 1 + q_arch);
        std::vector<double> beta(v.begin() + 1 + q_arch, v.end());
        return gaussian_negll(u, garch_cond_var(u, alpha0, alpha, beta));
    };
    std::vector<double> natural;
    natural.push_back(fit.alpha0);
    natural.insert(natural.end(), fit.alpha.begin(), fit.alpha.end());
    natural.insert(natural.end(), fit.beta.begin(), fit.beta.end());
    std::vector<double> steps(natural.size());
    steps[0] = std::max(1e-3 * fit.alpha0, 1e-8 * s2);
    for (std::size_t i = 1; i < natural.size(); ++i)
        steps[i] = std::max(1e-3 * std::fabs(natural[i]), 1e-5);
    fit.std_errors = std_errors_from_hessian(natural_obj, natural, steps);
    return fit;
}

EgarchFit fit_egarch(const Series& residuals, const GarchFitOptions& opts) {
    validate_series(residuals);
    const std::size_t n = residuals.size();
    if (n < 250) throw input_error("fit_egarch: need at least 250 observations");
    const std::vector<double>& u = residuals.values;
    const double s2 = mean_square(u);
    if (!(s2 > 0.0)) throw input_error("fit_egarch: zero-variance residuals");

    // Search parameters: omega, atanh(beta), alpha, gamma.
    const auto objective = [&](const std::vector<double>& v) {
        const double beta = std::tanh(v[1]);
        return gaussian_negll(u, egarch_cond_var(u, v[0], beta, v[2], v[3]));
    };

    std::vector<double> x0 = {0.1 * std::log(s2), std::atanh(0.9), 0.1, -0.05};

    Rng rng(opts.seed);
    optim::Options nm_opts;
    nm_opts.max_iter = 2000;
    nm_opts.initial_step = 0.25;
    optim::Options bfgs_opts;
    bfgs_opts.max_iter = 500;
    bfgs_opts.tol_rel = 1e-13;

    std::vector<double> best;
    bool ok = false;
    for (int attempt = 0; attempt <= opts.max_restarts; ++attempt) {
        std::vector<double> start = x0;
        if (attempt > 0)
            for (double& v : start) v += 0.5 * rng.normal();
        optim::Result r = optim::nelder_mead(objective, start, nm_opts);
        r = optim::bfgs(objective, r.x, bfgs_opts);
        if (std::isfinite(r.fx) && r.converged) {
            best = r.x;
            ok = true;
            break;
        }
    }
    if (!ok) throw convergence_error("fit_egarch: optimizer failed to converge");

    EgarchFit fit;
    fit.omega = best[0];
    fit.beta_lnh = std::tanh(best[1]);
    fit.alpha_mag = best[2];
    fit.gamma_sign = best[3];
    fit.cond_var = egarch_cond_var(u, fit.omega, fit.beta_lnh, fit.alpha_mag, fit.gamma_sign);
    fit.log_lik = -gaussian_negll(u, fit.cond_var);
    fit.boundary_warning = std::fabs(fit.beta_lnh) > 0.999;
    fit.converged = true;
    fit.n = n;
    fit.residual_data = u;
    fit.std_residuals = make_std_residuals(residuals, u, fit.cond_var);

    const auto natural_obj = [&](const std::vector<double>& v) {
        if (std::fabs(v[1]) >= 1.0) return kInf;
        return gaussian_negll(u, egarch_cond_var(u, v[0], v[1], v[2], v[3]));
    };
    std::vector<double> natural = {fit.omega, fit.beta_lnh, fit.alpha_mag, fit.gamma_sign};
    std::vector<double> steps(4);
    for (std::size_t i = 0; i < 4; ++i) steps[i] = std::max(1e-3 * std::fabs(natural[i]), 1e-5);
    fit.std_errors = std_errors_from_hessian(natural_obj, natural, steps);
    return fit;
}

VolForecast forecast_variance(const GarchFit& fit, int horizon) {
    if (horizon < 1 || horizon > 500)
        throw input_error("forecast_variance: horizon must lie in [1, 500]");
    const std::size_t n = fit.n;
    const std::size_t q = fit.alpha.size();
    const std::size_t p = fit.beta.size();
    const std::size_t h = static_cast<std::size_t>(horizon);

    // Squared shocks and variances indexed past the sample; future squared
    // shocks are replaced by their conditional expectation (the forecast).
    std::vector<double> u2(n + h), hv(n + h);
    for (std::size_t t = 0; t < n; ++t) {
        u2[t] = fit.residual_data[t] * fit.residual_data[t];
        hv[t] = fit.cond_var[t];
    }
    VolForecast out;
    out.horizon = horizon;
    out.sigma2.resize(h);
    out.sigma.resize(h);
    for (std::size_t k = 0; k < h; ++k) {
        const std::size_t t = n + k;
        double v = fit.alpha0;
        for (std::size_t i = 1; i <= q; ++i) v += fit.alpha[i - 1] * u2[t - i];
        for (std::size_t j = 1; j <= p; ++j) v += fit.beta[j - 1] * hv[t - j];
        hv[t] = v;
        u2[t] = v;  // E[u^2] = sigma^2 for future periods
        out.sigma2[k] = v;
        out.sigma[k] = std::sqrt(v);
    }
    return out;
}

VolForecast forecast_variance(const EgarchFit& fit, int horizon,
                              const EgarchForecastOptions& opts) {
    if (horizon < 1 || horizon > 500)
        throw input_error("forecast_variance: horizon must lie in [1, 500]");
    if (opts.paths < 1) throw input_error("forecast_variance: need at least one path");
    const std::size_t n = fit.n;
    const std::size_t h = static_cast<std::size_t>(horizon);

    VolForecast out;
    out.horizon = horizon;
    out.sigma2.assign(h, 0.0);
    out.sigma.assign(h, 0.0);

    const double h_last = fit.cond_var[n - 1];
    const double z_last = fit.residual_data[n - 1] / std::sqrt(h_last);
    const double lnh1 = fit.omega + fit.beta_lnh * std::log(h_last) +
                        fit.alpha_mag * (std::fabs(z_last) - kAbsMoment) +
                        fit.gamma_sign * z_last;
    out.sigma2[0] = std::exp(lnh1);

    if (h > 1) {
        for (int path = 0; path < opts.paths; ++path) {
            Rng rng(Rng::derive(opts.seed, static_cast<std::uint64_t>(path)));
            double lnh = lnh1;
            for (std::size_t k = 1; k < h; ++k) {
                const double z = rng.normal();
                lnh = fit.omega + fit.beta_lnh * lnh +
                      fit.alpha_mag * (std::fabs(z) - kAbsMoment) + fit.gamma_sign * z;
                out.sigma2[k] += std::exp(lnh);
            }
        }
        for (std::size_t k = 1; k < h; ++k) out.sigma2[k] /= static_cast<double>(opts.paths);
    }
    for (std::size_t k = 0; k < h; ++k) out.sigma[k] = std::sqrt(out.sigma2[k]);
    return out;
}

DiagnosticsReport garch_diagnostics(const GarchFit& fit) {
    if (!fit.converged) throw input_error("garch_diagnostics: fit did not converge");
    return run_diagnostics(fit.std_residuals, fit.q_arch + fit.p_garch);
}

DiagnosticsReport garch_diagnostics(const EgarchFit& fit) {
    if (!fit.converged) throw input_error("garch_diagnostics: fit did not converge");
    return run_diagnostics(fit.std_residuals, 3);
}

}  // namespace quantset
