#include "quantset/arma.hpp"

#include "quantset/error.hpp"
#include "quantset/linalg.hpp"
#include "quantset/optim.hpp"
#include "quantset/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace quantset {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLog2Pi = 1.8378770664093454835606594728112;

struct FilterOutput {
    double neg_loglik_concentrated = kInf;  // -loglik with sigma2 profiled out
    double sigma2_hat = 0.0;
    double sum_log_f = 0.0;
    std::vector<double> innovations;  // v_t, in data units
};

// Kalman filter over the Harvey state space form of an ARMA(p, q) process with
// unit innovation variance. The stationary initial state covariance is solved
// from vec(P) = (I - T (x) T)^-1 vec(R R').
FilterOutput arma_filter(const std::vector<double>& w, const std::vector<double>& ar,
                         const std::vector<double>& ma, bool want_innovations) {
    FilterOutput out;
    const std::size_t n = w.size();
    const std::size_t p = ar.size();
    const std::size_t q = ma.size();
    const std::size_t m = std::max(p, q + 1);

    std::vector<double> phi(m, 0.0), r_vec(m, 0.0);
    for (std::size_t i = 0; i < p; ++i) phi[i] = ar[i];
    r_vec[0] = 1.0;
    for (std::size_t j = 0; j < q; ++j) r_vec[j + 1] = ma[j];

    // Stationary P via the Kronecker-product linear system.
    const std::size_t m2 = m * m;
    linalg::Matrix sys(m2, m2);
    std::vector<double> rhs(m2);
    // T(i, j) = phi[i] for j == 0, plus superdiagonal ones: T(i, i+1) = 1 for i < m-1.
    auto t_entry = [&](std::size_t i, std::size_t j) -> double {
        double v = (j == 0) ? phi[i] : 0.0;
        if (j == i + 1) v += 1.0;
        return v;
    };
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const std::size_t row = i * m + j;
            rhs[row] = r_vec[i] * r_vec[j];
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t l = 0; l < m; ++l) {
                    const double v = t_entry(i, k) * t_entry(j, l);
                    if (v != 0.0) sys(row, k * m + l) -= v;
                }
            sys(row, row) += 1.0;
        }
    std::vector<double> p_cov;
    try {
        p_cov = linalg::solve(sys, rhs);
    } catch (const input_error&) {
        return out;  // non-stationary parameters, likelihood undefined
    }

    std::vector<double> a(m, 0.0), a_next(m, 0.0);
    std::vector<double> mwork(m2, 0.0), p_next(m2, 0.0);
    if (want_innovations) out.innovations.resize(n);

    double sum_log_f = 0.0;
    double sum_v2_f = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const double f = p_cov[0];
        if (!(f > 1e-300) || !std::isfinite(f)) return out;
        const double v = w[t] - a[0];
        sum_log_f += std::log(f);
        sum_v2_f += v * v / f;
        if (want_innovations) out.innovations[t] = v;

        // M = T P  (exploiting the companion structure of T)
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                double s = phi[i] * p_cov[j];
                if (i + 1 < m) s += p_cov[(i + 1) * m + j];
                mwork[i * m + j] = s;
            }
        // P <- M T' + R R' - (M e0)(M e0)' / F
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                double s = phi[j] * mwork[i * m];
                if (j + 1 < m) s += mwork[i * m + j + 1];
                s += r_vec[i] * r_vec[j];
                s -= mwork[i * m] * mwork[j * m] / f;
                p_next[i * m + j] = s;
            }
        // a <- T a + (M e0) v / F
        for (std::size_t i = 0; i < m; ++i) {
            double s = phi[i] * a[0];
            if (i + 1 < m) s += a[i + 1];
            a_next[i] = s + mwork[i * m] * (v / f);
        }
        std::swap(a, a_next);
        std::swap(p_cov, p_next);
    }

    const double sigma2_hat = sum_v2_f / static_cast<double>(n);
    if (!(sigma2_hat > 1e-300)) return out;
    out.sigma2_hat = sigma2_hat;
    out.sum_log_f = sum_log_f;
    out.neg_loglik_concentrated =
        0.5 * static_cast<double>(n) * (kLog2Pi + 1.0 + std::log(sigma2_hat)) + 0.5 * sum_log_f;
    return out;
}

std::vector<double> tanh_all(const std::vector<double>& u) {
    std::vector<double> out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = std::tanh(u[i]);
    return out;
}

bool near_unit_boundary(const std::vector<double>& coef) {
    if (coef.empty()) return false;
    try {
        const std::vector<double> pac = coeffs_to_pacf(coef);
        for (double v : pac)
            if (std::fabs(v) > 1.0 - 1e-7) return true;
        return false;
    } catch (const input_error&) {
        return true;
    }
}

// Shared machinery between the transformed (unmasked) and natural (masked) searches.
struct ArmaProblem {
    const std::vector<double>* x = nullptr;
    ArmaSpec spec;
    std::vector<bool> free_ar, free_ma;
    int n_free_ar = 0, n_free_ma = 0;

    bool masked() const {
        return static_cast<int>(free_ar.size() ? std::count(free_ar.begin(), free_ar.end(), false)
                                               : 0) +
                   static_cast<int>(free_ma.size()
                                        ? std::count(free_ma.begin(), free_ma.end(), false)
                                        : 0) >
               0;
    }

    // Natural-space coefficient vectors from the free-parameter vector.
    void expand_natural(const std::vector<double>& v, std::vector<double>* ar,
                        std::vector<double>* ma, double* mu) const {
        ar->assign(static_cast<std::size_t>(spec.p), 0.0);
        ma->assign(static_cast<std::size_t>(spec.q), 0.0);
        std::size_t idx = 0;
        for (int i = 0; i < spec.p; ++i)
            if (free_ar[static_cast<std::size_t>(i)]) (*ar)[static_cast<std::size_t>(i)] = v[idx++];
        for (int j = 0; j < spec.q; ++j)
            if (free_ma[static_cast<std::size_t>(j)]) (*ma)[static_cast<std::size_t>(j)] = v[idx++];
        *mu = spec.include_mean ? v[idx] : 0.0;
    }
};

double negll_at_natural(const ArmaProblem& prob, const std::vector<double>& ar,
                        const std::vector<double>& ma, double mu) {
    if (!ar.empty() && near_unit_boundary(ar)) return kInf;
    if (!ma.empty()) {
        std::vector<double> neg_ma(ma.size());
        for (std::size_t i = 0; i < ma.size(); ++i) neg_ma[i] = -ma[i];
        if (near_unit_boundary(neg_ma)) return kInf;
    }
    std::vector<double> w(prob.x->size());
    for (std::size_t t = 0; t < w.size(); ++t) w[t] = (*prob.x)[t] - mu;
    return arma_filter(w, ar, ma, false).neg_loglik_concentrated;
}

}  // namespace

std::vector<double> pacf_to_coeffs(const std::vector<double>& pac) {
    const std::size_t p = pac.size();
    std::vector<double> coef(p, 0.0), prev(p, 0.0);
    for (std::size_t k = 0; k < p; ++k) {
        std::copy(coef.begin(), coef.begin() + static_cast<std::ptrdiff_t>(k), prev.begin());
        coef[k] = pac[k];
        for (std::size_t j = 0; j < k; ++j) coef[j] = prev[j] - pac[k] * prev[k - 1 - j];
    }
    return coef;
}

std::vector<double> coeffs_to_pacf(const std::vector<double>& coef) {
    std::vector<double> work = coef, pac(coef.size(), 0.0);
    for (std::size_t k = coef.size(); k-- > 0;) {
        const double last = work[k];
        if (std::fabs(last) >= 1.0) throw input_error("coeffs_to_pacf: polynomial not stationary");
        pac[k] = last;
        if (k == 0) break;
        std::vector<double> prev(k);
        const double denom = 1.0 - last * last;
        for (std::size_t j = 0; j < k; ++j) prev[j] = (work[j] + last * work[k - 1 - j]) / denom;
        std::copy(prev.begin(), prev.end(), work.begin());
    }
    return pac;
}

std::vector<double> psi_weights(const std::vector<double>& ar, const std::vector<double>& ma,
                                int count) {
    if (count < 1) throw input_error("psi_weights: count must be positive");
    std::vector<double> psi(static_cast<std::size_t>(count), 0.0);
    psi[0] = 1.0;
    for (int j = 1; j < count; ++j) {
        double v = (j <= static_cast<int>(ma.size())) ? ma[static_cast<std::size_t>(j - 1)] : 0.0;
        const int imax = std::min<int>(j, static_cast<int>(ar.size()));
        for (int i = 1; i <= imax; ++i)
            v += ar[static_cast<std::size_t>(i - 1)] * psi[static_cast<std::size_t>(j - i)];
        psi[static_cast<std::size_t>(j)] = v;
    }
    return psi;
}

double arma_loglik(const std::vector<double>& x, const std::vector<double>& ar,
                   const std::vector<double>& ma, double sigma2) {
    if (x.empty()) throw input_error("arma_loglik: empty sample");
    if (sigma2 <= 0.0) throw input_error("arma_loglik: sigma2 must be positive");
    const FilterOutput f = arma_filter(x, ar, ma, true);
    if (!std::isfinite(f.neg_loglik_concentrated)) return -kInf;
    const double n = static_cast<double>(x.size());
    double sum_v2_f = f.sigma2_hat * n;  // recovered from the concentrated pass
    return -0.5 * (n * (kLog2Pi + std::log(sigma2)) + f.sum_log_f + sum_v2_f / sigma2);
}

ArmaFit fit_arma(const Series& s, const ArmaSpec& spec, const ArmaFitOptions& opts) {
    validate_series(s);
    if (spec.p < 0 || spec.q < 0 || spec.p > 24 || spec.q > 24)
        throw input_error("fit_arma: orders must lie in [0, 24]");
    const std::size_t n = s.size();
    if (n <= static_cast<std::size_t>(10 * (spec.p + spec.q + 1)))
        throw input_error("fit_arma: series too short for the requested order");
    if (!opts.fix_zero_ar.empty() && opts.fix_zero_ar.size() != static_cast<std::size_t>(spec.p))
        throw input_error("fit_arma: fix_zero_ar mask size mismatch");
    if (!opts.fix_zero_ma.empty() && opts.fix_zero_ma.size() != static_cast<std::size_t>(spec.q))
        throw input_error("fit_arma: fix_zero_ma mask size mismatch");

    ArmaProblem prob;
    prob.x = &s.values;
    prob.spec = spec;
    prob.free_ar.assign(static_cast<std::size_t>(spec.p), true);
    prob.free_ma.assign(static_cast<std::size_t>(spec.q), true);
    for (std::size_t i = 0; i < opts.fix_zero_ar.size(); ++i)
        if (opts.fix_zero_ar[i]) prob.free_ar[i] = false;
    for (std::size_t j = 0; j < opts.fix_zero_ma.size(); ++j)
        if (opts.fix_zero_ma[j]) prob.free_ma[j] = false;
    prob.n_free_ar = static_cast<int>(std::count(prob.free_ar.begin(), prob.free_ar.end(), true));
    prob.n_free_ma = static_cast<int>(std::count(prob.free_ma.begin(), prob.free_ma.end(), true));

    const bool masked = prob.n_free_ar < spec.p || prob.n_free_ma < spec.q;
    const std::size_t dim = static_cast<std::size_t>(prob.n_free_ar + prob.n_free_ma +
                                                     (spec.include_mean ? 1 : 0));

    double sample_mean = 0.0;
    for (double v : s.values) sample_mean += v;
    sample_mean /= static_cast<double>(n);
    double sample_sd = 0.0;
    for (double v : s.values) sample_sd += (v - sample_mean) * (v - sample_mean);
    sample_sd = std::sqrt(sample_sd / static_cast<double>(n));

    // Unmasked search runs in the partial-autocorrelation transform space, which keeps
    // every iterate stationary and invertible. Masked search runs in natural space with
    // a hard barrier, since fixing single coefficients breaks the transform.
    optim::Objective objective;
    if (!masked) {
        objective = [&prob](const std::vector<double>& v) {
            const std::size_t p = static_cast<std::size_t>(prob.spec.p);
            const std::size_t q = static_cast<std::size_t>(prob.spec.q);
            std::vector<double> u_ar(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(p));
            std::vector<double> u_ma(v.begin() + static_cast<std::ptrdiff_t>(p),
                                     v.begin() + static_cast<std::ptrdiff_t>(p + q));
            const std::vector<double> ar = pacf_to_coeffs(tanh_all(u_ar));
            std::vector<double> ma = pacf_to_coeffs(tanh_all(u_ma));
            for (double& t : ma) t = -t;
            const double mu = prob.spec.include_mean ? v[p + q] : 0.0;
            std::vector<double> w(prob.x->size());
            for (std::size_t t = 0; t < w.size(); ++t) w[t] = (*prob.x)[t] - mu;
            return arma_filter(w, ar, ma, false).neg_loglik_concentrated;
        };
    } else {
        objective = [&prob](const std::vector<double>& v) {
            std::vector<double> ar, ma;
            double mu;
            prob.expand_natural(v, &ar, &ma, &mu);
            return negll_at_natural(prob, ar, ma, mu);
        };
    }

    std::vector<double> x0(dim, 0.0);
    if (spec.include_mean) x0[dim - 1] = sample_mean;

    Rng rng(opts.seed);
    optim::Options nm_opts;
    nm_opts.max_iter = 500 * static_cast<int>(std::max<std::size_t>(dim, 1));
    nm_opts.initial_step = 0.25;
    optim::Options bfgs_opts;
    bfgs_opts.max_iter = 500;
    bfgs_opts.tol_rel = 1e-13;

    std::vector<double> best_x;
    bool ok = false;
    for (int attempt = 0; attempt <= opts.max_restarts; ++attempt) {
        std::vector<double> start = x0;
        if (attempt > 0) {
            for (std::size_t i = 0; i + (spec.include_mean ? 1 : 0) < dim; ++i)
                start[i] += 0.5 * rng.normal();
            if (spec.include_mean) start[dim - 1] += 0.1 * sample_sd * rng.normal();
        }
        optim::Result r = optim::nelder_mead(objective, start, nm_opts);
        r = optim::bfgs(objective, r.x, bfgs_opts);
        if (!std::isfinite(r.fx) || !r.converged) continue;
        if (!masked) {
            // reject solutions pushed onto the unit-root boundary
            const std::size_t pq = static_cast<std::size_t>(spec.p + spec.q);
            bool boundary = false;
            for (std::size_t i = 0; i < pq; ++i)
                if (std::fabs(std::tanh(r.x[i])) > 1.0 - 1e-7) boundary = true;
            if (boundary) continue;
        }
        best_x = r.x;
        ok = true;
        break;
    }
    if (!ok)
        throw convergence_error("fit_arma: optimizer failed to converge for ARMA(" +
                                std::to_string(spec.p) + "," + std::to_string(spec.q) + ")");

    // Recover natural coefficients from the winning point.
    std::vector<double> ar, ma;
    double mu = 0.0;
    if (!masked) {
        const std::size_t p = static_cast<std::size_t>(spec.p);
        const std::size_t q = static_cast<std::size_t>(spec.q);
        std::vector<double> u_ar(best_x.begin(), best_x.begin() + static_cast<std::ptrdiff_t>(p));
        std::vector<double> u_ma(best_x.begin() + static_cast<std::ptrdiff_t>(p),
                                 best_x.begin() + static_cast<std::ptrdiff_t>(p + q));
        ar = pacf_to_coeffs(tanh_all(u_ar));
        ma = pacf_to_coeffs(tanh_all(u_ma));
        for (double& t : ma) t = -t;
        mu = spec.include_mean ? best_x[p + q] : 0.0;
    } else {
        prob.expand_natural(best_x, &ar, &ma, &mu);
    }

    std::vector<double> w(n);
    for (std::size_t t = 0; t < n; ++t) w[t] = s.values[t] - mu;
    const FilterOutput fo = arma_filter(w, ar, ma, true);
    if (!std::isfinite(fo.neg_loglik_concentrated))
        throw convergence_error("fit_arma: likelihood undefined at the optimum");

    ArmaFit fit;
    fit.spec = spec;
    fit.mean_c = mu;
    fit.ar = ar;
    fit.ma = ma;
    fit.sigma2 = fo.sigma2_hat;
    fit.log_lik = -fo.neg_loglik_concentrated;
    fit.n = n;
    fit.converged = true;
    fit.n_params = prob.n_free_ar + prob.n_free_ma + (spec.include_mean ? 1 : 0) + 1;
    fit.aic = -2.0 * fit.log_lik + 2.0 * fit.n_params;
    fit.bic = -2.0 * fit.log_lik + fit.n_params * std::log(static_cast<double>(n));
    fit.data = s.values;

    fit.residuals.values = fo.innovations;
    fit.residuals.labels = s.labels;
    fit.residuals.name = s.name + "_resid";
    fit.residuals.kind = SeriesKind::residual;

    // Standard errors: inverse numerical Hessian of the concentrated negative
    // log-likelihood with respect to the free natural coefficients.
    const std::size_t n_free = static_cast<std::size_t>(prob.n_free_ar + prob.n_free_ma +
                                                        (spec.include_mean ? 1 : 0));
    fit.std_errors.assign(static_cast<std::size_t>(spec.p + spec.q) + (spec.include_mean ? 1 : 0),
                          0.0);
    if (n_free > 0) {
        std::vector<double> natural;
        natural.reserve(n_free);
        for (int i = 0; i < spec.p; ++i)
            if (prob.free_ar[static_cast<std::size_t>(i)])
                natural.push_back(ar[static_cast<std::size_t>(i)]);
        for (int j = 0; j < spec.q; ++j)
            if (prob.free_ma[static_cast<std::size_t>(j)])
                natural.push_back(ma[static_cast<std::size_t>(j)]);
        if (spec.include_mean) natural.push_back(mu);

        const auto natural_obj = [&prob](const std::vector<double>& v) {
            std::vector<double> a, m;
            double c;
            prob.expand_natural(v, &a, &m, &c);
            return negll_at_natural(prob, a, m, c);
        };
        try {
            const linalg::Matrix hess = optim::numerical_hessian(natural_obj, natural);
            const linalg::Matrix cov = linalg::inverse(hess);
            std::size_t idx = 0;
            for (int i = 0; i < spec.p; ++i)
                if (prob.free_ar[static_cast<std::size_t>(i)]) {
                    const double v = cov(idx, idx);
                    fit.std_errors[static_cast<std::size_t>(i)] = v > 0.0 ? std::sqrt(v) : 0.0;
                    ++idx;
                }
            for (int j = 0; j < spec.q; ++j)
                if (prob.free_ma[static_cast<std::size_t>(j)]) {
                    const double v = cov(idx, idx);
                    fit.std_errors[static_cast<std::size_t>(spec.p + j)] =
                        v > 0.0 ? std::sqrt(v) : 0.0;
                    ++idx;
                }
            if (spec.include_mean) {
                const double v = cov(idx, idx);
                fit.std_errors.back() = v > 0.0 ? std::sqrt(v) : 0.0;
            }
        } catch (const input_error&) {
            // singular Hessian: leave the standard errors at zero
        }
    }
    return fit;
}

OrderSelection select_order(const Series& s, int p_max, int q_max, Criterion criterion,
                            const ArmaFitOptions& opts) {
    if (p_max < 0 || q_max < 0) throw input_error("select_order: negative grid bound");
    OrderSelection sel;
    sel.criterion = criterion;

    double best_score = kInf;
    int best_sum = 0, best_p = 0;
    bool found = false;
    for (int p = 0; p <= p_max; ++p) {
        for (int q = 0; q <= q_max; ++q) {
            OrderSelection::Cell cell;
            cell.p = p;
            cell.q = q;
            try {
                ArmaFitOptions cell_opts;
                cell_opts.seed = opts.seed;
                cell_opts.max_restarts = opts.max_restarts;
                const ArmaFit fit = fit_arma(s, ArmaSpec{p, q, true}, cell_opts);
                cell.score = (criterion == Criterion::aic) ? fit.aic : fit.bic;
                cell.converged = true;
            } catch (const convergence_error&) {
                cell.converged = false;
                cell.score = kInf;
            }
            sel.grid.push_back(cell);
            if (!cell.converged) continue;
            const bool better =
                cell.score < best_score ||
                (cell.score == best_score &&
                 (p + q < best_sum || (p + q == best_sum && p < best_p)));
            if (!found || better) {
                best_score = cell.score;
                best_sum = p + q;
                best_p = p;
                sel.best = ArmaSpec{p, q, true};
                found = true;
            }
        }
    }
    if (!found) throw convergence_error("select_order: every grid cell failed to converge");
    return sel;
}

ForecastPath forecast(const ArmaFit& fit, int horizon) {
    if (horizon < 1 || horizon > 500) throw input_error("forecast: horizon must lie in [1, 500]");
    if (!fit.converged) throw input_error("forecast: fit did not converge");

    const std::size_t n = fit.n;
    const std::size_t p = fit.ar.size();
    const std::size_t q = fit.ma.size();
    const std::size_t h = static_cast<std::size_t>(horizon);

    ForecastPath path;
    path.horizon = horizon;
    path.point.resize(h);
    path.std_err.resize(h);

    // Demeaned history extended by the forecasts themselves; future innovations zero.
    std::vector<double> dev(n + h, 0.0);
    for (std::size_t t = 0; t < n; ++t) dev[t] = fit.data[t] - fit.mean_c;
    for (std::size_t k = 0; k < h; ++k) {
        double v = 0.0;
        for (std::size_t i = 1; i <= p; ++i) v += fit.ar[i - 1] * dev[n + k - i];
        for (std::size_t j = 1; j <= q; ++j) {
            const std::ptrdiff_t idx = static_cast<std::ptrdiff_t>(n + k) -
                                       static_cast<std::ptrdiff_t>(j);
            if (idx < static_cast<std::ptrdiff_t>(n))
                v += fit.ma[j - 1] * fit.residuals.values[static_cast<std::size_t>(idx)];
        }
        dev[n + k] = v;
        path.point[k] = fit.mean_c + v;
    }

    path.psi = psi_weights(fit.ar, fit.ma, horizon);
    double cum = 0.0;
    for (std::size_t k = 0; k < h; ++k) {
        cum += path.psi[k] * path.psi[k];
        path.std_err[k] = std::sqrt(fit.sigma2 * cum);
    }
    return path;
}

}  // namespace quantset
