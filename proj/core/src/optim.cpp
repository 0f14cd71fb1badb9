#include "quantset/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace quantset::optim {

namespace {

double guard(double v) { return std::isnan(v) ? std::numeric_limits<double>::infinity() : v; }

}  // namespace

Result nelder_mead(const Objective& f, std::vector<double> x0, const Options& opts) {
    const std::size_t n = x0.size();
    Result out;
    if (n == 0) {
        out.x = std::move(x0);
        out.fx = guard(f(out.x));
        out.converged = true;
        out.evaluations = 1;
        return out;
    }

    std::vector<std::vector<double>> simplex(n + 1, x0);
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        double step = opts.initial_step;
        if (simplex[i + 1][i] != 0.0) step *= std::max(1.0, std::fabs(simplex[i + 1][i]));
        simplex[i + 1][i] += step;
    }
    int evals = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        fv[i] = guard(f(simplex[i]));
        ++evals;
    }

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), xr(n), xe(n), xc(n);
    int iter = 0;
    for (; iter < opts.max_iter; ++iter) {
        for (std::size_t i = 0; i <= n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t lo = order[0];
        const std::size_t hi = order[n];
        const std::size_t nh = order[n - 1];

        if (std::fabs(fv[hi] - fv[lo]) <= opts.tol_rel * (std::fabs(fv[lo]) + 1e-12)) break;

        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i <= n; ++i)
                if (i != hi) s += simplex[i][j];
            centroid[j] = s / static_cast<double>(n);
        }

        for (std::size_t j = 0; j < n; ++j) xr[j] = centroid[j] + (centroid[j] - simplex[hi][j]);
        const double fr = guard(f(xr));
        ++evals;
        if (fr < fv[lo]) {
            for (std::size_t j = 0; j < n; ++j) xe[j] = centroid[j] + 2.0 * (centroid[j] - simplex[hi][j]);
            const double fe = guard(f(xe));
            ++evals;
            if (fe < fr) {
                simplex[hi] = xe;
                fv[hi] = fe;
            } else {
                simplex[hi] = xr;
                fv[hi] = fr;
            }
        } else if (fr < fv[nh]) {
            simplex[hi] = xr;
            fv[hi] = fr;
        } else {
            const bool outside = fr < fv[hi];
            if (outside) {
                for (std::size_t j = 0; j < n; ++j) xc[j] = centroid[j] + 0.5 * (xr[j] - centroid[j]);
            } else {
                for (std::size_t j = 0; j < n; ++j) xc[j] = centroid[j] + 0.5 * (simplex[hi][j] - centroid[j]);
            }
            const double fc = guard(f(xc));
            ++evals;
            if (fc < std::min(fr, fv[hi])) {
                simplex[hi] = xc;
                fv[hi] = fc;
            } else {
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == lo) continue;
                    for (std::size_t j = 0; j < n; ++j)
                        simplex[i][j] = simplex[lo][j] + 0.5 * (simplex[i][j] - simplex[lo][j]);
                    fv[i] = guard(f(simplex[i]));
                    ++evals;
                }
            }
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (fv[i] < fv[best]) best = i;
    out.x = simplex[best];
    out.fx = fv[best];
    out.converged = iter < opts.max_iter;
    out.iterations = iter;
    out.evaluations = evals;
    return out;
}

std::vector<double> numerical_gradient(const Objective& f, const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<double> g(n), xp = x;
    const double root_eps = std::cbrt(std::numeric_limits<double>::epsilon());
    for (std::size_t i = 0; i < n; ++i) {
        const double h = root_eps * std::max(1.0, std::fabs(x[i]));
        xp[i] = x[i] + h;
        const double fp = guard(f(xp));
        xp[i] = x[i] - h;
        const double fm = guard(f(xp));
        xp[i] = x[i];
        g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
}

Result bfgs(const Objective& f, std::vector<double> x0, const Options& opts) {
    const std::size_t n = x0.size();
    Result out;
    out.x = std::move(x0);
    out.fx = guard(f(out.x));
    out.evaluations = 1;
    if (n == 0) {
        out.converged = true;
        return out;
    }

    linalg::Matrix h_inv = linalg::Matrix::identity(n);
    std::vector<double> g = numerical_gradient(f, out.x);
    out.evaluations += static_cast<int>(2 * n);

    std::vector<double> d(n), x_new(n), g_new(n), s(n), yv(n);
    for (int iter = 0; iter < opts.max_iter; ++iter) {
        out.iterations = iter + 1;
        for (std::size_t i = 0; i < n; ++i) {
            double v = 0.0;
            for (std::size_t j = 0; j < n; ++j) v += h_inv(i, j) * g[j];
            d[i] = -v;
        }
        double dg = 0.0;
        for (std::size_t i = 0; i < n; ++i) dg += d[i] * g[i];
        if (dg >= 0.0) {  // not a descent direction, reset to steepest descent
            h_inv = linalg::Matrix::identity(n);
            dg = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                d[i] = -g[i];
                dg -= g[i] * g[i];
            }
            if (dg == 0.0) {
                out.converged = true;
                break;
            }
        }

        double alpha = 1.0;
        double f_new = std::numeric_limits<double>::infinity();
        bool ls_ok = false;
        for (int ls = 0; ls < 40; ++ls) {
            for (std::size_t i = 0; i < n; ++i) x_new[i] = out.x[i] + alpha * d[i];
            f_new = guard(f(x_new));
            ++out.evaluations;
            if (f_new <= out.fx + 1e-4 * alpha * dg) {
                ls_ok = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!ls_ok) {
            out.converged = true;  // no further descent possible at this scale
            break;
        }

        const double f_prev = out.fx;
        g_new = numerical_gradient(f, x_new);
        out.evaluations += static_cast<int>(2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = x_new[i] - out.x[i];
            yv[i] = g_new[i] - g[i];
        }
        out.x = x_new;
        out.fx = f_new;
        g = g_new;

        if (std::fabs(f_prev - f_new) <= opts.tol_rel * (std::fabs(f_new) + 1e-12)) {
            out.converged = true;
            break;
        }

        double sy = 0.0, snorm = 0.0, ynorm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sy += s[i] * yv[i];
            snorm += s[i] * s[i];
            ynorm += yv[i] * yv[i];
        }
        if (sy > 1e-12 * std::sqrt(snorm * ynorm)) {
            // BFGS inverse update: H <- (I - r s y')H(I - r y s') + r s s'
            const double rho = 1.0 / sy;
            std::vector<double> hy(n, 0.0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) hy[i] += h_inv(i, j) * yv[j];
            double yhy = 0.0;
            for (std::size_t i = 0; i < n; ++i) yhy += yv[i] * hy[i];
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    h_inv(i, j) += rho * ((1.0 + rho * yhy) * s[i] * s[j] - hy[i] * s[j] - s[i] * hy[j]);
                }
        }
    }
    return out;
}

linalg::Matrix numerical_hessian(const Objective& f, const std::vector<double>& x) {
    const std::size_t n = x.size();
    linalg::Matrix h(n, n);
    std::vector<double> xp = x;
    std::vector<double> steps(n);
    const double quarter_eps = std::pow(std::numeric_limits<double>::epsilon(), 0.25);
    for (std::size_t i = 0; i < n; ++i) steps[i] = quarter_eps * std::max(1.0, std::fabs(x[i]));

    const double f0 = guard(f(x));
    for (std::size_t i = 0; i < n; ++i) {
        const double hi = steps[i];
        xp[i] = x[i] + hi;
        const double fp = guard(f(xp));
        xp[i] = x[i] - hi;
        const double fm = guard(f(xp));
        xp[i] = x[i];
        h(i, i) = (fp - 2.0 * f0 + fm) / (hi * hi);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double hi = steps[i];
            const double hj = steps[j];
            xp[i] = x[i] + hi;
            xp[j] = x[j] + hj;
            const double fpp = guard(f(xp));
            xp[j] = x[j] - hj;
            const double fpm = guard(f(xp));
            xp[i] = x[i] - hi;
            const double fmm = guard(f(xp));
            xp[j] = x[j] + hj;
            const double fmp = guard(f(xp));
            xp[i] = x[i];
            xp[j] = x[j];
            h(i, j) = h(j, i) = (fpp - fpm - fmp + fmm) / (4.0 * hi * hj);
        }
    }
    return h;
}

}  // namespace quantset::optim
