#include "quantset/stattests.hpp"

#include "quantset/error.hpp"
#include "quantset/linalg.hpp"
#include "quantset/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace quantset {

namespace {

using linalg::Matrix;

double interp_clamped(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (x <= xs[i]) {
            const double w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
            return ys[i - 1] + w * (ys[i] - ys[i - 1]);
        }
    }
    return ys.back();
}

double portmanteau_q(const std::vector<double>& x, int lag, bool ljung) {
    const std::vector<double> r = sample_acf(x, lag);
    const double n = static_cast<double>(x.size());
    double q = 0.0;
    for (int k = 1; k <= lag; ++k) {
        const double rk2 = r[static_cast<std::size_t>(k - 1)] * r[static_cast<std::size_t>(k - 1)];
        q += ljung ? rk2 / (n - k) : rk2;
    }
    return ljung ? n * (n + 2.0) * q : n * q;
}

TestResult portmanteau(const Series& s, int lag, int fitdf, bool ljung) {
    validate_series(s);
    const std::size_t n = s.size();
    if (lag <= fitdf) throw input_error("portmanteau test: lag must exceed fitdf");
    if (fitdf < 0) throw input_error("portmanteau test: fitdf must be non-negative");
    if (static_cast<std::size_t>(2 * lag) >= n)
        throw input_error("portmanteau test: lag must be below n/2");

    TestResult t;
    t.name = ljung ? "Ljung-Box" : "Box-Pierce";
    t.lag = lag;
    t.statistic = portmanteau_q(s.values, lag, ljung);
    t.dof = {static_cast<double>(lag - fitdf)};
    t.p_value = special::chi2_sf(t.statistic, t.dof[0]);
    if (fitdf > 0) t.detail["fitdf"] = fitdf;
    return t;
}

}  // namespace

TestResult adf_test(const Series& s, int lag_p) {
    validate_series(s);
    if (lag_p < 0) throw input_error("adf_test: lag must be non-negative");
    const std::size_t n = s.size();
    if (n <= static_cast<std::size_t>(lag_p) + 10)
        throw input_error("adf_test: series too short for the requested lag");

    const std::vector<double>& x = s.values;
    std::vector<double> dx(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) dx[i] = x[i + 1] - x[i];

    const std::size_t p = static_cast<std::size_t>(lag_p);
    const std::size_t rows = n - 1 - p;
    const std::size_t k = 2 + p;
    Matrix xm(rows, k);
    std::vector<double> y(rows);
    for (std::size_t m = 0; m < rows; ++m) {
        y[m] = dx[p + m];
        xm(m, 0) = 1.0;
        xm(m, 1) = x[p + m];  // level lagged one period behind dx[p+m]
        for (std::size_t i = 1; i <= p; ++i) xm(m, 1 + i) = dx[p + m - i];
    }

    const linalg::LeastSquares fit = linalg::ols(xm, y);
    const double se = std::sqrt(fit.sigma2() * fit.xtx_inv(1, 1));
    const double stat = fit.coef[1] / se;

    // Dickey-Fuller tau table for the constant, no-trend regression.
    static const std::vector<double> table_n = {25, 50, 100, 250, 500, 100000};
    static const std::vector<double> table_p = {0.01, 0.025, 0.05, 0.10, 0.90, 0.95, 0.975, 0.99};
    static const double table_cv[6][8] = {
        {-3.75, -3.33, -3.00, -2.62, -0.37, 0.00, 0.34, 0.72},
        {-3.58, -3.22, -2.93, -2.60, -0.40, -0.03, 0.29, 0.66},
        {-3.51, -3.17, -2.89, -2.58, -0.42, -0.05, 0.26, 0.63},
        {-3.46, -3.14, -2.88, -2.57, -0.42, -0.06, 0.24, 0.62},
        {-3.44, -3.13, -2.87, -2.57, -0.43, -0.07, 0.24, 0.61},
        {-3.43, -3.12, -2.86, -2.57, -0.44, -0.07, 0.23, 0.60}};

    std::vector<double> cv_at_n(8);
    for (std::size_t j = 0; j < 8; ++j) {
        std::vector<double> col(6);
        for (std::size_t i = 0; i < 6; ++i) col[i] = table_cv[i][j];
        cv_at_n[j] = interp_clamped(table_n, col, static_cast<double>(rows));
    }

    TestResult t;
    t.name = "ADF";
    t.lag = lag_p;
    t.statistic = stat;
    t.dof = {static_cast<double>(rows - k)};
    t.p_value = interp_clamped(cv_at_n, table_p, stat);
    t.detail["n_used"] = static_cast<double>(rows);
    t.detail["level_coef"] = fit.coef[1];
    if (stat <= cv_at_n.front() || stat >= cv_at_n.back()) t.detail["p_value_clipped"] = 1.0;
    return t;
}

TestResult ljung_box(const Series& s, int lag, int fitdf) { return portmanteau(s, lag, fitdf, true); }

TestResult box_pierce(const Series& s, int lag, int fitdf) { return portmanteau(s, lag, fitdf, false); }

TestResult jarque_bera(const Series& s) {
    validate_series(s);
    if (s.size() < 8) throw input_error("jarque_bera: need at least 8 observations");
    const SummaryStats st = summary_stats(s);  // throws on zero variance
    const double n = static_cast<double>(st.n);
    const double jb = n / 6.0 * (st.skewness * st.skewness +
                                 0.25 * st.excess_kurtosis * st.excess_kurtosis);
    TestResult t;
    t.name = "Jarque-Bera";
    t.statistic = jb;
    t.dof = {2.0};
    t.p_value = special::chi2_sf(jb, 2.0);
    t.detail["skewness"] = st.skewness;
    t.detail["excess_kurtosis"] = st.excess_kurtosis;
    return t;
}

TestResult shapiro_wilk(const Series& s) {
    validate_series(s);
    const std::size_t n = s.size();
    if (n < 3 || n > 5000) throw input_error("shapiro_wilk: n must lie in [3, 5000]");

    std::vector<double> x = s.values;
    std::sort(x.begin(), x.end());
    if (x.back() - x.front() <= 0.0) throw input_error("shapiro_wilk: zero-variance sample");

    const double an = static_cast<double>(n);
    std::vector<double> a(n, 0.0);
    if (n == 3) {
        a[0] = -std::sqrt(0.5);
        a[2] = std::sqrt(0.5);
    } else {
        // Blom scores and Royston's polynomial-corrected weights.
        std::vector<double> m(n);
        double summ2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            m[i] = special::norm_quantile((static_cast<double>(i + 1) - 0.375) / (an + 0.25));
            summ2 += m[i] * m[i];
        }
        const double rsn = 1.0 / std::sqrt(an);
        const double norm_m = std::sqrt(summ2);
        const double a_n = ((((-2.706056 * rsn + 4.434685) * rsn - 2.071190) * rsn - 0.147981) * rsn +
                            0.221157) * rsn + m[n - 1] / norm_m;
        if (n > 5) {
            const double a_n1 = ((((-3.582633 * rsn + 5.682633) * rsn - 1.752461) * rsn - 0.293762) *
                                 rsn + 0.042981) * rsn + m[n - 2] / norm_m;
            const double phi = (summ2 - 2.0 * m[n - 1] * m[n - 1] - 2.0 * m[n - 2] * m[n - 2]) /
                               (1.0 - 2.0 * a_n * a_n - 2.0 * a_n1 * a_n1);
            const double sphi = std::sqrt(phi);
            a[n - 1] = a_n;
            a[n - 2] = a_n1;
            a[0] = -a_n;
            a[1] = -a_n1;
            for (std::size_t i = 2; i < n - 2; ++i) a[i] = m[i] / sphi;
        } else {
            const double phi = (summ2 - 2.0 * m[n - 1] * m[n - 1]) / (1.0 - 2.0 * a_n * a_n);
            const double sphi = std::sqrt(phi);
            a[n - 1] = a_n;
            a[0] = -a_n;
            for (std::size_t i = 1; i < n - 1; ++i) a[i] = m[i] / sphi;
        }
    }

    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= an;
    double ssq = 0.0, num = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ssq += (x[i] - mean) * (x[i] - mean);
        num += a[i] * x[i];
    }
    const double w = num * num / ssq;

    double p;
    if (n == 3) {
        p = 1.90985931710274 * (std::asin(std::sqrt(w)) - 1.04719755119660);
        p = std::clamp(p, 0.0, 1.0);
    } else if (n <= 11) {
        const double g = -2.273 + 0.459 * an;
        const double mu = 0.5440 + an * (-0.39978 + an * (0.025054 - an * 6.714e-4));
        const double sig = std::exp(1.3822 + an * (-0.77857 + an * (0.062767 - an * 0.0020322)));
        const double z = (-std::log(g - std::log1p(-w)) - mu) / sig;
        p = special::norm_sf(z);
    } else {
        const double ln = std::log(an);
        const double mu = -1.5861 + ln * (-0.31082 + ln * (-0.083751 + ln * 0.0038915));
        const double sig = std::exp(-0.4803 + ln * (-0.082676 + ln * 0.0030302));
        const double z = (std::log1p(-w) - mu) / sig;
        p = special::norm_sf(z);
    }

    TestResult t;
    t.name = "Shapiro-Wilk";
    t.statistic = w;
    t.p_value = p;
    return t;
}

TestResult arch_lm(const Series& residuals, int lag) {
    validate_series(residuals);
    if (lag < 1) throw input_error("arch_lm: lag must be positive");
    const std::size_t n = residuals.size();
    if (n <= static_cast<std::size_t>(2 * lag)) throw input_error("arch_lm: series too short");

    std::vector<double> e2(n);
    for (std::size_t i = 0; i < n; ++i) e2[i] = residuals.values[i] * residuals.values[i];

    double mean_e2 = 0.0;
    const std::size_t l = static_cast<std::size_t>(lag);
    const std::size_t rows = n - l;
    for (std::size_t t = l; t < n; ++t) mean_e2 += e2[t];
    mean_e2 /= static_cast<double>(rows);
    double tss = 0.0;
    for (std::size_t t = l; t < n; ++t) tss += (e2[t] - mean_e2) * (e2[t] - mean_e2);
    if (tss <= 0.0) throw input_error("arch_lm: squared residuals are constant");

    Matrix xm(rows, l + 1);
    std::vector<double> y(rows);
    for (std::size_t m = 0; m < rows; ++m) {
        const std::size_t t = l + m;
        y[m] = e2[t];
        xm(m, 0) = 1.0;
        for (std::size_t j = 1; j <= l; ++j) xm(m, j) = e2[t - j];
    }
    const linalg::LeastSquares fit = linalg::ols(xm, y);
    const double r2 = 1.0 - fit.rss / tss;
    const double stat = static_cast<double>(rows) * r2;

    TestResult t;
    t.name = "ARCH-LM";
    t.lag = lag;
    t.statistic = stat;
    t.dof = {static_cast<double>(lag)};
    t.p_value = special::chi2_sf(stat, static_cast<double>(lag));
    t.detail["r_squared"] = r2;
    return t;
}

EacfTable eacf(const Series& s, int p_max, int q_max) {
    validate_series(s);
    if (p_max < 0 || q_max < 0) throw input_error("eacf: orders must be non-negative");
    const std::size_t n = s.size();
    if (n <= static_cast<std::size_t>(4 * (p_max + q_max)))
        throw input_error("eacf: series too short for requested grid");

    double mean = 0.0;
    for (double v : s.values) mean += v;
    mean /= static_cast<double>(n);
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = s.values[i] - mean;

    EacfTable table;
    table.p_max = p_max;
    table.q_max = q_max;
    table.sample_size = n;
    table.esacf.assign(static_cast<std::size_t>(p_max) + 1,
                       std::vector<double>(static_cast<std::size_t>(q_max) + 1, 0.0));
    table.significant.assign(static_cast<std::size_t>(p_max) + 1,
                             std::vector<bool>(static_cast<std::size_t>(q_max) + 1, false));

    const double threshold = 2.0 / std::sqrt(static_cast<double>(n));

    // Row 0 is the ordinary ACF shifted by one lag.
    {
        const std::vector<double> r = sample_acf(z, q_max + 1);
        for (int k = 0; k <= q_max; ++k) table.esacf[0][static_cast<std::size_t>(k)] = r[static_cast<std::size_t>(k)];
    }

    // Rows j >= 1: iterated AR(j) regressions. Each iteration k regresses z on its
    // own j lags plus the lag-h residuals of iteration k-h, then measures the
    // lag-(k+1) autocorrelation of the AR-filtered series.
    for (int j = 1; j <= p_max; ++j) {
        const std::size_t ju = static_cast<std::size_t>(j);
        std::vector<std::vector<double>> resid_hist;  // residuals of iterations 0..k-1
        std::vector<std::size_t> resid_start;         // first valid index of each

        for (int k = 0; k <= q_max; ++k) {
            const std::size_t ku = static_cast<std::size_t>(k);
            std::size_t t0 = ju;
            for (std::size_t h = 1; h <= ku; ++h)
                t0 = std::max(t0, resid_start[ku - h] + h);
            if (t0 >= n) throw input_error("eacf: series too short for requested grid");

            const std::size_t rows = n - t0;
            const std::size_t ncoef = ju + ku;
            if (rows <= ncoef) throw input_error("eacf: series too short for requested grid");
            Matrix xm(rows, ncoef);
            std::vector<double> y(rows);
            for (std::size_t m = 0; m < rows; ++m) {
                const std::size_t t = t0 + m;
                y[m] = z[t];
                for (std::size_t i = 1; i <= ju; ++i) xm(m, i - 1) = z[t - i];
                for (std::size_t h = 1; h <= ku; ++h)
                    xm(m, ju + h - 1) = resid_hist[ku - h][t - h - resid_start[ku - h]];
            }
            const linalg::LeastSquares fit = linalg::ols(xm, y);

            resid_hist.push_back(fit.residuals);
            resid_start.push_back(t0);

            // AR-filtered series over its full valid range.
            std::vector<double> w(n - ju);
            for (std::size_t t = ju; t < n; ++t) {
                double v = z[t];
                for (std::size_t i = 1; i <= ju; ++i) v -= fit.coef[i - 1] * z[t - i];
                w[t - ju] = v;
            }
            const std::vector<double> r = sample_acf(w, k + 1);
            table.esacf[ju][ku] = r[ku];
        }
    }

    for (int j = 0; j <= p_max; ++j)
        for (int k = 0; k <= q_max; ++k)
            table.significant[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
                std::fabs(table.esacf[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]) >
                threshold;
    return table;
}

SignBiasResult sign_bias(const Series& std_residuals) {
    validate_series(std_residuals);
    const std::size_t n = std_residuals.size();
    if (n < 50) throw input_error("sign_bias: need at least 50 observations");
    const std::vector<double>& z = std_residuals.values;

    const std::size_t rows = n - 1;
    Matrix xm(rows, 4);
    std::vector<double> y(rows);
    std::size_t n_neg = 0;
    for (std::size_t t = 1; t < n; ++t) {
        const double zl = z[t - 1];
        const bool neg = zl < 0.0;
        n_neg += neg ? 1 : 0;
        xm(t - 1, 0) = 1.0;
        xm(t - 1, 1) = neg ? 1.0 : 0.0;
        xm(t - 1, 2) = neg ? zl : 0.0;
        xm(t - 1, 3) = neg ? 0.0 : zl;
        y[t - 1] = z[t] * z[t];
    }
    if (n_neg == 0 || n_neg == rows)
        throw input_error("sign_bias: lagged residuals all of one sign, regressors degenerate");

    const linalg::LeastSquares fit = linalg::ols(xm, y);
    const double dof = static_cast<double>(rows - 4);
    const double s2 = fit.sigma2();

    auto t_test = [&](std::size_t idx, const std::string& name) {
        TestResult t;
        t.name = name;
        const double se = std::sqrt(s2 * fit.xtx_inv(idx, idx));
        t.statistic = fit.coef[idx] / se;
        t.dof = {dof};
        t.p_value = 2.0 * special::t_sf(std::fabs(t.statistic), dof);
        t.detail["coef"] = fit.coef[idx];
        return t;
    };

    SignBiasResult out;
    out.sign_bias = t_test(1, "Sign Bias");
    out.negative_size = t_test(2, "Negative Size Bias");
    out.positive_size = t_test(3, "Positive Size Bias");

    double mean_y = 0.0;
    for (double v : y) mean_y += v;
    mean_y /= static_cast<double>(rows);
    double tss = 0.0;
    for (double v : y) tss += (v - mean_y) * (v - mean_y);
    const double f = ((tss - fit.rss) / 3.0) / (fit.rss / dof);

    out.joint.name = "Joint Effect";
    out.joint.statistic = f;
    out.joint.dof = {3.0, dof};
    out.joint.p_value = special::f_sf(f, 3.0, dof);
    return out;
}

TestResult pearson_gof(const Series& std_residuals, int n_bins) {
    validate_series(std_residuals);
    if (n_bins < 4) throw input_error("pearson_gof: need at least 4 bins");
    const std::size_t n = std_residuals.size();
    if (n < static_cast<std::size_t>(5 * n_bins))
        throw input_error("pearson_gof: bins too fine for sample size");

    const std::size_t nb = static_cast<std::size_t>(n_bins);
    std::vector<double> edges(nb - 1);
    for (std::size_t i = 1; i < nb; ++i)
        edges[i - 1] = special::norm_quantile(static_cast<double>(i) / static_cast<double>(nb));

    std::vector<std::size_t> observed(nb, 0);
    for (double v : std_residuals.values) {
        const std::size_t bin = static_cast<std::size_t>(
            std::upper_bound(edges.begin(), edges.end(), v) - edges.begin());
        ++observed[bin];
    }

    const double expected = static_cast<double>(n) / static_cast<double>(nb);
    double chi2 = 0.0;
    for (std::size_t i = 0; i < nb; ++i) {
        const double d = static_cast<double>(observed[i]) - expected;
        chi2 += d * d / expected;
    }

    TestResult t;
    t.name = "Pearson goodness-of-fit";
    t.statistic = chi2;
    t.dof = {static_cast<double>(n_bins - 1)};
    t.p_value = special::chi2_sf(chi2, t.dof[0]);
    t.detail["expected_per_bin"] = expected;
    for (std::size_t i = 0; i < nb; ++i)
        t.detail["observed_" + std::to_string(i)] = static_cast<double>(observed[i]);
    return t;
}

}  // namespace quantset
