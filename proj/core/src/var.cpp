#include "quantset/var.hpp"

#include "quantset/error.hpp"
#include "quantset/special.hpp"

#include <algorithm>
#include <cmath>

namespace quantset {

namespace {

using linalg::Matrix;

std::vector<std::size_t> ordering_indices(const std::vector<std::string>& names,
                                          const std::vector<std::string>& ordering) {
    if (ordering.empty()) {
        std::vector<std::size_t> idx(names.size());
        for (std::size_t i = 0; i < names.size(); ++i) idx[i] = i;
        return idx;
    }
    if (ordering.size() != names.size())
        throw input_error("ordering must list every variable exactly once");
    std::vector<std::size_t> idx;
    idx.reserve(names.size());
    for (const std::string& name : ordering) {
        const auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) throw input_error("ordering names unknown variable '" + name + "'");
        idx.push_back(static_cast<std::size_t>(it - names.begin()));
    }
    std::vector<std::size_t> sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        if (sorted[i] != i) throw input_error("ordering must be a permutation of the variables");
    return idx;
}

// Moving-average matrices of the VAR in the given index ordering.
std::vector<Matrix> ma_matrices(const VarFit& fit, int horizon,
                                const std::vector<std::size_t>& ord) {
    const std::size_t k = fit.names.size();
    const std::size_t p = static_cast<std::size_t>(fit.lag_order);
    std::vector<Matrix> coef_perm(p, Matrix(k, k));
    for (std::size_t l = 0; l < p; ++l)
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) coef_perm[l](i, j) = fit.coef[l](ord[i], ord[j]);

    std::vector<Matrix> phi(static_cast<std::size_t>(horizon) + 1, Matrix(k, k));
    phi[0] = Matrix::identity(k);
    for (int h = 1; h <= horizon; ++h) {
        Matrix m(k, k);
        const int lmax = std::min<int>(h, fit.lag_order);
        for (int l = 1; l <= lmax; ++l) {
            const Matrix prod = linalg::multiply(coef_perm[static_cast<std::size_t>(l - 1)],
                                                 phi[static_cast<std::size_t>(h - l)]);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) m(i, j) += prod(i, j);
        }
        phi[static_cast<std::size_t>(h)] = m;
    }
    return phi;
}

}  // namespace

std::vector<std::string> MultiSeries::names() const {
    std::vector<std::string> out;
    out.reserve(components.size());
    for (const Series& s : components) out.push_back(s.name);
    return out;
}

const Series& MultiSeries::component(const std::string& name) const {
    for (const Series& s : components)
        if (s.name == name) return s;
    throw input_error("multiseries: no component named '" + name + "'");
}

void validate_multiseries(const MultiSeries& m) {
    if (m.k() < 2) throw input_error("multiseries: need at least two components");
    const std::size_t len = m.components.front().size();
    for (const Series& s : m.components) {
        validate_series(s);
        if (s.size() != len) throw input_error("multiseries: component lengths differ");
        if (!s.labels.empty() && !m.components.front().labels.empty() &&
            s.labels != m.components.front().labels)
            throw input_error("multiseries: component labels are not aligned");
    }
}

VarFit fit_var(const MultiSeries& m, int lag_order) {
    validate_multiseries(m);
    if (lag_order < 1) throw input_error("fit_var: lag order must be positive");
    const std::size_t k = m.k();
    const std::size_t n = m.length();
    const std::size_t p = static_cast<std::size_t>(lag_order);
    if (n <= k * p + 10) throw input_error("fit_var: series too short for the lag order");

    const std::size_t rows = n - p;
    const std::size_t ncoef = k * p + 1;
    Matrix x(rows, ncoef);
    for (std::size_t t = 0; t < rows; ++t) {
        x(t, 0) = 1.0;
        for (std::size_t l = 1; l <= p; ++l)
            for (std::size_t j = 0; j < k; ++j)
                x(t, 1 + (l - 1) * k + j) = m.components[j].values[p + t - l];
    }

    VarFit fit;
    fit.lag_order = lag_order;
    fit.names = m.names();
    fit.intercepts.resize(k);
    fit.coef.assign(p, Matrix(k, k));
    fit.residuals.resize(k);
    fit.n_effective = rows;

    for (std::size_t i = 0; i < k; ++i) {
        std::vector<double> y(rows);
        for (std::size_t t = 0; t < rows; ++t) y[t] = m.components[i].values[p + t];
        const linalg::LeastSquares ls = linalg::ols(x, y);
        fit.intercepts[i] = ls.coef[0];
        for (std::size_t l = 0; l < p; ++l)
            for (std::size_t j = 0; j < k; ++j) fit.coef[l](i, j) = ls.coef[1 + l * k + j];
        fit.residuals[i] = ls.residuals;
    }

    fit.resid_cov = Matrix(k, k);
    const double divisor = static_cast<double>(rows) - static_cast<double>(ncoef);
    if (divisor <= 0.0) throw input_error("fit_var: not enough observations for the covariance");
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j) {
            double s = 0.0;
            for (std::size_t t = 0; t < rows; ++t) s += fit.residuals[i][t] * fit.residuals[j][t];
            fit.resid_cov(i, j) = fit.resid_cov(j, i) = s / divisor;
        }

    fit.companion = Matrix(k * p, k * p);
    for (std::size_t l = 0; l < p; ++l)
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) fit.companion(i, l * k + j) = fit.coef[l](i, j);
    for (std::size_t i = k; i < k * p; ++i) fit.companion(i, i - k) = 1.0;

    fit.last_values.assign(p, std::vector<double>(k));
    for (std::size_t l = 0; l < p; ++l)
        for (std::size_t j = 0; j < k; ++j)
            fit.last_values[l][j] = m.components[j].values[n - p + l];
    return fit;
}

TestResult granger_test(const MultiSeries& m, const std::string& cause, const std::string& effect,
                        int lag_order) {
    validate_multiseries(m);
    if (lag_order < 1) throw input_error("granger_test: lag order must be positive");
    if (cause == effect) throw input_error("granger_test: cause and effect must differ");
    const Series& xc = m.component(cause);
    const Series& xe = m.component(effect);
    const std::size_t n = xe.size();
    const std::size_t p = static_cast<std::size_t>(lag_order);
    if (n <= 2 * p + 11) throw input_error("granger_test: series too short for the lag order");

    const std::size_t rows = n - p;
    std::vector<double> y(rows);
    Matrix x_r(rows, p + 1);          // own lags only
    Matrix x_u(rows, 2 * p + 1);      // plus the cause's lags
    for (std::size_t t = 0; t < rows; ++t) {
        y[t] = xe.values[p + t];
        x_r(t, 0) = 1.0;
        x_u(t, 0) = 1.0;
        for (std::size_t l = 1; l <= p; ++l) {
            x_r(t, l) = xe.values[p + t - l];
            x_u(t, l) = xe.values[p + t - l];
            x_u(t, p + l) = xc.values[p + t - l];
        }
    }
    const linalg::LeastSquares restricted = linalg::ols(x_r, y);
    const linalg::LeastSquares unrestricted = linalg::ols(x_u, y);

    const double df2 = static_cast<double>(rows) - static_cast<double>(2 * p + 1);
    const double f =
        ((restricted.rss - unrestricted.rss) / static_cast<double>(p)) / (unrestricted.rss / df2);

    TestResult t;
    t.name = "Granger: " + cause + " -> " + effect;
    t.lag = lag_order;
    t.statistic = f;
    t.dof = {static_cast<double>(p), df2};
    t.p_value = special::f_sf(std::max(f, 0.0), static_cast<double>(p), df2);
    return t;
}

std::vector<TestResult> granger_all_pairs(const MultiSeries& m, int lag_order) {
    validate_multiseries(m);
    std::vector<TestResult> out;
    for (std::size_t i = 0; i < m.k(); ++i)
        for (std::size_t j = 0; j < m.k(); ++j) {
            if (i == j) continue;
            out.push_back(
                granger_test(m, m.components[i].name, m.components[j].name, lag_order));
        }
    return out;
}

StabilityReport stability_roots(const VarFit& fit) {
    StabilityReport rep;
    rep.roots = linalg::eigenvalues(fit.companion);
    rep.moduli.reserve(rep.roots.size());
    for (const auto& r : rep.roots) rep.moduli.push_back(std::abs(r));
    std::sort(rep.moduli.begin(), rep.moduli.end(), std::greater<double>());
    rep.stable = rep.moduli.empty() || rep.moduli.front() < 1.0;
    return rep;
}

ImpulseResponse irf(const VarFit& fit, int horizon, const std::vector<std::string>& ordering) {
    if (horizon < 0) throw input_error("irf: horizon must be non-negative");
    const std::vector<std::size_t> ord = ordering_indices(fit.names, ordering);
    const std::size_t k = fit.names.size();

    Matrix sigma(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sigma(i, j) = fit.resid_cov(ord[i], ord[j]);
    const Matrix chol = linalg::cholesky(sigma);

    ImpulseResponse out;
    out.horizon = horizon;
    out.ordering.reserve(k);
    for (std::size_t i = 0; i < k; ++i) out.ordering.push_back(fit.names[ord[i]]);

    const std::vector<Matrix> phi = ma_matrices(fit, horizon, ord);
    out.responses.reserve(phi.size());
    for (const Matrix& p : phi) out.responses.push_back(linalg::multiply(p, chol));
    return out;
}

FevdTable fevd(const VarFit& fit, int horizon, const std::vector<std::string>& ordering) {
    if (horizon < 1) throw input_error("fevd: horizon must be positive");
    const ImpulseResponse impulse = irf(fit, horizon - 1, ordering);
    const std::size_t k = fit.names.size();

    FevdTable table;
    table.ordering = impulse.ordering;
    table.shares.assign(static_cast<std::size_t>(horizon),
                        std::vector<std::vector<double>>(k, std::vector<double>(k, 0.0)));
    table.forecast_std.assign(static_cast<std::size_t>(horizon), std::vector<double>(k, 0.0));

    std::vector<std::vector<double>> cum(k, std::vector<double>(k, 0.0));
    for (int s = 1; s <= horizon; ++s) {
        const Matrix& theta = impulse.responses[static_cast<std::size_t>(s - 1)];
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) cum[i][j] += theta(i, j) * theta(i, j);
        for (std::size_t i = 0; i < k; ++i) {
            double total = 0.0;
            for (std::size_t j = 0; j < k; ++j) total += cum[i][j];
            table.forecast_std[static_cast<std::size_t>(s - 1)][i] = std::sqrt(total);
            for (std::size_t j = 0; j < k; ++j)
                table.shares[static_cast<std::size_t>(s - 1)][i][j] = 100.0 * cum[i][j] / total;
        }
    }
    return table;
}

std::vector<std::vector<double>> var_forecast(const VarFit& fit, int horizon) {
    if (horizon < 1 || horizon > 500) throw input_error("var_forecast: horizon must lie in [1, 500]");
    const std::size_t k = fit.names.size();
    const std::size_t p = static_cast<std::size_t>(fit.lag_order);
    const std::size_t h = static_cast<std::size_t>(horizon);

    // history window, oldest first; extended by each new forecast
    std::vector<std::vector<double>> window = fit.last_values;
    std::vector<std::vector<double>> out(k, std::vector<double>(h));
    for (std::size_t step = 0; step < h; ++step) {
        std::vector<double> next(k);
        for (std::size_t i = 0; i < k; ++i) {
            double v = fit.intercepts[i];
            for (std::size_t l = 1; l <= p; ++l)
                for (std::size_t j = 0; j < k; ++j)
                    v += fit.coef[l - 1](i, j) * window[window.size() - l][j];
            next[i] = v;
        }
        for (std::size_t i = 0; i < k; ++i) out[i][step] = next[i];
        window.push_back(std::move(next));
    }
    return out;
}

}  // namespace quantset
