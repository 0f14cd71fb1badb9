#include "quantset/series.hpp"

#include "quantset/error.hpp"

#include <algorithm>
#include <cmath>

namespace quantset {

void validate_series(const Series& s) {
    if (s.values.empty()) throw input_error("series '" + s.name + "' is empty");
    for (double v : s.values) {
        if (!std::isfinite(v)) throw input_error("series '" + s.name + "' contains a non-finite value");
    }
    if (!s.labels.empty() && s.labels.size() != s.values.size())
        throw input_error("series '" + s.name + "' has mismatched label count");
}

Series log_returns(const Series& prices) {
    validate_series(prices);
    if (prices.kind != SeriesKind::price) throw input_error("log_returns: input must be a price series");
    if (prices.size() < 2) throw input_error("log_returns: need at least two prices");
    Series out;
    out.name = prices.name + "_logret";
    out.kind = SeriesKind::log_return;
    out.values.reserve(prices.size() - 1);
    for (std::size_t t = 1; t < prices.size(); ++t) {
        if (prices.values[t] <= 0.0 || prices.values[t - 1] <= 0.0)
            throw input_error("log_returns: non-positive price");
        out.values.push_back(std::log(prices.values[t] / prices.values[t - 1]));
    }
    if (!prices.labels.empty())
        out.labels.assign(prices.labels.begin() + 1, prices.labels.end());
    return out;
}

double series_mean(const Series& s) {
    validate_series(s);
    double total = 0.0;
    for (double v : s.values) total += v;
    return total / static_cast<double>(s.size());
}

SummaryStats summary_stats(const Series& s) {
    validate_series(s);
    const std::size_t n = s.size();
    if (n < 2) throw input_error("summary_stats: need at least two observations");

    SummaryStats st;
    st.n = n;
    st.mean = series_mean(s);
    st.min = *std::min_element(s.values.begin(), s.values.end());
    st.max = *std::max_element(s.values.begin(), s.values.end());

    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : s.values) {
        const double d = v - st.mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    const double dn = static_cast<double>(n);
    st.std_dev = std::sqrt(m2 / (dn - 1.0));
    m2 /= dn;
    m3 /= dn;
    m4 /= dn;
    if (m2 <= 0.0) throw input_error("summary_stats: zero variance, skewness/kurtosis undefined");
    st.skewness = m3 / std::pow(m2, 1.5);
    st.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    return st;
}

std::vector<double> sample_acf(const std::vector<double>& x, int max_lag) {
    const std::size_t n = x.size();
    if (max_lag < 1 || static_cast<std::size_t>(max_lag) >= n)
        throw input_error("sample_acf: max_lag out of range");
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);

    double c0 = 0.0;
    for (double v : x) c0 += (v - mean) * (v - mean);
    if (c0 <= 0.0) throw input_error("sample_acf: zero-variance series");

    std::vector<double> r(static_cast<std::size_t>(max_lag));
    for (int k = 1; k <= max_lag; ++k) {
        double ck = 0.0;
        for (std::size_t t = static_cast<std::size_t>(k); t < n; ++t)
            ck += (x[t] - mean) * (x[t - static_cast<std::size_t>(k)] - mean);
        r[static_cast<std::size_t>(k - 1)] = ck / c0;
    }
    return r;
}

std::vector<CorrelogramRow> correlogram(const Series& s, int max_lag) {
    validate_series(s);
    const std::size_t n = s.size();
    if (max_lag < 1 || static_cast<std::size_t>(2 * max_lag) >= n)
        throw input_error("correlogram: max_lag must satisfy max_lag < n/2");

    const std::vector<double> acf = sample_acf(s.values, max_lag);

    // Durbin-Levinson: pacf at lag k is the last coefficient of the order-k recursion.
    std::vector<double> pacf(acf.size());
    std::vector<double> phi(acf.size()), prev(acf.size());
    pacf[0] = acf[0];
    phi[0] = acf[0];
    for (int k = 2; k <= max_lag; ++k) {
        std::copy(phi.begin(), phi.begin() + (k - 1), prev.begin());
        double num = acf[static_cast<std::size_t>(k - 1)];
        double den = 1.0;
        for (int j = 1; j < k; ++j) {
            num -= prev[static_cast<std::size_t>(j - 1)] * acf[static_cast<std::size_t>(k - 1 - j)];
            den -= prev[static_cast<std::size_t>(j - 1)] * acf[static_cast<std::size_t>(j - 1)];
        }
        const double last = (den != 0.0) ? num / den : 0.0;
        pacf[static_cast<std::size_t>(k - 1)] = last;
        for (int j = 1; j < k; ++j)
            phi[static_cast<std::size_t>(j - 1)] =
                prev[static_cast<std::size_t>(j - 1)] - last * prev[static_cast<std::size_t>(k - 1 - j)];
        phi[static_cast<std::size_t>(k - 1)] = last;
    }

    const double band = 1.96 / std::sqrt(static_cast<double>(n));
    std::vector<CorrelogramRow> rows(acf.size());
    for (std::size_t i = 0; i < acf.size(); ++i) {
        rows[i].lag = static_cast<int>(i) + 1;
        rows[i].acf = acf[i];
        rows[i].pacf = pacf[i];
        rows[i].conf_band = band;
    }
    return rows;
}

}  // namespace quantset
