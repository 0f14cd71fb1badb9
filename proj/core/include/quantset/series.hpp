#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace quantset {

enum class SeriesKind { price, log_return, residual, other };

/// A timestamped numeric sequence. Values are immutable by convention once built;
/// every operation in the library is a pure function of its inputs.
struct Series {
    std::vector<double> values;
    std::vector<std::string> labels;  // empty, or one date string per value, strictly increasing
    std::string name;
    SeriesKind kind = SeriesKind::other;

    std::size_t size() const { return values.size(); }
};

/// Throws input_error unless values are non-empty and finite and labels (when
/// present) match the length.
void validate_series(const Series& s);

struct SummaryStats {
    std::size_t n = 0;
    double mean = 0.0;
    double std_dev = 0.0;  // sample, divisor n-1
    double min = 0.0;
    double max = 0.0;
    double skewness = 0.0;         // g1 = m3 / m2^1.5
    double excess_kurtosis = 0.0;  // g2 = m4 / m2^2 - 3
};

struct CorrelogramRow {
    int lag = 0;
    double acf = 0.0;
    double pacf = 0.0;
    double conf_band = 0.0;  // +-1.96/sqrt(n)
};

/// value_t = ln(P_t / P_{t-1}); drops the first label. Requires positive prices.
Series log_returns(const Series& prices);

/// Moment statistics. Throws when n < 2 or when zero variance makes the
/// shape statistics undefined.
SummaryStats summary_stats(const Series& s);

/// Sample mean of the values (no length-2 requirement).
double series_mean(const Series& s);

/// Biased sample autocorrelations (divisor n, full-sample mean) for lags 1..max_lag.
std::vector<double> sample_acf(const std::vector<double>& x, int max_lag);

/// ACF plus PACF via the Durbin-Levinson recursion, with the +-1.96/sqrt(n) band.
std::vector<CorrelogramRow> correlogram(const Series& s, int max_lag);

}  // namespace quantset
