#pragma once

#include "quantset/series.hpp"

#include <map>
#include <string>
#include <vector>

namespace quantset {

/// Uniform record for every hypothesis test in the toolkit.
struct TestResult {
    std::string name;
    double statistic = 0.0;
    std::vector<double> dof;  // empty, one value (chi-square, t), or two (F)
    double p_value = 1.0;
    int lag = -1;  // -1 when not applicable
    std::map<std::string, double> detail;
};

/// Augmented Dickey-Fuller unit-root test with a constant and lag_p lagged
/// differences. The p-value is interpolated from the embedded Dickey-Fuller
/// table and clipped to [0.01, 0.99]; a clip is flagged in detail.
TestResult adf_test(const Series& s, int lag_p);

/// Ljung-Box portmanteau test up to `lag`, chi-square with lag - fitdf dof.
TestResult ljung_box(const Series& s, int lag, int fitdf = 0);

/// Box-Pierce portmanteau test, same null as ljung_box.
TestResult box_pierce(const Series& s, int lag, int fitdf = 0);

/// Jarque-Bera normality test from moment skewness and kurtosis.
TestResult jarque_bera(const Series& s);

/// Shapiro-Wilk W test, Royston's AS R94 approximation, 3 <= n <= 5000.
TestResult shapiro_wilk(const Series& s);

/// Engle's ARCH-LM test: n*R^2 from the regression of squared residuals on
/// their own lags.
TestResult arch_lm(const Series& residuals, int lag);

/// Extended autocorrelation function grid of Tsay and Tiao.
struct EacfTable {
    int p_max = 0;
    int q_max = 0;
    std::size_t sample_size = 0;
    std::vector<std::vector<double>> esacf;        // (p_max+1) x (q_max+1) correlations
    std::vector<std::vector<bool>> significant;    // |esacf| > 2/sqrt(n)

    char symbol(int j, int k) const {
        return significant[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] ? 'x' : 'o';
    }
};

EacfTable eacf(const Series& s, int p_max, int q_max);

/// Engle-Ng sign bias regression on standardized residuals. Three individual
/// t-tests plus the joint F-test.
struct SignBiasResult {
    TestResult sign_bias;
    TestResult negative_size;
    TestResult positive_size;
    TestResult joint;
};

SignBiasResult sign_bias(const Series& std_residuals);

/// Pearson chi-square goodness of fit against the standard normal, using
/// equiprobable bins. Observed and expected counts land in detail.
TestResult pearson_gof(const Series& std_residuals, int n_bins);

}  // namespace quantset
