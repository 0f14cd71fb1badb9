#include "quantset/series.hpp"

#include "quantset/error.hpp"
#include "quantset/rng.hpp"
#include "support/oracles.hpp"
#include "support/simulate.hpp"

#include <doctest.h>

#include <cmath>

using namespace quantset;

TEST_CASE("log returns of hand-checked prices") {
    Series p = sim::make_series({100.0, 100.0, 100.0}, SeriesKind::price, "flat");
    Series r = log_returns(p);
    REQUIRE(r.size() == 2);
    CHECK(r.values[0] == 0.0);
    CHECK(r.values[1] == 0.0);
    CHECK(r.kind == SeriesKind::log_return);

    Series pe = sim::make_series({1.0, std::exp(1.0)}, SeriesKind::price, "e");
    CHECK(log_returns(pe).values[0] == doctest::Approx(1.0).epsilon(1e-15));

    Series px = sim::make_series({100.0, 105.0, 99.0}, SeriesKind::price, "px");
    const Series rx = log_returns(px);
    CHECK(rx.values[0] == doctest::Approx(std::log(1.05)).epsilon(1e-12));
    CHECK(rx.values[1] == doctest::Approx(std::log(99.0 / 105.0)).epsilon(1e-12));
}

TEST_CASE("log returns errors") {
    Series bad = sim::make_series({100.0, -1.0}, SeriesKind::price);
    CHECK_THROWS_AS(log_returns(bad), input_error);
    Series one = sim::make_series({100.0}, SeriesKind::price);
    CHECK_THROWS_AS(log_returns(one), input_error);
    Series notprice = sim::make_series({1.0, 2.0}, SeriesKind::log_return);
    CHECK_THROWS_AS(log_returns(notprice), input_error);
}

TEST_CASE("labels shift with the first date dropped") {
    Series p = sim::make_series({10.0, 11.0, 12.0}, SeriesKind::price);
    p.labels = {"2020-01-01", "2020-01-02", "2020-01-03"};
    const Series r = log_returns(p);
    REQUIRE(r.labels.size() == 2);
    CHECK(r.labels[0] == "2020-01-02");
}

TEST_CASE("price path reconstructs from cumulated log returns") {
    Rng rng(11);
    std::vector<double> prices(400);
    double level = 50.0;
    for (double& v : prices) {
        level *= std::exp(rng.normal(0.0005, 0.01));
        v = level;
    }
    Series p = sim::make_series(prices, SeriesKind::price);
    const Series r = log_returns(p);
    double back = prices[0];
    for (std::size_t t = 0; t < r.size(); ++t) {
        back *= std::exp(r.values[t]);
        CHECK(std::fabs(back - prices[t + 1]) / prices[t + 1] < 1e-9);
    }
}

TEST_CASE("summary statistics on tiny closed-form samples") {
    Series two = sim::make_series({0.0, 2.0});
    const SummaryStats st = summary_stats(two);
    CHECK(st.mean == doctest::Approx(1.0));
    CHECK(st.std_dev == doctest::Approx(std::sqrt(2.0)));
    CHECK(st.min == 0.0);
    CHECK(st.max == 2.0);

    Series flat = sim::make_series({1.0, 1.0, 1.0, 1.0});
    CHECK_THROWS_AS(summary_stats(flat), input_error);  // shape statistics undefined
    Series single = sim::make_series({1.0});
    CHECK_THROWS_AS(summary_stats(single), input_error);
}

TEST_CASE("summary statistics behave under affine maps") {
    Rng rng(5);
    Series s = sim::make_series(sim::iid_normal(rng, 500, 0.3, 2.0));
    const SummaryStats base = summary_stats(s);

    const double a = -1.7, b = 0.9;
    Series t = s;
    for (double& v : t.values) v = a * v + b;
    const SummaryStats mapped = summary_stats(t);
    CHECK(mapped.mean == doctest::Approx(a * base.mean + b).epsilon(1e-10));
    CHECK(mapped.std_dev == doctest::Approx(std::fabs(a) * base.std_dev).epsilon(1e-10));
    CHECK(mapped.skewness == doctest::Approx(-base.skewness).epsilon(1e-10));
    CHECK(mapped.excess_kurtosis == doctest::Approx(base.excess_kurtosis).epsilon(1e-10));
}

TEST_CASE("correlogram matches the brute-force estimator to 1e-12") {
    std::vector<double> alternating(100);
    for (std::size_t i = 0; i < alternating.size(); ++i) alternating[i] = (i % 2 == 0) ? 1.0 : -1.0;
    Series s = sim::make_series(alternating);
    const auto rows = correlogram(s, 10);
    for (const auto& row : rows)
        CHECK(std::fabs(row.acf - oracles::acf_brute_force(alternating, row.lag)) < 1e-12);

    Rng rng(21);
    Series noise = sim::make_series(sim::iid_normal(rng, 300));
    for (const auto& row : correlogram(noise, 25))
        CHECK(std::fabs(row.acf - oracles::acf_brute_force(noise.values, row.lag)) < 1e-12);
}

TEST_CASE("pacf at lag one equals acf at lag one") {
    Rng rng(3);
    Series s = sim::make_series(sim::arma(rng, 800, {0.5}, {}, 1.0));
    const auto rows = correlogram(s, 12);
    CHECK(rows[0].pacf == rows[0].acf);
}

TEST_CASE("AR(1) autocorrelation decays geometrically") {
    Rng rng(42);
    Series s = sim::make_series(sim::arma(rng, 5000, {0.8}, {}, 1.0));
    const auto rows = correlogram(s, 8);
    for (int k = 1; k <= 5; ++k)
        CHECK(std::fabs(rows[static_cast<std::size_t>(k - 1)].acf - std::pow(0.8, k)) < 0.05);
}

TEST_CASE("white-noise correlogram stays inside the confidence band") {
    Rng rng(7);
    Series s = sim::make_series(sim::iid_normal(rng, 1000));
    const auto rows = correlogram(s, 20);
    int inside = 0;
    for (const auto& row : rows)
        if (std::fabs(row.acf) < row.conf_band) ++inside;
    CHECK(inside >= 18);
    CHECK(rows[0].conf_band == doctest::Approx(1.96 / std::sqrt(1000.0)));
}

TEST_CASE("correlogram rejects bad inputs") {
    Series s = sim::make_series({1.0, 2.0, 3.0, 4.0, 5.0, 6.0});
    CHECK_THROWS_AS(correlogram(s, 3), input_error);  // max_lag >= n/2
    Series flat = sim::make_series(std::vector<double>(50, 2.0));
    CHECK_THROWS_AS(correlogram(flat, 5), input_error);
}
