#include "quantset/garch.hpp"

#include "quantset/error.hpp"
#include "quantset/rng.hpp"
#include "quantset/stattests.hpp"
#include "support/simulate.hpp"

#include <doctest.h>

#include <cmath>

using namespace quantset;

TEST_CASE("garch(1,1) recovers simulated parameters") {
    int hits = 0;
    for (int seed = 0; seed < 10; ++seed) {
        Rng rng(Rng::derive(5000, static_cast<std::uint64_t>(seed)));
        Series s = sim::make_series(sim::garch(rng, 5000, 1e-6, 0.10, 0.85), SeriesKind::residual);
        const GarchFit fit = fit_garch(s, 1, 1);
        if (std::fabs(fit.alpha0 - 1e-6) < 5e-7 && std::fabs(fit.alpha[0] - 0.10) < 0.05 &&
            std::fabs(fit.beta[0] - 0.85) < 0.05)
            ++hits;
        CHECK(fit.converged);
    }
    CHECK(hits >= 9);
}

TEST_CASE("garch on iid input finds no ARCH and matches the sample variance") {
    int hits = 0;
    for (int seed = 0; seed < 10; ++seed) {
        Rng rng(Rng::derive(5100, static_cast<std::uint64_t>(seed)));
        Series s = sim::make_series(sim::iid_normal(rng, 3000, 0.0, 0.01), SeriesKind::residual);
        const GarchFit fit = fit_garch(s, 1, 1);
        double sample_var = 0.0;
        for (double v : s.values) sample_var += v * v;
        sample_var /= static_cast<double>(s.size());
        const bool ok = fit.alpha[0] < 0.05 &&
                        std::fabs(fit.unconditional_variance() - sample_var) / sample_var < 0.10;
        if (ok) ++hits;
    }
    CHECK(hits >= 9);
}

TEST_CASE("garch coefficient constraints hold on every fit") {
    for (int seed = 0; seed < 5; ++seed) {
        Rng rng(Rng::derive(5200, static_cast<std::uint64_t>(seed)));
        Series s = sim::make_series(sim::garch(rng, 1500, 1e-6, 0.15, 0.80), SeriesKind::residual);
        const GarchFit fit = fit_garch(s, 1, 1);
        CHECK(fit.alpha0 > 0.0);
        for (double a : fit.alpha) CHECK(a >= 0.0);
        for (double b : fit.beta) CHECK(b >= 0.0);
        CHECK(fit.persistence < 1.0);
        for (double h : fit.cond_var) CHECK(h > 0.0);
    }
}

TEST_CASE("replaying the recursion reproduces the stored variance path") {
    Rng rng(5301);
    Series s = sim::make_series(sim::garch(rng, 2000, 1e-6, 0.12, 0.82), SeriesKind::residual);
    const GarchFit fit = fit_garch(s, 1, 1);
    const std::vector<double> replay = garch_cond_var(s.values, fit.alpha0, fit.alpha, fit.beta);
    REQUIRE(replay.size() == fit.cond_var.size());
    for (std::size_t t = 0; t < replay.size(); ++t)
        CHECK(std::fabs(replay[t] - fit.cond_var[t]) < 1e-12 * std::max(1.0, fit.cond_var[t]));

    const EgarchFit ef = fit_egarch(s);
    const std::vector<double> replay2 =
        egarch_cond_var(s.values, ef.omega, ef.beta_lnh, ef.alpha_mag, ef.gamma_sign);
    for (std::size_t t = 0; t < replay2.size(); ++t)
        CHECK(std::fabs(replay2[t] - ef.cond_var[t]) < 1e-12 * std::max(1.0, ef.cond_var[t]));
}

TEST_CASE("optimum beats random admissible parameter points") {
    Rng rng(5401);
    Series s = sim::make_series(sim::garch(rng, 1500, 1e-6, 0.10, 0.85), SeriesKind::residual);
    const GarchFit fit = fit_garch(s, 1, 1);

    const auto negll = [&](double a0, double a1, double b1) {
        const std::vector<double> h = garch_cond_var(s.values, a0, {a1}, {b1});
        double nll = 0.0;
        for (std::size_t t = 0; t < h.size(); ++t)
            nll += 0.5 * (std::log(2.0 * 3.14159265358979323846) + std::log(h[t]) +
                          s.values[t] * s.values[t] / h[t]);
        return nll;
    };
    Rng probe(5402);
    double s2 = 0.0;
    for (double v : s.values) s2 += v * v;
    s2 /= static_cast<double>(s.size());
    for (int i = 0; i < 100; ++i) {
        const double persistence = 0.98 * probe.uniform01();
        const double split = probe.uniform01();
        const double a0 = s2 * (0.01 + probe.uniform01());
        CHECK(-fit.log_lik <= negll(a0, persistence * split, persistence * (1.0 - split)) + 1e-9);
    }
}

TEST_CASE("rescaling residuals rescales alpha0 and leaves the shape parameters") {
    Rng rng(5501);
    Series s = sim::make_series(sim::garch(rng, 4000, 1e-6, 0.10, 0.85), SeriesKind::residual);
    const GarchFit base = fit_garch(s, 1, 1);

    const double a = 100.0;
    Series scaled = s;
    for (double& v : scaled.values) v *= a;
    const GarchFit big = fit_garch(scaled, 1, 1);
    CHECK(std::fabs(big.alpha0 - a * a * base.alpha0) / (a * a * base.alpha0) < 1e-4);
    CHECK(std::fabs(big.alpha[0] - base.alpha[0]) < 1e-4);
    CHECK(std::fabs(big.beta[0] - base.beta[0]) < 1e-4);
    // standardized residuals are unchanged
    for (std::size_t t = 0; t < s.size(); t += 500)
        CHECK(big.std_residuals.values[t] ==
              doctest::Approx(base.std_residuals.values[t]).epsilon(1e-6));
}

TEST_CASE("garch variance forecasts follow the closed recursion") {
    // fixed point: at the unconditional variance the forecast stays put
    GarchFit fit;
    fit.q_arch = 1;
    fit.p_garch = 1;
    fit.alpha0 = 0.1;
    fit.alpha = {0.2};
    fit.beta = {0.7};
    fit.persistence = 0.9;
    fit.converged = true;
    fit.n = 10;
    fit.residual_data.assign(10, 1.0);  // u^2 = 1
    fit.cond_var.assign(10, 1.0);       // sigma^2 = 1 = alpha0 / (1 - 0.9)
    const VolForecast flat = forecast_variance(fit, 10);
    for (double v : flat.sigma2) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));

    // off the fixed point: geometric decay toward it
    fit.cond_var.back() = 2.0;
    fit.residual_data.back() = std::sqrt(2.0);  // u_T^2 = 2 as well
    const VolForecast path = forecast_variance(fit, 40);
    const double step1 = 0.1 + 0.2 * 2.0 + 0.7 * 2.0;
    CHECK(path.sigma2[0] == doctest::Approx(step1).epsilon(1e-14));
    for (int k = 1; k < 40; ++k) {
        const double expect = 1.0 + std::pow(0.9, k) * (step1 - 1.0);
        CHECK(std::fabs(path.sigma2[static_cast<std::size_t>(k)] - expect) < 1e-12);
    }
}

TEST_CASE("garch forecast converges to the unconditional variance") {
    Rng rng(5601);
    Series s = sim::make_series(sim::garch(rng, 3000, 1e-6, 0.10, 0.85), SeriesKind::residual);
    const GarchFit fit = fit_garch(s, 1, 1);
    const VolForecast path = forecast_variance(fit, 300);
    const double uv = fit.unconditional_variance();
    CHECK(std::fabs(path.sigma2.back() - uv) / uv < 0.001);
}

TEST_CASE("egarch recovers the leverage structure") {
    int hits = 0;
    for (int seed = 0; seed < 10; ++seed) {
        Rng rng(Rng::derive(4000, static_cast<std::uint64_t>(seed)));
        Series s =
            sim::make_series(sim::egarch(rng, 5000, -0.5, 0.95, 0.15, -0.10), SeriesKind::residual);
        const EgarchFit fit = fit_egarch(s);
        // beta, gamma, alpha at the module tolerance; omega at a 3-sigma sanity band
        // (its sampling sd at n=5000 is ~0.076)
        const bool ok = std::fabs(fit.beta_lnh - 0.95) < 0.08 &&
                        std::fabs(fit.gamma_sign + 0.10) < 0.08 &&
                        std::fabs(fit.alpha_mag - 0.15) < 0.08 && std::fabs(fit.omega + 0.5) < 0.23;
        if (ok) ++hits;
        CHECK(std::fabs(fit.beta_lnh) < 1.0);
        for (double h : fit.cond_var) CHECK(h > 0.0);
    }
    CHECK(hits >= 9);
}

TEST_CASE("egarch gamma stays near zero on symmetric garch data") {
    int hits = 0;
    for (int seed = 0; seed < 10; ++seed) {
        Rng rng(Rng::derive(5700, static_cast<std::uint64_t>(seed)));
        Series s = sim::make_series(sim::garch(rng, 5000, 1e-6, 0.10, 0.85), SeriesKind::residual);
        const EgarchFit fit = fit_egarch(s);
        if (std::fabs(fit.gamma_sign) < 0.05) ++hits;
    }
    CHECK(hits >= 9);
}

TEST_CASE("egarch monte carlo forecast is deterministic and positive") {
    Rng rng(5801);
    Series s = sim::make_series(sim::egarch(rng, 2000, -0.4, 0.94, 0.12, -0.08), SeriesKind::residual);
    const EgarchFit fit = fit_egarch(s);
    EgarchForecastOptions opts;
    opts.paths = 2000;
    opts.seed = 42;
    const VolForecast a = forecast_variance(fit, 7, opts);
    const VolForecast b = forecast_variance(fit, 7, opts);
    for (int k = 0; k < 7; ++k) {
        CHECK(a.sigma2[static_cast<std::size_t>(k)] == b.sigma2[static_cast<std::size_t>(k)]);
        CHECK(a.sigma2[static_cast<std::size_t>(k)] > 0.0);
    }
    opts.seed = 43;
    const VolForecast c = forecast_variance(fit, 7, opts);
    CHECK(a.sigma2[0] == c.sigma2[0]);  // one-step value is exact, seed independent
    CHECK(a.sigma2[3] != c.sigma2[3]);
}

TEST_CASE("standardized residuals divide by the fitted volatility") {
    // constant-variance model: alpha = beta = 0 recursion collapses to alpha0
    Rng rng(5901);
    Series s = sim::make_series(sim::iid_normal(rng, 500, 0.0, 2.0), SeriesKind::residual);
    const std::vector<double> h = garch_cond_var(s.values, 4.0, {0.0}, {0.0});
    for (double v : h) CHECK(v == doctest::Approx(4.0));

    Series garch_s = sim::make_series(sim::garch(rng, 3000, 1e-6, 0.12, 0.80), SeriesKind::residual);
    const GarchFit fit = fit_garch(garch_s, 1, 1);
    const Series& z = standardized_residuals(fit);
    for (std::size_t t = 0; t < z.size(); t += 250)
        CHECK(z.values[t] ==
              doctest::Approx(garch_s.values[t] / std::sqrt(fit.cond_var[t])).epsilon(1e-12));
    // variance of z should sit near one for an adequate fit
    double vz = 0.0;
    for (double v : z.values) vz += v * v;
    vz /= static_cast<double>(z.size());
    CHECK(vz > 0.9);
    CHECK(vz < 1.1);
}

TEST_CASE("diagnostic battery on an adequate fit") {
    Rng rng(6001);
    Series s = sim::make_series(sim::garch(rng, 3000, 1e-6, 0.10, 0.85), SeriesKind::residual);
    const GarchFit fit = fit_garch(s, 1, 1);
    const DiagnosticsReport rep = garch_diagnostics(fit);
    REQUIRE(rep.tests.size() == 13);
    bool saw_z2 = false;
    for (const TestResult& t : rep.tests) {
        CHECK(t.p_value >= 0.0);
        CHECK(t.p_value <= 1.0);
        if (t.name == "Ljung-Box z^2" && t.lag == 12) {
            saw_z2 = true;
            CHECK(t.p_value > 0.05);  // squared standardized residuals are white
        }
    }
    CHECK(saw_z2);
}

TEST_CASE("misspecified constant-variance fit fails the z^2 test") {
    int rejected = 0;
    for (int seed = 0; seed < 10; ++seed) {
        Rng rng(Rng::derive(6100, static_cast<std::uint64_t>(seed)));
        Series s = sim::make_series(sim::garch(rng, 3000, 1e-6, 0.25, 0.70), SeriesKind::residual);
        // constant-variance "fit": z = u / sd(u)
        double s2 = 0.0;
        for (double v : s.values) s2 += v * v;
        s2 /= static_cast<double>(s.size());
        Series z = s;
        for (double& v : z.values) v /= std::sqrt(s2);
        Series z2 = z;
        for (double& v : z2.values) v *= v;
        if (ljung_box(z2, 12, 2).p_value < 0.01) ++rejected;
    }
    CHECK(rejected >= 10);
}

TEST_CASE("garch input contracts") {
    Rng rng(6201);
    Series tiny = sim::make_series(sim::iid_normal(rng, 100), SeriesKind::residual);
    CHECK_THROWS_AS(fit_garch(tiny, 1, 1), input_error);
    CHECK_THROWS_AS(fit_egarch(tiny), input_error);
    Series s = sim::make_series(sim::garch(rng, 400, 1e-6, 0.1, 0.8), SeriesKind::residual);
    CHECK_THROWS_AS(fit_garch(s, 0, 1), input_error);
    const GarchFit fit = fit_garch(s, 1, 1);
    CHECK_THROWS_AS(forecast_variance(fit, 0), input_error);
    CHECK_THROWS_AS(forecast_variance(fit, 501), input_error);
}
