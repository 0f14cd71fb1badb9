#include "quantset/risk.hpp"

#include "quantset/error.hpp"
#include "quantset/special.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace quantset;

namespace {

// published values for the (mu, sigma) pairs 0.0011/0.0125 and 0.0033/0.0097
struct RiskCase {
    double prob, var_expect, es_expect;
};
const RiskCase kCsi[] = {{0.95, 0.0217, 0.0269},
                         {0.99, 0.0302, 0.0344},
                         {0.999, 0.0397, 0.0432},
                         {0.9999, 0.0476, 0.0506}};
const RiskCase kSp[] = {{0.95, 0.0192, 0.0233},
                        {0.99, 0.0258, 0.0291},
                        {0.999, 0.0332, 0.0359},
                        {0.9999, 0.0393, 0.0416}};

}  // namespace

TEST_CASE("risk tables reproduce the published values within 1e-4") {
    for (const RiskCase& c : kCsi) {
        CHECK(std::fabs(var_normal(0.0011, 0.0125, c.prob) - c.var_expect) < 1e-4);
        CHECK(std::fabs(es_normal(0.0011, 0.0125, c.prob) - c.es_expect) < 1e-4);
    }
    for (const RiskCase& c : kSp) {
        CHECK(std::fabs(var_normal(0.0033, 0.0097, c.prob) - c.var_expect) < 1e-4);
        CHECK(std::fabs(es_normal(0.0033, 0.0097, c.prob) - c.es_expect) < 1e-4);
    }
}

TEST_CASE("zero volatility collapses both measures to the mean") {
    for (double p : {0.6, 0.95, 0.999}) {
        CHECK(var_normal(0.42, 0.0, p) == 0.42);
        CHECK(es_normal(0.42, 0.0, p) == 0.42);
    }
    const auto rows = risk_table(0.42, 0.0, {0.95});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].var_value == 0.42);
    CHECK(rows[0].es_value == 0.42);
}

TEST_CASE("es equals the tail integral of the normal density to 1e-8") {
    // E[X | X > VaR] computed by quadrature over [VaR, mu + 12 sigma]
    for (double mu : {0.0, 0.0011, -0.002}) {
        for (double sigma : {0.005, 0.0125, 0.03}) {
            for (double prob : {0.9, 0.95, 0.99, 0.999}) {
                const double var = var_normal(mu, sigma, prob);
                const auto integrand = [&](double x) {
                    const double z = (x - mu) / sigma;
                    return x * oracles::normal_pdf(z) / sigma;
                };
                const double tail_mean =
                    oracles::integrate(integrand, var, mu + 12.0 * sigma, 1e-14) / (1.0 - prob);
                CHECK(std::fabs(es_normal(mu, sigma, prob) - tail_mean) < 1e-8);
            }
        }
    }
}

TEST_CASE("monotonicity in prob, mu and sigma") {
    double prev_var = -1e9, prev_es = -1e9;
    for (double p : {0.55, 0.7, 0.9, 0.95, 0.99, 0.999}) {
        const double v = var_normal(0.001, 0.01, p);
        const double e = es_normal(0.001, 0.01, p);
        CHECK(v > prev_var);
        CHECK(e > prev_es);
        CHECK(e > v);  // strictly, since sigma > 0
        prev_var = v;
        prev_es = e;
    }
    // affine in mu, increasing in sigma
    CHECK(var_normal(0.02, 0.01, 0.95) ==
          doctest::Approx(var_normal(0.0, 0.01, 0.95) + 0.02).epsilon(1e-14));
    CHECK(var_normal(0.0, 0.02, 0.95) > var_normal(0.0, 0.01, 0.95));
    CHECK(es_normal(0.0, 0.02, 0.95) > es_normal(0.0, 0.01, 0.95));
}

TEST_CASE("risk table applies the scalar operations element-wise") {
    const auto rows = risk_table(0.0011, 0.0125, {0.95, 0.99, 0.999, 0.9999});
    REQUIRE(rows.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(rows[i].prob == kCsi[i].prob);
        CHECK(rows[i].var_value == var_normal(0.0011, 0.0125, rows[i].prob));
        CHECK(rows[i].es_value == es_normal(0.0011, 0.0125, rows[i].prob));
    }
}

TEST_CASE("input contracts") {
    CHECK_THROWS_AS(var_normal(0.0, -0.01, 0.95), input_error);
    CHECK_THROWS_AS(var_normal(0.0, 0.01, 0.5), input_error);
    CHECK_THROWS_AS(var_normal(0.0, 0.01, 1.0), input_error);
    CHECK_THROWS_AS(es_normal(0.0, 0.01, 0.2), input_error);
}
