#include "quantset/optim.hpp"

#include <doctest.h>

#include <cmath>

using namespace quantset;

namespace {

double rosenbrock(const std::vector<double>& v) {
    const double a = 1.0 - v[0];
    const double b = v[1] - v[0] * v[0];
    return a * a + 100.0 * b * b;
}

double quadratic(const std::vector<double>& v) {
    return 3.0 * (v[0] - 2.0) * (v[0] - 2.0) + 0.5 * (v[1] + 1.0) * (v[1] + 1.0) +
           0.25 * (v[0] - 2.0) * (v[1] + 1.0);
}

}  // namespace

TEST_CASE("nelder-mead then bfgs minimizes rosenbrock") {
    optim::Options nm;
    nm.max_iter = 2000;
    optim::Result r = optim::nelder_mead(rosenbrock, {-1.2, 1.0}, nm);
    r = optim::bfgs(rosenbrock, r.x);
    CHECK(r.converged);
    CHECK(std::fabs(r.x[0] - 1.0) < 1e-5);
    CHECK(std::fabs(r.x[1] - 1.0) < 1e-5);
    CHECK(r.fx < 1e-10);
}

TEST_CASE("bfgs alone handles a quadratic bowl") {
    const optim::Result r = optim::bfgs(quadratic, {10.0, -10.0});
    CHECK(r.converged);
    CHECK(std::fabs(r.x[0] - 2.0) < 1e-6);
    CHECK(std::fabs(r.x[1] + 1.0) < 1e-6);
}

TEST_CASE("objectives returning inf confine the search") {
    const auto constrained = [](const std::vector<double>& v) {
        if (v[0] < 0.0) return std::numeric_limits<double>::infinity();
        return (v[0] - 0.5) * (v[0] - 0.5);
    };
    optim::Result r = optim::nelder_mead(constrained, {3.0});
    CHECK(r.converged);
    CHECK(std::fabs(r.x[0] - 0.5) < 1e-6);
}

TEST_CASE("numerical gradient and hessian of the quadratic") {
    const std::vector<double> x = {0.3, 0.7};
    const std::vector<double> g = optim::numerical_gradient(quadratic, x);
    CHECK(g[0] == doctest::Approx(6.0 * (x[0] - 2.0) + 0.25 * (x[1] + 1.0)).epsilon(1e-6));
    CHECK(g[1] == doctest::Approx(1.0 * (x[1] + 1.0) + 0.25 * (x[0] - 2.0)).epsilon(1e-6));

    const linalg::Matrix h = optim::numerical_hessian(quadratic, x);
    CHECK(h(0, 0) == doctest::Approx(6.0).epsilon(1e-4));
    CHECK(h(1, 1) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(h(0, 1) == doctest::Approx(0.25).epsilon(1e-3));
}
