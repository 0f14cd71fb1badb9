#pragma once

#include "quantset/linalg.hpp"

#include <functional>
#include <vector>

namespace quantset::optim {

using Objective = std::function<double(const std::vector<double>&)>;

struct Options {
    int max_iter = 500;
    double tol_rel = 1e-10;     // relative objective change at convergence
    double initial_step = 0.1;  // simplex edge length
};

struct Result {
    std::vector<double> x;
    double fx = 0.0;
    bool converged = false;
    int iterations = 0;
    int evaluations = 0;
};

/// Derivative-free Nelder-Mead simplex minimization. Objective values of
/// NaN are treated as +inf, so hard constraint regions can be excluded.
Result nelder_mead(const Objective& f, std::vector<double> x0, const Options& opts = {});

/// BFGS with central-difference gradients and Armijo backtracking line search.
Result bfgs(const Objective& f, std::vector<double> x0, const Options& opts = {});

std::vector<double> numerical_gradient(const Objective& f, const std::vector<double>& x);

/// Central-difference Hessian, used for standard errors at an optimum.
linalg::Matrix numerical_hessian(const Objective& f, const std::vector<double>& x);

}  // namespace quantset::optim
