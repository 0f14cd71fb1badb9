#pragma once

// Distribution functions used by the hypothesis tests: standard normal pdf/cdf/quantile,
// chi-square, F and Student-t tail probabilities. Everything is built on the regularized
// incomplete gamma/beta functions so no external numerics library is needed.

namespace quantset::special {

double norm_pdf(double x);
double norm_cdf(double x);
/// Upper tail P(Z > x).
double norm_sf(double x);
/// Inverse of norm_cdf on (0, 1). Wichura's PPND16 rational approximation.
double norm_quantile(double p);

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double gamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);
/// Regularized incomplete beta I_x(a, b).
double beta_inc(double a, double b, double x);

double chi2_cdf(double x, double dof);
double chi2_sf(double x, double dof);
/// Upper tail of the F(d1, d2) distribution.
double f_sf(double x, double d1, double d2);
double t_cdf(double x, double dof);
/// Upper tail P(T > x) for Student-t.
double t_sf(double x, double dof);

}  // namespace quantset::special
