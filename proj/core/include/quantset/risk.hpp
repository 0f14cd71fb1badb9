#pragma once

#include <vector>

namespace quantset {

struct RiskRow {
    double prob = 0.0;       // confidence level in (0.5, 1)
    double var_value = 0.0;  // return-unit quantile
    double es_value = 0.0;   // tail conditional expectation
};

/// Parametric normal value-at-risk: mu + z(prob) * sigma.
double var_normal(double mu, double sigma, double prob);

/// Normal expected shortfall, closed form mu + sigma * pdf(z(prob)) / (1 - prob).
double es_normal(double mu, double sigma, double prob);

std::vector<RiskRow> risk_table(double mu, double sigma, const std::vector<double>& probs);

}  // namespace quantset
