#include "quantset/risk.hpp"

#include "quantset/error.hpp"
#include "quantset/special.hpp"

namespace quantset {

namespace {

void check_inputs(double sigma, double prob) {
    if (sigma < 0.0) throw input_error("risk: sigma must be non-negative");
    if (!(prob > 0.5 && prob < 1.0)) throw input_error("risk: prob must lie in (0.5, 1)");
}

}  // namespace

double var_normal(double mu, double sigma, double prob) {
    check_inputs(sigma, prob);
    return mu + special::norm_quantile(prob) * sigma;
}

double es_normal(double mu, double sigma, double prob) {
    check_inputs(sigma, prob);
    const double z = special::norm_quantile(prob);
    return mu + sigma * special::norm_pdf(z) / (1.0 - prob);
}

std::vector<RiskRow> risk_table(double mu, double sigma, const std::vector<double>& probs) {
    std::vector<RiskRow> rows;
    rows.reserve(probs.size());
    for (double p : probs)
        rows.push_back({p, var_normal(mu, sigma, p), es_normal(mu, sigma, p)});
    return rows;
}

}  // namespace quantset
