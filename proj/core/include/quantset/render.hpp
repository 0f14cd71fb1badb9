#pragma once

#include "quantset/arma.hpp"
#include "quantset/garch.hpp"
#include "quantset/risk.hpp"
#include "quantset/series.hpp"
#include "quantset/stattests.hpp"
#include "quantset/var.hpp"

#include <string>
#include <vector>

// Plain-text and CSV renderers for every table the CLI emits. All numeric
// formatting is fixed so repeated runs are byte-identical.
namespace quantset::render {

std::string summary_text(const Series& s, const SummaryStats& st);
std::string correlogram_text(const std::vector<CorrelogramRow>& rows);
std::string correlogram_csv(const std::vector<CorrelogramRow>& rows);
std::string series_csv(const Series& s);

/// Sorted sample values paired with standard normal quantiles at the Blom
/// plotting positions.
std::string qq_pairs_csv(const Series& s);
std::string histogram_csv(const Series& s, int bins);

std::string test_result_text(const TestResult& t);
std::string eacf_text(const EacfTable& t);

std::string order_grid_text(const OrderSelection& sel);
std::string arma_fit_text(const ArmaFit& fit);
/// Step / Forecast / Std. Error rows, one column per step.
std::string forecast_table_text(const ForecastPath& path);
std::string forecast_csv(const ForecastPath& path);

std::string garch_fit_text(const GarchFit& fit);
std::string egarch_fit_text(const EgarchFit& fit);
std::string cond_var_csv(const std::vector<double>& sigma2,
                         const std::vector<std::string>& labels);
std::string vol_forecast_csv(const VolForecast& f);

std::string risk_table_text(const std::vector<RiskRow>& rows);
std::string risk_table_csv(const std::vector<RiskRow>& rows);

/// Pairwise layout with significance stars: *** at 1%, ** at 5%, * at 10%.
std::string granger_table_text(const std::vector<TestResult>& results);
std::string granger_table_csv(const std::vector<TestResult>& results);

std::string var_fit_text(const VarFit& fit);
std::string stability_text(const StabilityReport& rep);
std::string roots_csv(const StabilityReport& rep);
std::string irf_csv(const ImpulseResponse& impulse);
std::string fevd_text(const FevdTable& t);
std::string fevd_csv(const FevdTable& t);
std::string var_forecast_csv(const std::vector<std::string>& names,
                             const std::vector<std::vector<double>>& paths);

}  // namespace quantset::render
