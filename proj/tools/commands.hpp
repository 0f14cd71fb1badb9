#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace quantset::cli {

struct RunConfig {
    std::string input_path;

    std::string date_col = "Date";
    std::string open_col = "Open";
    std::string high_col = "High";
    std::string low_col = "Low";
    std::string close_col = "Close";
    std::string date_format = "%Y-%m-%d";

    int p = -1;  // explicit ARMA order; negative means select on the grid
    int q = -1;
    int p_max = 6;
    int q_max = 6;
    std::string criterion = "aic";
    int adf_lag = 9;
    std::vector<int> lags = {6, 12, 18};
    int horizon = 7;

    std::vector<double> probs = {0.95, 0.99, 0.999, 0.9999};
    double mu = 0.0;
    double sigma = -1.0;
    bool mu_set = false;
    bool sigma_set = false;
    std::string fit_file;

    std::string model = "garch";  // garch | egarch
    bool raw_returns = false;     // volatility model on raw returns instead of ARMA residuals

    int var_lag = 1;
    std::vector<std::string> ordering;

    std::uint64_t seed = 42;
    std::string out_dir = "quantset_out";
    std::vector<std::string> formats = {"text", "json", "csv"};

    bool wants(const std::string& fmt) const;
};

int cmd_describe(const RunConfig& cfg);
int cmd_arma(const RunConfig& cfg);
int cmd_garch(const RunConfig& cfg);
int cmd_risk(const RunConfig& cfg);
int cmd_var(const RunConfig& cfg);

}  // namespace quantset::cli
