#include "commands.hpp"

#include "quantset/error.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>

namespace {

using quantset::cli::RunConfig;

void add_input_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--input", cfg.input_path, "CSV file with a header row")->required();
    cmd->add_option("--date-col", cfg.date_col, "date column name");
    cmd->add_option("--open-col", cfg.open_col, "open column name");
    cmd->add_option("--high-col", cfg.high_col, "high column name");
    cmd->add_option("--low-col", cfg.low_col, "low column name");
    cmd->add_option("--close-col", cfg.close_col, "close column name");
    cmd->add_option("--date-format", cfg.date_format, "strptime pattern, default %Y-%m-%d");
}

void add_output_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--out", cfg.out_dir, "output directory");
    cmd->add_option("--format", cfg.formats, "any of text json csv svg")
        ->delimiter(',');
    cmd->add_option("--seed", cfg.seed, "random seed for every stochastic step")
        ->envname("QUANTSET_SEED");
}

void add_order_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--p", cfg.p, "AR order (with --q skips selection)");
    cmd->add_option("--q", cfg.q, "MA order");
    cmd->add_option("--pmax", cfg.p_max, "selection grid AR bound");
    cmd->add_option("--qmax", cfg.q_max, "selection grid MA bound");
    cmd->add_option("--criterion", cfg.criterion, "aic or bic")
        ->check(CLI::IsMember({"aic", "bic"}));
}

int dispatch(const std::function<int()>& run) {
    try {
        return run();
    } catch (const quantset::input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const quantset::convergence_error& e) {
        std::cerr << "convergence error: " << e.what() << "\n";
        return 3;
    } catch (const quantset::io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantset: time-series econometrics for index data"};
    app.require_subcommand(1);

    RunConfig cfg;

    CLI::App* describe = app.add_subcommand("describe", "summary statistics and correlogram");
    add_input_options(describe, cfg);
    add_output_options(describe, cfg);

    CLI::App* arma = app.add_subcommand("arma", "stationarity check, ARMA fit and forecasts");
    add_input_options(arma, cfg);
    add_output_options(arma, cfg);
    add_order_options(arma, cfg);
    arma->add_option("--adf-lag", cfg.adf_lag, "lagged differences in the ADF regression");
    arma->add_option("--lags", cfg.lags, "portmanteau test lags")->delimiter(',');
    arma->add_option("--horizon", cfg.horizon, "forecast steps");

    CLI::App* garch = app.add_subcommand("garch", "volatility model on ARMA residuals");
    add_input_options(garch, cfg);
    add_output_options(garch, cfg);
    add_order_options(garch, cfg);
    garch->add_option("--model", cfg.model, "garch or egarch")
        ->check(CLI::IsMember({"garch", "egarch"}));
    garch->add_flag("--raw-returns", cfg.raw_returns,
                    "fit the volatility model on raw returns, skipping the ARMA stage");
    garch->add_option("--horizon", cfg.horizon, "variance forecast steps");

    CLI::App* risk = app.add_subcommand("risk", "parametric normal VaR and ES table");
    add_output_options(risk, cfg);
    risk->add_option("--mu", cfg.mu, "mean return")->trigger_on_parse();
    risk->add_option("--sigma", cfg.sigma, "return volatility");
    risk->add_option("--fit", cfg.fit_file, "serialized fit JSON to derive mu/sigma from");
    risk->add_option("--probs", cfg.probs, "confidence levels")->delimiter(',');

    CLI::App* var = app.add_subcommand("var", "vector autoregression on OHLC levels");
    add_input_options(var, cfg);
    add_output_options(var, cfg);
    var->add_option("--var-lag", cfg.var_lag, "VAR lag order");
    var->add_option("--ordering", cfg.ordering, "Cholesky ordering of the variables")
        ->delimiter(',');
    var->add_option("--horizon", cfg.horizon, "forecast steps");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    cfg.mu_set = risk->count("--mu") > 0;
    cfg.sigma_set = risk->count("--sigma") > 0;

    if (describe->parsed()) return dispatch([&] { return quantset::cli::cmd_describe(cfg); });
    if (arma->parsed()) return dispatch([&] { return quantset::cli::cmd_arma(cfg); });
    if (garch->parsed()) return dispatch([&] { return quantset::cli::cmd_garch(cfg); });
    if (risk->parsed()) return dispatch([&] { return quantset::cli::cmd_risk(cfg); });
    if (var->parsed()) return dispatch([&] { return quantset::cli::cmd_var(cfg); });
    return 2;
}
