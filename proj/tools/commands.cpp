#include "commands.hpp"

#include "quantset/arma.hpp"
#include "quantset/csv.hpp"
#include "quantset/error.hpp"
#include "quantset/garch.hpp"
#include "quantset/render.hpp"
#include "quantset/risk.hpp"
#include "quantset/serialize.hpp"
#include "quantset/series.hpp"
#include "quantset/stattests.hpp"
#include "quantset/svg.hpp"
#include "quantset/var.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace quantset::cli {

namespace {

using nlohmann::json;

bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

void write_file(const RunConfig& cfg, const std::string& name, const std::string& content) {
    std::filesystem::path dir(cfg.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    const std::filesystem::path path = dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write " + path.string());
    out << content;
    if (!out) throw io_error("write failed for " + path.string());
}

Series load_close(const RunConfig& cfg) {
    CsvSpec spec;
    spec.date_column = cfg.date_col;
    spec.date_format = cfg.date_format;
    spec.value_columns = {{"Close", cfg.close_col}};
    const CsvLoadResult res = load_csv(cfg.input_path, spec);
    if (res.rows_dropped > 0)
        std::cerr << "note: dropped " << res.rows_dropped << " unparseable rows of "
                  << res.rows_total << "\n";
    return res.series[0];
}

MultiSeries load_ohlc(const RunConfig& cfg) {
    CsvSpec spec;
    spec.date_column = cfg.date_col;
    spec.date_format = cfg.date_format;
    spec.value_columns = {{"Close", cfg.close_col},
                          {"Open", cfg.open_col},
                          {"High", cfg.high_col},
                          {"Low", cfg.low_col}};
    const CsvLoadResult res = load_csv(cfg.input_path, spec);
    if (res.rows_dropped > 0)
        std::cerr << "note: dropped " << res.rows_dropped << " unparseable rows of "
                  << res.rows_total << "\n";
    MultiSeries m;
    m.components = res.series;
    return m;
}

json stats_json(const SummaryStats& st) {
    return json{{"n", st.n},
                {"mean", st.mean},
                {"std_dev", st.std_dev},
                {"min", st.min},
                {"max", st.max},
                {"skewness", st.skewness},
                {"excess_kurtosis", st.excess_kurtosis}};
}

json test_json(const TestResult& t) { return json::parse(to_json(t)); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// order from flags, or from the criterion grid
ArmaFit fit_arma_for(const RunConfig& cfg, const Series& returns, std::string* note) {
    ArmaFitOptions opts;
    opts.seed = cfg.seed;
    if (cfg.p >= 0 && cfg.q >= 0) {
        *note = "";
        return fit_arma(returns, ArmaSpec{cfg.p, cfg.q, true}, opts);
    }
    const Criterion crit = (cfg.criterion == "bic") ? Criterion::bic : Criterion::aic;
    const OrderSelection sel = select_order(returns, cfg.p_max, cfg.q_max, crit, opts);
    std::ostringstream os;
    os << render::order_grid_text(sel);
    *note = os.str();
    return fit_arma(returns, sel.best, opts);
}

int portmanteau_fitdf(const ArmaFit& fit) { return fit.spec.p + fit.spec.q; }

}  // namespace

bool RunConfig::wants(const std::string& fmt) const { return contains(formats, fmt); }

int cmd_describe(const RunConfig& cfg) {
    const Series prices = load_close(cfg);
    const Series returns = log_returns(prices);
    const SummaryStats price_stats = summary_stats(prices);
    const SummaryStats return_stats = summary_stats(returns);
    const int max_lag = std::min<int>(24, static_cast<int>(returns.size() / 2) - 1);
    const auto rows = correlogram(returns, max_lag);

    std::ostringstream report;
    report << render::summary_text(prices, price_stats) << "\n";
    report << render::summary_text(returns, return_stats) << "\n";
    report << "Correlogram of log returns (max lag " << max_lag << ")\n";
    report << render::correlogram_text(rows);
    std::cout << report.str();

    if (cfg.wants("text")) write_file(cfg, "describe.txt", report.str());
    if (cfg.wants("json")) {
        json j;
        j["input"] = cfg.input_path;
        j["price_stats"] = stats_json(price_stats);
        j["return_stats"] = stats_json(return_stats);
        json corr = json::array();
        for (const auto& r : rows)
            corr.push_back(json{{"lag", r.lag}, {"acf", r.acf}, {"pacf", r.pacf},
                                {"conf_band", r.conf_band}});
        j["correlogram"] = corr;
        write_file(cfg, "describe.json", dump(j));
    }
    if (cfg.wants("csv")) {
        write_file(cfg, "correlogram.csv", render::correlogram_csv(rows));
        write_file(cfg, "returns.csv", render::series_csv(returns));
        write_file(cfg, "qq.csv", render::qq_pairs_csv(returns));
        write_file(cfg, "histogram.csv", render::histogram_csv(returns, 30));
    }
    if (cfg.wants("svg")) {
        write_file(cfg, "price.svg", svg::line_chart("Price", {{prices.name, prices.values}}));
        write_file(cfg, "returns.svg",
                   svg::line_chart("Log returns", {{returns.name, returns.values}}));
    }
    return 0;
}

int cmd_arma(const RunConfig& cfg) {
    const Series prices = load_close(cfg);
    const Series returns = log_returns(prices);

    const TestResult adf = adf_test(returns, cfg.adf_lag);
    std::string selection_note;
    const ArmaFit fit = fit_arma_for(cfg, returns, &selection_note);

    std::vector<TestResult> checks;
    for (int lag : cfg.lags) {
        checks.push_back(box_pierce(fit.residuals, lag, portmanteau_fitdf(fit)));
        checks.push_back(ljung_box(fit.residuals, lag, portmanteau_fitdf(fit)));
    }
    const ForecastPath path = forecast(fit, cfg.horizon);

    std::ostringstream report;
    report << render::test_result_text(adf);
    if (!selection_note.empty()) report << selection_note;
    report << render::arma_fit_text(fit);
    report << "Residual whiteness checks (fitdf " << portmanteau_fitdf(fit) << ")\n";
    for (const TestResult& t : checks) report << render::test_result_text(t);
    report << "Out-of-sample forecasts\n" << render::forecast_table_text(path);
    std::cout << report.str();

    if (cfg.wants("text")) write_file(cfg, "arma.txt", report.str());
    if (cfg.wants("json")) {
        write_file(cfg, "arma_fit.json", to_json(fit));
        json tests = json::array();
        tests.push_back(test_json(adf));
        for (const TestResult& t : checks) tests.push_back(test_json(t));
        write_file(cfg, "arma_tests.json", dump(tests));
    }
    if (cfg.wants("csv")) write_file(cfg, "arma_forecast.csv", render::forecast_csv(path));
    if (cfg.wants("svg")) {
        write_file(cfg, "arma_residuals.svg",
                   svg::line_chart("ARMA residuals", {{"residuals", fit.residuals.values}}));
    }
    return 0;
}

int cmd_garch(const RunConfig& cfg) {
    const Series prices = load_close(cfg);
    const Series returns = log_returns(prices);

    std::ostringstream report;
    Series base = returns;
    if (!cfg.raw_returns) {
        std::string selection_note;
        const ArmaFit mean_fit = fit_arma_for(cfg, returns, &selection_note);
        if (!selection_note.empty()) report << selection_note;
        report << render::arma_fit_text(mean_fit);
        base = mean_fit.residuals;
    } else {
        report << "Volatility model fitted on raw log returns\n";
    }

    const TestResult sw = shapiro_wilk(base);
    const TestResult jb = jarque_bera(base);
    const TestResult lm = arch_lm(base, 12);
    report << render::test_result_text(sw);
    report << render::test_result_text(jb);
    report << render::test_result_text(lm);

    Series squared = base;
    squared.name = base.name + "_sq";
    squared.kind = SeriesKind::other;
    for (double& v : squared.values) v *= v;
    const EacfTable table = eacf(squared, 7, 13);
    report << "EACF of squared residuals\n" << render::eacf_text(table);

    GarchFitOptions opts;
    opts.seed = cfg.seed;
    std::string fit_json;
    std::vector<double> cond_var;
    VolForecast vol;
    DiagnosticsReport diag;
    if (cfg.model == "egarch") {
        const EgarchFit fit = fit_egarch(base, opts);
        report << render::egarch_fit_text(fit);
        fit_json = to_json(fit);
        cond_var = fit.cond_var;
        EgarchForecastOptions fopts;
        fopts.seed = cfg.seed;
        vol = forecast_variance(fit, cfg.horizon, fopts);
        diag = garch_diagnostics(fit);
    } else {
        const GarchFit fit = fit_garch(base, 1, 1, opts);
        report << render::garch_fit_text(fit);
        fit_json = to_json(fit);
        cond_var = fit.cond_var;
        vol = forecast_variance(fit, cfg.horizon);
        diag = garch_diagnostics(fit);
    }

    report << "Diagnostics on standardized residuals\n";
    for (const TestResult& t : diag.tests) report << render::test_result_text(t);
    report << "Variance forecast\n";
    for (int k = 0; k < vol.horizon; ++k) {
        char line[96];
        std::snprintf(line, sizeof(line), "  step %d  sigma2 %.6e  sigma %.6e\n", k + 1,
                      vol.sigma2[static_cast<std::size_t>(k)],
                      vol.sigma[static_cast<std::size_t>(k)]);
        report << line;
    }
    std::cout << report.str();

    if (cfg.wants("text")) write_file(cfg, "garch.txt", report.str());
    if (cfg.wants("json")) {
        write_file(cfg, "garch_fit.json", fit_json);
        json tests = json::array();
        tests.push_back(test_json(sw));
        tests.push_back(test_json(jb));
        tests.push_back(test_json(lm));
        for (const TestResult& t : diag.tests) tests.push_back(test_json(t));
        write_file(cfg, "garch_tests.json", dump(tests));
    }
    if (cfg.wants("csv")) {
        write_file(cfg, "cond_var.csv", render::cond_var_csv(cond_var, base.labels));
        write_file(cfg, "vol_forecast.csv", render::vol_forecast_csv(vol));
        write_file(cfg, "qq_residuals.csv", render::qq_pairs_csv(base));
        write_file(cfg, "eacf.txt", render::eacf_text(table));
    }
    if (cfg.wants("svg")) {
        write_file(cfg, "cond_var.svg",
                   svg::line_chart("Conditional variance", {{"sigma2", cond_var}}));
    }
    return 0;
}

int cmd_risk(const RunConfig& cfg) {
    double mu = cfg.mu;
    double sigma = cfg.sigma;
    std::string source = "flags";
    if (!cfg.fit_file.empty()) {
        std::ifstream in(cfg.fit_file);
        if (!in) throw io_error("cannot open fit file: " + cfg.fit_file);
        std::stringstream buf;
        buf << in.rdbuf();
        const FitRiskInputs inputs = risk_inputs_from_fit_json(buf.str());
        mu = inputs.mu;
        sigma = inputs.sigma;
        source = inputs.source_model + " fit";
    } else if (!cfg.mu_set || !cfg.sigma_set) {
        throw input_error("risk: supply --mu and --sigma, or --fit <model.json>");
    }

    const std::vector<RiskRow> rows = risk_table(mu, sigma, cfg.probs);

    std::ostringstream report;
    char head[128];
    std::snprintf(head, sizeof(head), "Normal VaR and ES (mu %.6g, sigma %.6g, from %s)\n", mu,
                  sigma, source.c_str());
    report << head << render::risk_table_text(rows);
    std::cout << report.str();

    if (cfg.wants("text")) write_file(cfg, "risk.txt", report.str());
    if (cfg.wants("csv")) write_file(cfg, "risk.csv", render::risk_table_csv(rows));
    if (cfg.wants("json")) {
        json j = json::array();
        for (const RiskRow& r : rows)
            j.push_back(json{{"prob", r.prob}, {"var", r.var_value}, {"es", r.es_value}});
        write_file(cfg, "risk.json", dump(j));
    }
    return 0;
}

int cmd_var(const RunConfig& cfg) {
    const MultiSeries m = load_ohlc(cfg);
    const VarFit fit = fit_var(m, cfg.var_lag);
    const std::vector<TestResult> granger = granger_all_pairs(m, cfg.var_lag);
    const StabilityReport stability = stability_roots(fit);
    const int table_horizon = 10;
    const ImpulseResponse impulse = irf(fit, table_horizon, cfg.ordering);
    const FevdTable decomposition = fevd(fit, table_horizon, cfg.ordering);
    const auto forecasts = var_forecast(fit, cfg.horizon);

    std::ostringstream report;
    report << render::var_fit_text(fit);
    report << "\nGranger causality tests (lag " << cfg.var_lag << ")\n";
    report << render::granger_table_text(granger);
    report << "\n" << render::stability_text(stability);
    if (!stability.stable)
        report << "note: a VAR in price levels is typically borderline nonstationary; "
                  "interpret impulse responses with care\n";
    report << "\n" << render::fevd_text(decomposition);
    report << "\nForecasts\n" << render::var_forecast_csv(fit.names, forecasts);
    std::cout << report.str();

    if (cfg.wants("text")) write_file(cfg, "var.txt", report.str());
    if (cfg.wants("csv")) {
        write_file(cfg, "granger.csv", render::granger_table_csv(granger));
        write_file(cfg, "roots.csv", render::roots_csv(stability));
        write_file(cfg, "irf.csv", render::irf_csv(impulse));
        write_file(cfg, "fevd.csv", render::fevd_csv(decomposition));
        write_file(cfg, "var_forecast.csv", render::var_forecast_csv(fit.names, forecasts));
    }
    if (cfg.wants("json")) {
        json tests = json::array();
        for (const TestResult& t : granger) tests.push_back(test_json(t));
        write_file(cfg, "granger.json", dump(tests));
    }
    if (cfg.wants("svg")) {
        std::vector<svg::LineSeries> irf_lines;
        const std::size_t k = impulse.ordering.size();
        for (std::size_t j = 0; j < k; ++j) {
            svg::LineSeries ls;
            ls.name = impulse.ordering[0] + "<-" + impulse.ordering[j];
            for (int h = 0; h <= impulse.horizon; ++h)
                ls.y.push_back(impulse.responses[static_cast<std::size_t>(h)](0, j));
            irf_lines.push_back(std::move(ls));
        }
        write_file(cfg, "irf.svg", svg::line_chart("Impulse responses", irf_lines));
    }
    return 0;
}

}  // namespace quantset::cli
