#include "quantset/render.hpp"

#include "quantset/error.hpp"
#include "quantset/special.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <sstream>

namespace quantset::render {

namespace {

std::string strf(const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof(buf), fmt, args);
    va_end(args);
    return std::string(buf);
}

const char* stars(double p) {
    if (p <= 0.01) return "***";
    if (p <= 0.05) return "**";
    if (p <= 0.10) return "*";
    return "";
}

std::string kind_name(SeriesKind k) {
    switch (k) {
        case SeriesKind::price: return "price";
        case SeriesKind::log_return: return "log_return";
        case SeriesKind::residual: return "residual";
        case SeriesKind::other: return "other";
    }
    return "other";
}

}  // namespace

std::string summary_text(const Series& s, const SummaryStats& st) {
    std::ostringstream os;
    os << "Series: " << s.name << " (" << kind_name(s.kind) << ")\n";
    os << strf("  n               %zu\n", st.n);
    os << strf("  mean            %.8g\n", st.mean);
    os << strf("  std dev         %.8g\n", st.std_dev);
    os << strf("  min             %.8g\n", st.min);
    os << strf("  max             %.8g\n", st.max);
    os << strf("  skewness        %.8g\n", st.skewness);
    os << strf("  excess kurtosis %.8g\n", st.excess_kurtosis);
    return os.str();
}

std::string correlogram_text(const std::vector<CorrelogramRow>& rows) {
    std::ostringstream os;
    os << "  lag       acf      pacf    band\n";
    for (const CorrelogramRow& r : rows)
        os << strf("  %3d  %8.4f  %8.4f  %c %.4f\n", r.lag, r.acf, r.pacf,
                   (std::fabs(r.acf) > r.conf_band ? '>' : ' '), r.conf_band);
    return os.str();
}

std::string correlogram_csv(const std::vector<CorrelogramRow>& rows) {
    std::ostringstream os;
    os << "lag,acf,pacf,conf_band\n";
    for (const CorrelogramRow& r : rows)
        os << strf("%d,%.10g,%.10g,%.10g\n", r.lag, r.acf, r.pacf, r.conf_band);
    return os.str();
}

std::string series_csv(const Series& s) {
    std::ostringstream os;
    os << "date,value\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        os << (i < s.labels.size() ? s.labels[i] : std::to_string(i + 1));
        os << strf(",%.10g\n", s.values[i]);
    }
    return os.str();
}

std::string qq_pairs_csv(const Series& s) {
    std::vector<double> x = s.values;
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    std::ostringstream os;
    os << "theoretical,sample\n";
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double q =
            special::norm_quantile((static_cast<double>(i + 1) - 0.375) / (n + 0.25));
        os << strf("%.10g,%.10g\n", q, x[i]);
    }
    return os.str();
}

std::string histogram_csv(const Series& s, int bins) {
    if (bins < 1) throw input_error("histogram: need at least one bin");
    const double lo = *std::min_element(s.values.begin(), s.values.end());
    const double hi = *std::max_element(s.values.begin(), s.values.end());
    const double width = (hi > lo) ? (hi - lo) / bins : 1.0;
    std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
    for (double v : s.values) {
        int b = static_cast<int>((v - lo) / width);
        b = std::clamp(b, 0, bins - 1);
        ++counts[static_cast<std::size_t>(b)];
    }
    std::ostringstream os;
    os << "bin_left,bin_right,count\n";
    for (int b = 0; b < bins; ++b)
        os << strf("%.10g,%.10g,%zu\n", lo + b * width, lo + (b + 1) * width,
                   counts[static_cast<std::size_t>(b)]);
    return os.str();
}

std::string test_result_text(const TestResult& t) {
    std::ostringstream os;
    os << strf("%-28s", t.name.c_str());
    os << strf(" stat %12.5g", t.statistic);
    if (!t.dof.empty()) {
        os << "  dof ";
        for (std::size_t i = 0; i < t.dof.size(); ++i)
            os << strf(i ? ",%g" : "%g", t.dof[i]);
    }
    if (t.lag >= 0) os << strf("  lag %d", t.lag);
    os << strf("  p %.5g%s\n", t.p_value, stars(t.p_value));
    return os.str();
}

std::string eacf_text(const EacfTable& t) {
    std::ostringstream os;
    os << "AR/MA";
    for (int k = 0; k <= t.q_max; ++k) os << strf(" %2d", k);
    os << "\n";
    for (int j = 0; j <= t.p_max; ++j) {
        os << strf("%5d", j);
        for (int k = 0; k <= t.q_max; ++k) os << strf("  %c", t.symbol(j, k));
        os << "\n";
    }
    return os.str();
}

std::string order_grid_text(const OrderSelection& sel) {
    std::ostringstream os;
    os << (sel.criterion == Criterion::aic ? "AIC" : "BIC") << " order selection grid\n";
    os << "    p   q      score\n";
    for (const auto& c : sel.grid) {
        if (c.converged)
            os << strf("  %3d %3d  %12.4f%s\n", c.p, c.q, c.score,
                       (c.p == sel.best.p && c.q == sel.best.q) ? "  <- selected" : "");
        else
            os << strf("  %3d %3d  %12s\n", c.p, c.q, "failed");
    }
    return os.str();
}

std::string arma_fit_text(const ArmaFit& fit) {
    std::ostringstream os;
    os << strf("ARMA(%d,%d)%s fit, n=%zu\n", fit.spec.p, fit.spec.q,
               fit.spec.include_mean ? " with mean" : "", fit.n);
    os << "  coefficient      value    std.err\n";
    for (int i = 0; i < fit.spec.p; ++i)
        os << strf("  ar%-2d        %10.6f %10.6f\n", i + 1, fit.ar[static_cast<std::size_t>(i)],
                   fit.std_errors[static_cast<std::size_t>(i)]);
    for (int i = 0; i < fit.spec.q; ++i)
        os << strf("  ma%-2d        %10.6f %10.6f\n", i + 1, fit.ma[static_cast<std::size_t>(i)],
                   fit.std_errors[static_cast<std::size_t>(fit.spec.p + i)]);
    if (fit.spec.include_mean)
        os << strf("  mean        %10.6g %10.6g\n", fit.mean_c, fit.std_errors.back());
    os << strf("  sigma2 %.6g  log_lik %.4f  aic %.2f  bic %.2f\n", fit.sigma2, fit.log_lik,
               fit.aic, fit.bic);
    return os.str();
}

std::string forecast_table_text(const ForecastPath& path) {
    std::ostringstream os;
    os << "Step      ";
    for (int k = 1; k <= path.horizon; ++k) os << strf(" %10d", k);
    os << "\nForecast  ";
    for (double v : path.point) os << strf(" %10.4e", v);
    os << "\nStd. Error";
    for (double v : path.std_err) os << strf(" %10.4e", v);
    os << "\n";
    return os.str();
}

std::string forecast_csv(const ForecastPath& path) {
    std::ostringstream os;
    os << "step,forecast,std_error\n";
    for (int k = 0; k < path.horizon; ++k)
        os << strf("%d,%.10g,%.10g\n", k + 1, path.point[static_cast<std::size_t>(k)],
                   path.std_err[static_cast<std::size_t>(k)]);
    return os.str();
}

std::string garch_fit_text(const GarchFit& fit) {
    std::ostringstream os;
    os << strf("GARCH(%d,%d) fit, n=%zu\n", fit.p_garch, fit.q_arch, fit.n);
    os << "  coefficient      value    std.err\n";
    os << strf("  alpha0      %10.4e %10.4e\n", fit.alpha0, fit.std_errors[0]);
    for (int i = 0; i < fit.q_arch; ++i)
        os << strf("  alpha%-2d     %10.6f %10.6f\n", i + 1, fit.alpha[static_cast<std::size_t>(i)],
                   fit.std_errors[static_cast<std::size_t>(1 + i)]);
    for (int j = 0; j < fit.p_garch; ++j)
        os << strf("  beta%-2d      %10.6f %10.6f\n", j + 1, fit.beta[static_cast<std::size_t>(j)],
                   fit.std_errors[static_cast<std::size_t>(1 + fit.q_arch + j)]);
    os << strf("  persistence %.6f  log_lik %.4f%s\n", fit.persistence, fit.log_lik,
               fit.boundary_warning ? "  [warning: persistence at the unit boundary]" : "");
    return os.str();
}

std::string egarch_fit_text(const EgarchFit& fit) {
    std::ostringstream os;
    os << strf("eGARCH(1,1) fit, n=%zu\n", fit.n);
    os << "  coefficient      value    std.err\n";
    os << strf("  omega       %10.6f %10.6f\n", fit.omega, fit.std_errors[0]);
    os << strf("  beta        %10.6f %10.6f\n", fit.beta_lnh, fit.std_errors[1]);
    os << strf("  alpha       %10.6f %10.6f\n", fit.alpha_mag, fit.std_errors[2]);
    os << strf("  gamma       %10.6f %10.6f\n", fit.gamma_sign, fit.std_errors[3]);
    os << strf("  log_lik %.4f%s\n", fit.log_lik,
               fit.boundary_warning ? "  [warning: |beta| at the unit boundary]" : "");
    return os.str();
}

std::string cond_var_csv(const std::vector<double>& sigma2,
                         const std::vector<std::string>& labels) {
    std::ostringstream os;
    os << "date,sigma2,sigma\n";
    for (std::size_t i = 0; i < sigma2.size(); ++i) {
        os << (i < labels.size() ? labels[i] : std::to_string(i + 1));
        os << strf(",%.10g,%.10g\n", sigma2[i], std::sqrt(sigma2[i]));
    }
    return os.str();
}

std::string vol_forecast_csv(const VolForecast& f) {
    std::ostringstream os;
    os << "step,sigma2,sigma\n";
    for (int k = 0; k < f.horizon; ++k)
        os << strf("%d,%.10g,%.10g\n", k + 1, f.sigma2[static_cast<std::size_t>(k)],
                   f.sigma[static_cast<std::size_t>(k)]);
    return os.str();
}

std::string risk_table_text(const std::vector<RiskRow>& rows) {
    std::ostringstream os;
    os << "      prob        VaR         ES\n";
    for (std::size_t i = 0; i < rows.size(); ++i)
        os << strf("%zu  %8.4f  %9.4f  %9.4f\n", i + 1, rows[i].prob, rows[i].var_value,
                   rows[i].es_value);
    return os.str();
}

std::string risk_table_csv(const std::vector<RiskRow>& rows) {
    std::ostringstream os;
    os << "prob,var,es\n";
    for (const RiskRow& r : rows) os << strf("%.10g,%.10g,%.10g\n", r.prob, r.var_value, r.es_value);
    return os.str();
}

namespace {

// "Granger: cause -> effect" => {cause, effect}
std::pair<std::string, std::string> split_granger_name(const std::string& name) {
    const std::string prefix = "Granger: ";
    const std::string arrow = " -> ";
    const std::size_t a = name.find(prefix);
    const std::size_t b = name.find(arrow);
    if (a != 0 || b == std::string::npos) return {name, ""};
    return {name.substr(prefix.size(), b - prefix.size()), name.substr(b + arrow.size())};
}

}  // namespace

std::string granger_table_text(const std::vector<TestResult>& results) {
    std::ostringstream os;
    os << "Pair samples                         F          P\n";
    for (const TestResult& t : results) {
        const auto [cause, effect] = split_granger_name(t.name);
        os << strf("%-12s %-12s  %12.3f  %8.3f%s\n", cause.c_str(), effect.c_str(), t.statistic,
                   t.p_value, stars(t.p_value));
    }
    return os.str();
}

std::string granger_table_csv(const std::vector<TestResult>& results) {
    std::ostringstream os;
    os << "cause,effect,f_statistic,p_value,significance\n";
    for (const TestResult& t : results) {
        const auto [cause, effect] = split_granger_name(t.name);
        os << strf("%s,%s,%.10g,%.10g,%s\n", cause.c_str(), effect.c_str(), t.statistic, t.p_value,
                   stars(t.p_value));
    }
    return os.str();
}

std::string var_fit_text(const VarFit& fit) {
    std::ostringstream os;
    os << strf("VAR(%d) fit, %zu effective observations\n", fit.lag_order, fit.n_effective);
    const std::size_t k = fit.names.size();
    for (std::size_t i = 0; i < k; ++i) {
        os << "  " << fit.names[i] << " = ";
        for (int l = 0; l < fit.lag_order; ++l)
            for (std::size_t j = 0; j < k; ++j)
                os << strf("%+.6f*%s[t-%d] ", fit.coef[static_cast<std::size_t>(l)](i, j),
                           fit.names[j].c_str(), l + 1);
        os << strf("%+.6f\n", fit.intercepts[i]);
    }
    return os.str();
}

std::string stability_text(const StabilityReport& rep) {
    std::ostringstream os;
    os << "Companion matrix root moduli:";
    for (double m : rep.moduli) os << strf(" %.6f", m);
    os << "\n";
    os << (rep.stable ? "All roots inside the unit circle: the VAR system is stable.\n"
                      : "At least one root on or outside the unit circle: the VAR system is "
                        "not stable.\n");
    return os.str();
}

std::string roots_csv(const StabilityReport& rep) {
    std::ostringstream os;
    os << "real,imag,modulus\n";
    for (const auto& r : rep.roots)
        os << strf("%.10g,%.10g,%.10g\n", r.real(), r.imag(), std::abs(r));
    return os.str();
}

std::string irf_csv(const ImpulseResponse& impulse) {
    std::ostringstream os;
    os << "horizon,response_of,shock_in,value\n";
    const std::size_t k = impulse.ordering.size();
    for (int h = 0; h <= impulse.horizon; ++h)
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                os << strf("%d,%s,%s,%.10g\n", h, impulse.ordering[i].c_str(),
                           impulse.ordering[j].c_str(),
                           impulse.responses[static_cast<std::size_t>(h)](i, j));
    return os.str();
}

std::string fevd_text(const FevdTable& t) {
    std::ostringstream os;
    const std::size_t k = t.ordering.size();
    // one block per decomposed variable, matching the published layout
    for (std::size_t i = 0; i < k; ++i) {
        os << "Variance decomposition of " << t.ordering[i] << "\n";
        os << "Order  Standard deviation";
        for (std::size_t j = 0; j < k; ++j) os << strf("  %10s%%", t.ordering[j].c_str());
        os << "\n";
        for (std::size_t h = 0; h < t.shares.size(); ++h) {
            os << strf("%5zu  %18.6g", h + 1, t.forecast_std[h][i]);
            for (std::size_t j = 0; j < k; ++j) os << strf("  %11.3f", t.shares[h][i][j]);
            os << "\n";
        }
    }
    return os.str();
}

std::string fevd_csv(const FevdTable& t) {
    std::ostringstream os;
    const std::size_t k = t.ordering.size();
    os << "variable,order,standard_deviation";
    for (std::size_t j = 0; j < k; ++j) os << "," << t.ordering[j] << "_pct";
    os << "\n";
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t h = 0; h < t.shares.size(); ++h) {
            os << strf("%s,%zu,%.10g", t.ordering[i].c_str(), h + 1, t.forecast_std[h][i]);
            for (std::size_t j = 0; j < k; ++j) os << strf(",%.10g", t.shares[h][i][j]);
            os << "\n";
        }
    return os.str();
}

std::string var_forecast_csv(const std::vector<std::string>& names,
                             const std::vector<std::vector<double>>& paths) {
    std::ostringstream os;
    os << "step";
    for (const std::string& n : names) os << "," << n;
    os << "\n";
    const std::size_t h = paths.empty() ? 0 : paths.front().size();
    for (std::size_t s = 0; s < h; ++s) {
        os << (s + 1);
        for (const auto& p : paths) os << strf(",%.10g", p[s]);
        os << "\n";
    }
    return os.str();
}

}  // namespace quantset::render
