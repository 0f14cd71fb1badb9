#include "quantset/serialize.hpp"

#include "quantset/error.hpp"

#include <json.hpp>

#include <cmath>

namespace quantset {

namespace {

using nlohmann::json;

json coefficient_entry(const std::string& name, double value, double std_error) {
    return json{{"name", name}, {"value", value}, {"std_error", std_error}};
}

double require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw input_error(std::string("serialize: non-finite ") + what);
    return v;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw input_error("malformed JSON document");
    return j;
}

}  // namespace

std::string to_json(const TestResult& t) {
    json j;
    j["name"] = t.name;
    j["statistic"] = require_finite(t.statistic, "statistic");
    j["dof"] = t.dof;
    j["p_value"] = require_finite(t.p_value, "p_value");
    if (t.lag >= 0)
        j["lag"] = t.lag;
    else
        j["lag"] = nullptr;
    j["detail"] = t.detail;
    return dump(j);
}

std::string to_json(const ArmaFit& fit) {
    json coefs = json::array();
    for (int i = 0; i < fit.spec.p; ++i)
        coefs.push_back(coefficient_entry("ar" + std::to_string(i + 1),
                                          fit.ar[static_cast<std::size_t>(i)],
                                          fit.std_errors[static_cast<std::size_t>(i)]));
    for (int i = 0; i < fit.spec.q; ++i)
        coefs.push_back(coefficient_entry("ma" + std::to_string(i + 1),
                                          fit.ma[static_cast<std::size_t>(i)],
                                          fit.std_errors[static_cast<std::size_t>(fit.spec.p + i)]));
    if (fit.spec.include_mean)
        coefs.push_back(coefficient_entry("mean", fit.mean_c, fit.std_errors.back()));

    json j;
    j["model"] = "arma";
    j["p"] = fit.spec.p;
    j["q"] = fit.spec.q;
    j["include_mean"] = fit.spec.include_mean;
    j["coefficients"] = coefs;
    j["sigma2"] = require_finite(fit.sigma2, "sigma2");
    j["log_lik"] = require_finite(fit.log_lik, "log_lik");
    j["aic"] = require_finite(fit.aic, "aic");
    j["bic"] = require_finite(fit.bic, "bic");
    j["n"] = fit.n;
    return dump(j);
}

std::string to_json(const GarchFit& fit) {
    json coefs = json::array();
    coefs.push_back(coefficient_entry("alpha0", fit.alpha0, fit.std_errors[0]));
    for (int i = 0; i < fit.q_arch; ++i)
        coefs.push_back(coefficient_entry("alpha" + std::to_string(i + 1),
                                          fit.alpha[static_cast<std::size_t>(i)],
                                          fit.std_errors[static_cast<std::size_t>(1 + i)]));
    for (int j = 0; j < fit.p_garch; ++j)
        coefs.push_back(
            coefficient_entry("beta" + std::to_string(j + 1), fit.beta[static_cast<std::size_t>(j)],
                              fit.std_errors[static_cast<std::size_t>(1 + fit.q_arch + j)]));
    json j;
    j["model"] = "garch";
    j["q_arch"] = fit.q_arch;
    j["p_garch"] = fit.p_garch;
    j["coefficients"] = coefs;
    j["persistence"] = require_finite(fit.persistence, "persistence");
    j["log_lik"] = require_finite(fit.log_lik, "log_lik");
    j["n"] = fit.n;
    return dump(j);
}

std::string to_json(const EgarchFit& fit) {
    json coefs = json::array();
    coefs.push_back(coefficient_entry("omega", fit.omega, fit.std_errors[0]));
    coefs.push_back(coefficient_entry("beta", fit.beta_lnh, fit.std_errors[1]));
    coefs.push_back(coefficient_entry("alpha", fit.alpha_mag, fit.std_errors[2]));
    coefs.push_back(coefficient_entry("gamma", fit.gamma_sign, fit.std_errors[3]));
    json j;
    j["model"] = "egarch";
    j["coefficients"] = coefs;
    j["log_lik"] = require_finite(fit.log_lik, "log_lik");
    j["n"] = fit.n;
    return dump(j);
}

ArmaFit arma_fit_from_json(const std::string& text) {
    const json j = parse(text);
    if (j.value("model", "") != "arma") throw input_error("not an ARMA fit document");
    ArmaFit fit;
    fit.spec.p = j.at("p").get<int>();
    fit.spec.q = j.at("q").get<int>();
    fit.spec.include_mean = j.at("include_mean").get<bool>();
    fit.sigma2 = j.at("sigma2").get<double>();
    fit.log_lik = j.at("log_lik").get<double>();
    fit.aic = j.at("aic").get<double>();
    fit.bic = j.at("bic").get<double>();
    fit.n = j.at("n").get<std::size_t>();
    fit.converged = true;

    fit.ar.assign(static_cast<std::size_t>(fit.spec.p), 0.0);
    fit.ma.assign(static_cast<std::size_t>(fit.spec.q), 0.0);
    fit.std_errors.assign(
        static_cast<std::size_t>(fit.spec.p + fit.spec.q) + (fit.spec.include_mean ? 1 : 0), 0.0);
    for (const json& c : j.at("coefficients")) {
        const std::string name = c.at("name").get<std::string>();
        const double value = c.at("value").get<double>();
        const double se = c.at("std_error").get<double>();
        if (name == "mean") {
            fit.mean_c = value;
            fit.std_errors.back() = se;
        } else if (name.rfind("ar", 0) == 0) {
            const std::size_t idx = std::stoul(name.substr(2)) - 1;
            fit.ar[idx] = value;
            fit.std_errors[idx] = se;
        } else if (name.rfind("ma", 0) == 0) {
            const std::size_t idx = std::stoul(name.substr(2)) - 1;
            fit.ma[idx] = value;
            fit.std_errors[static_cast<std::size_t>(fit.spec.p) + idx] = se;
        } else {
            throw input_error("unknown coefficient '" + name + "' in ARMA fit document");
        }
    }
    return fit;
}

GarchFit garch_fit_from_json(const std::string& text) {
    const json j = parse(text);
    if (j.value("model", "") != "garch") throw input_error("not a GARCH fit document");
    GarchFit fit;
    fit.q_arch = j.at("q_arch").get<int>();
    fit.p_garch = j.at("p_garch").get<int>();
    fit.persistence = j.at("persistence").get<double>();
    fit.log_lik = j.at("log_lik").get<double>();
    fit.n = j.at("n").get<std::size_t>();
    fit.converged = true;
    fit.alpha.assign(static_cast<std::size_t>(fit.q_arch), 0.0);
    fit.beta.assign(static_cast<std::size_t>(fit.p_garch), 0.0);
    fit.std_errors.assign(static_cast<std::size_t>(1 + fit.q_arch + fit.p_garch), 0.0);
    for (const json& c : j.at("coefficients")) {
        const std::string name = c.at("name").get<std::string>();
        const double value = c.at("value").get<double>();
        const double se = c.at("std_error").get<double>();
        if (name == "alpha0") {
            fit.alpha0 = value;
            fit.std_errors[0] = se;
        } else if (name.rfind("alpha", 0) == 0) {
            const std::size_t idx = std::stoul(name.substr(5)) - 1;
            fit.alpha[idx] = value;
            fit.std_errors[1 + idx] = se;
        } else if (name.rfind("beta", 0) == 0) {
            const std::size_t idx = std::stoul(name.substr(4)) - 1;
            fit.beta[idx] = value;
            fit.std_errors[1 + static_cast<std::size_t>(fit.q_arch) + idx] = se;
        } else {
            throw input_error("unknown coefficient '" + name + "' in GARCH fit document");
        }
    }
    return fit;
}

EgarchFit egarch_fit_from_json(const std::string& text) {
    const json j = parse(text);
    if (j.value("model", "") != "egarch") throw input_error("not an eGARCH fit document");
    EgarchFit fit;
    fit.log_lik = j.at("log_lik").get<double>();
    fit.n = j.at("n").get<std::size_t>();
    fit.converged = true;
    fit.std_errors.assign(4, 0.0);
    for (const json& c : j.at("coefficients")) {
        const std::string name = c.at("name").get<std::string>();
        const double value = c.at("value").get<double>();
        const double se = c.at("std_error").get<double>();
        if (name == "omega") {
            fit.omega = value;
            fit.std_errors[0] = se;
        } else if (name == "beta") {
            fit.beta_lnh = value;
            fit.std_errors[1] = se;
        } else if (name == "alpha") {
            fit.alpha_mag = value;
            fit.std_errors[2] = se;
        } else if (name == "gamma") {
            fit.gamma_sign = value;
            fit.std_errors[3] = se;
        } else {
            throw input_error("unknown coefficient '" + name + "' in eGARCH fit document");
        }
    }
    return fit;
}

FitRiskInputs risk_inputs_from_fit_json(const std::string& text) {
    const json j = parse(text);
    const std::string model = j.value("model", "");
    FitRiskInputs out;
    out.source_model = model;
    if (model == "arma") {
        const ArmaFit fit = arma_fit_from_json(text);
        out.mu = fit.mean_c;
        // unconditional process variance sigma2 * sum psi_j^2, truncated far out
        const std::vector<double> psi = psi_weights(fit.ar, fit.ma, 2000);
        double s = 0.0;
        for (double w : psi) s += w * w;
        out.sigma = std::sqrt(fit.sigma2 * s);
    } else if (model == "garch") {
        const GarchFit fit = garch_fit_from_json(text);
        if (fit.persistence >= 1.0)
            throw input_error("risk inputs: GARCH fit has persistence >= 1");
        out.mu = 0.0;
        out.sigma = std::sqrt(fit.unconditional_variance());
    } else if (model == "egarch") {
        const EgarchFit fit = egarch_fit_from_json(text);
        if (std::fabs(fit.beta_lnh) >= 1.0)
            throw input_error("risk inputs: eGARCH fit has |beta| >= 1");
        out.mu = 0.0;
        out.sigma = std::exp(0.5 * fit.omega / (1.0 - fit.beta_lnh));
    } else {
        throw input_error("risk inputs: unrecognized fit document");
    }
    return out;
}

}  // namespace quantset
