#pragma once

#include "quantset/arma.hpp"
#include "quantset/garch.hpp"
#include "quantset/stattests.hpp"

#include <string>

namespace quantset {

/// JSON encodings. Each returns a pretty-printed document ending in a newline;
/// serializing, parsing and re-serializing is byte-identical.
std::string to_json(const TestResult& t);
std::string to_json(const ArmaFit& fit);
std::string to_json(const GarchFit& fit);
std::string to_json(const EgarchFit& fit);

/// Readers for the serialized fit schemas. Sample-dependent paths (residuals,
/// conditional variances) are not part of the schema and stay empty.
ArmaFit arma_fit_from_json(const std::string& text);
GarchFit garch_fit_from_json(const std::string& text);
EgarchFit egarch_fit_from_json(const std::string& text);

/// Location parameters implied by a serialized fit, for the risk table command:
/// an ARMA fit contributes its mean and unconditional process volatility, a
/// GARCH fit zero mean and the unconditional standard deviation.
struct FitRiskInputs {
    double mu = 0.0;
    double sigma = 0.0;
    std::string source_model;
};

FitRiskInputs risk_inputs_from_fit_json(const std::string& text);

}  // namespace quantset
