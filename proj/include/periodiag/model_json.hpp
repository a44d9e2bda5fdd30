#pragma once

#include <string>

#include "periodiag/par.hpp"
#include "periodiag/sarima.hpp"

namespace periodiag {

/// JSON text for a fitted PAR model (fields mirror ParModel).
std::string par_model_to_json(const ParModel& model);
ParModel par_model_from_json(const std::string& text);

/// JSON text for a fitted seasonal ARMA model. Residuals are included so a
/// saved fit can be diagnosed without refitting.
std::string sarima_fit_to_json(const SarimaFit& fit);
SarimaFit sarima_fit_from_json(const std::string& text);

}  // namespace periodiag
