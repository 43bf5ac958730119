#pragma once

#include <json.hpp>
#include <string>

#include "dftstat/simulate.hpp"

namespace dftstat::cli {

/// Declarative model file, e.g.
///   {"family": "arma", "ar": [0.8], "ma": []}
///   {"family": "changepoint_ar", "segments": [{"until": 0.5, "ar": [0.8]}, {"until": 1, "ar": [0.6]}]}
///   {"family": "tv_innovation_ar", "ar": [0.8], "sigma": {...}}
///   {"family": "modulated_noise", "sigma": {...}}
/// with sigma one of
///   {"type": "constant", "value": 1}
///   {"type": "piecewise", "values": [...], "edges": [...]}   (edges optional: equal widths)
///   {"type": "harmonic", "offset": 0.5, "sin": 1, "cos": 0.3, "cycles": 1}
/// and an optional "reference_length" next to "type".
ModelSpec model_from_json(const nlohmann::json& doc);
nlohmann::json model_to_json(const ModelSpec& spec);

struct ResolvedModel {
    std::string name;  ///< preset name or file path
    ModelSpec spec;
};

/// A preset name ("model1".."model6") or the path of a model file.
ResolvedModel resolve_model(const std::string& name_or_path);

}  // namespace dftstat::cli
