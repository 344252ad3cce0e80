#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "seucal/calibration.hpp"
#include "seucal/gamble.hpp"
#include "seucal/oracle.hpp"
#include "seucal/utility.hpp"

namespace seucal::io {

/// Scenario documents are JSON objects:
///
///     {
///       "r":      {"alpha": 2, "beta": 2},
///       "r_hat":  {"alpha": 1, "beta": 1},
///       "wealth": {"lo": -10, "hi": 10, "step": 0.05},   // or [w1, w2, ...]
///       "tolerance": 1e-9,          // optional
///       "belief_grid_step": 0.001,  // optional
///       "k_max": 512                // optional
///     }
///
/// Unknown keys, missing required keys and non-numeric values are
/// ParseError; values that parse but violate an invariant raise the
/// corresponding validation error.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);

nlohmann::json scenario_to_json(const Scenario& s);
std::string dump_scenario(const Scenario& s);

nlohmann::json utility_to_json(const PiecewiseUtility& u);
PiecewiseUtility utility_from_json(const nlohmann::json& j);

/// {"scenario": ..., "witness": {kind, belief, shift, utility, margins}}
nlohmann::json certificate_to_json(const WitnessCertificate& cert, const Scenario& scenario);

/// {"scenario": ..., "evidence": {mu, flip_wealth, margin, nodes, values}}
nlohmann::json evidence_to_json(const OracleEvidence& ev, const Scenario& scenario);

/// Writes `text` to `path`, throwing IoError on failure.
void write_file(const std::string& path, const std::string& text);

}  // namespace seucal::io
