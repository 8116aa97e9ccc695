#pragma once

#include <string>

#include "json.hpp"
#include "rhotica/formant.hpp"
#include "rhotica/phoneme.hpp"

namespace rhotica {

// Everything tunable from the outside, bundled so reports can embed the
// exact values a run used.
struct ToolConfig {
  CostConfig cost;
  DspConfig dsp;
  double alpha = 0.05;

  void validate() const;
};

// Applies a partial JSON overlay onto base. Unknown keys are an error so a
// typo never silently keeps a default.
ToolConfig apply_config_overlay(ToolConfig base, const nlohmann::json& overlay);

ToolConfig parse_config(const std::string& json_text);

// Defaults, then the RHOTICA_CONFIG file when the variable is set and non-empty.
ToolConfig load_default_config();

nlohmann::ordered_json config_to_json(const ToolConfig& cfg);

}  // namespace rhotica
