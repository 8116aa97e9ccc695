#include "rhotica/config_io.hpp"

#include <cstdlib>

#include "rhotica/corpus_io.hpp"
#include "rhotica/errors.hpp"

namespace rhotica {

namespace {

void reject_unknown_keys(const nlohmann::json& obj, std::initializer_list<const char*> known,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* k : known)
      if (key == k) ok = true;
    if (!ok) throw ParseError("config: unknown key \"" + key + "\" in " + where);
  }
}

double number_at(const nlohmann::json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ParseError(std::string("config: ") + key + " must be a number");
  return v.get<double>();
}

int integer_at(const nlohmann::json& obj, const char* key, int fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) throw ParseError(std::string("config: ") + key + " must be an integer");
  return v.get<int>();
}

}  // namespace

void ToolConfig::validate() const {
  cost.validate();
  dsp.validate();
  if (!(alpha > 0.0) || !(alpha < 1.0)) throw ValidationError("config: alpha must be in (0,1)");
}

ToolConfig apply_config_overlay(ToolConfig base, const nlohmann::json& overlay) {
  if (!overlay.is_object()) throw ParseError("config: top level must be a JSON object");
  reject_unknown_keys(overlay, {"cost", "dsp", "alpha"}, "the top level");

  if (overlay.contains("cost")) {
    const auto& c = overlay.at("cost");
    if (!c.is_object()) throw ParseError("config: cost must be an object");
    reject_unknown_keys(c,
                        {"consonant_place", "consonant_manner", "consonant_voiced", "vowel_height",
                         "vowel_backness", "vowel_rounded", "vowel_long", "vowel_rhotic",
                         "cross_kind_cost", "indel_cost"},
                        "cost");
    base.cost.consonant_place = number_at(c, "consonant_place", base.cost.consonant_place);
    base.cost.consonant_manner = number_at(c, "consonant_manner", base.cost.consonant_manner);
    base.cost.consonant_voiced = number_at(c, "consonant_voiced", base.cost.consonant_voiced);
    base.cost.vowel_height = number_at(c, "vowel_height", base.cost.vowel_height);
    base.cost.vowel_backness = number_at(c, "vowel_backness", base.cost.vowel_backness);
    base.cost.vowel_rounded = number_at(c, "vowel_rounded", base.cost.vowel_rounded);
    base.cost.vowel_long = number_at(c, "vowel_long", base.cost.vowel_long);
    base.cost.vowel_rhotic = number_at(c, "vowel_rhotic", base.cost.vowel_rhotic);
    base.cost.cross_kind_cost = number_at(c, "cross_kind_cost", base.cost.cross_kind_cost);
    base.cost.indel_cost = number_at(c, "indel_cost", base.cost.indel_cost);
  }
  if (overlay.contains("dsp")) {
    const auto& d = overlay.at("dsp");
    if (!d.is_object()) throw ParseError("config: dsp must be an object");
    reject_unknown_keys(
        d, {"frame_ms", "hop_ms", "preemphasis", "lpc_order", "max_bandwidth_hz", "min_freq_hz"},
        "dsp");
    base.dsp.frame_ms = number_at(d, "frame_ms", base.dsp.frame_ms);
    base.dsp.hop_ms = number_at(d, "hop_ms", base.dsp.hop_ms);
    base.dsp.preemphasis = number_at(d, "preemphasis", base.dsp.preemphasis);
    base.dsp.lpc_order = integer_at(d, "lpc_order", base.dsp.lpc_order);
    base.dsp.max_bandwidth_hz = number_at(d, "max_bandwidth_hz", base.dsp.max_bandwidth_hz);
    base.dsp.min_freq_hz = number_at(d, "min_freq_hz", base.dsp.min_freq_hz);
  }
  base.alpha = number_at(overlay, "alpha", base.alpha);
  base.validate();
  return base;
}

ToolConfig parse_config(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  return apply_config_overlay(ToolConfig{}, doc);
}

ToolConfig load_default_config() {
  const char* path = std::getenv("RHOTICA_CONFIG");
  if (!path || *path == '\0') return ToolConfig{};
  return parse_config(read_text_file(path));
}

nlohmann::ordered_json config_to_json(const ToolConfig& cfg) {
  return {{"cost",
           {{"consonant_place", cfg.cost.consonant_place},
            {"consonant_manner", cfg.cost.consonant_manner},
            {"consonant_voiced", cfg.cost.consonant_voiced},
            {"vowel_height", cfg.cost.vowel_height},
            {"vowel_backness", cfg.cost.vowel_backness},
            {"vowel_rounded", cfg.cost.vowel_rounded},
            {"vowel_long", cfg.cost.vowel_long},
            {"vowel_rhotic", cfg.cost.vowel_rhotic},
            {"cross_kind_cost", cfg.cost.cross_kind_cost},
            {"indel_cost", cfg.cost.indel_cost}}},
          {"dsp",
           {{"frame_ms", cfg.dsp.frame_ms},
            {"hop_ms", cfg.dsp.hop_ms},
            {"preemphasis", cfg.dsp.preemphasis},
            {"lpc_order", cfg.dsp.lpc_order},
            {"max_bandwidth_hz", cfg.dsp.max_bandwidth_hz},
            {"min_freq_hz", cfg.dsp.min_freq_hz}}},
          {"alpha", cfg.alpha}};
}

}  // namespace rhotica
