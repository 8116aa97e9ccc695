#include "rhotica/phoneme.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "rhotica/errors.hpp"

namespace rhotica {

namespace {

constexpr double kPlaceRange = 8.0;
constexpr double kMannerRange = 6.0;
constexpr double kHeightRange = 3.0;
constexpr double kBacknessRange = 2.0;

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string locus(std::size_t index, const std::string& symbol) {
  std::ostringstream os;
  os << "phonemes[" << index << "]";
  if (!symbol.empty()) os << " ('" << symbol << "')";
  return os.str();
}

int require_ordinal(const json& entry, const char* field, int lo, int hi,
                    std::size_t index, const std::string& symbol) {
  if (!entry.contains(field) || entry[field].is_null())
    throw ParseError(locus(index, symbol) + ": missing feature '" + field + "'");
  if (!entry[field].is_number_integer())
    throw ParseError(locus(index, symbol) + ": feature '" + field + "' must be an integer");
  int v = entry[field].get<int>();
  if (v < lo || v > hi)
    throw ParseError(locus(index, symbol) + ": feature '" + field + "' out of range " +
                     std::to_string(lo) + ".." + std::to_string(hi) + " (got " +
                     std::to_string(v) + ")");
  return v;
}

bool optional_flag(const json& entry, const char* field, bool fallback,
                   std::size_t index, const std::string& symbol) {
  if (!entry.contains(field) || entry[field].is_null()) return fallback;
  if (!entry[field].is_boolean())
    throw ParseError(locus(index, symbol) + ": feature '" + field + "' must be a boolean");
  return entry[field].get<bool>();
}

void reject_feature(const json& entry, const char* field, std::size_t index,
                    const std::string& symbol, const char* kind) {
  if (entry.contains(field) && !entry[field].is_null())
    throw ParseError(locus(index, symbol) + ": feature '" + field + "' is not applicable to a " +
                     kind);
}

Phoneme parse_phoneme(const json& entry, std::size_t index) {
  if (!entry.is_object()) throw ParseError(locus(index, "") + ": expected an object");
  if (!entry.contains("symbol") || !entry["symbol"].is_string())
    throw ParseError(locus(index, "") + ": missing string field 'symbol'");
  Phoneme p;
  p.symbol = entry["symbol"].get<std::string>();
  if (p.symbol.empty()) throw ParseError(locus(index, "") + ": empty symbol");

  static const std::set<std::string> known = {"symbol",   "kind",    "voiced", "place",
                                              "manner",   "height",  "backness",
                                              "rounded",  "long",    "rhotic"};
  for (const auto& [key, value] : entry.items()) {
    (void)value;
    if (!known.count(key))
      throw ParseError(locus(index, p.symbol) + ": unknown field '" + key + "'");
  }

  if (!entry.contains("kind") || !entry["kind"].is_string())
    throw ParseError(locus(index, p.symbol) + ": missing string field 'kind'");
  const std::string kind = entry["kind"].get<std::string>();
  if (kind == "vowel") {
    p.kind = PhonemeKind::vowel;
  } else if (kind == "consonant") {
    p.kind = PhonemeKind::consonant;
  } else {
    throw ParseError(locus(index, p.symbol) + ": unknown kind '" + kind + "'");
  }

  p.rhotic = optional_flag(entry, "rhotic", false, index, p.symbol);
  if (p.kind == PhonemeKind::consonant) {
    reject_feature(entry, "height", index, p.symbol, "consonant");
    reject_feature(entry, "backness", index, p.symbol, "consonant");
    reject_feature(entry, "rounded", index, p.symbol, "consonant");
    reject_feature(entry, "long", index, p.symbol, "consonant");
    p.place = require_ordinal(entry, "place", 0, 8, index, p.symbol);
    p.manner = require_ordinal(entry, "manner", 0, 6, index, p.symbol);
    if (!entry.contains("voiced") || entry["voiced"].is_null())
      throw ParseError(locus(index, p.symbol) + ": missing feature 'voiced'");
    p.voiced = optional_flag(entry, "voiced", false, index, p.symbol);
  } else {
    reject_feature(entry, "place", index, p.symbol, "vowel");
    reject_feature(entry, "manner", index, p.symbol, "vowel");
    p.height = require_ordinal(entry, "height", 0, 3, index, p.symbol);
    p.backness = require_ordinal(entry, "backness", 0, 2, index, p.symbol);
    p.rounded = optional_flag(entry, "rounded", false, index, p.symbol);
    p.is_long = optional_flag(entry, "long", false, index, p.symbol);
    if (!optional_flag(entry, "voiced", true, index, p.symbol))
      throw ParseError(locus(index, p.symbol) + ": vowels are voiced");
    p.voiced = true;
  }
  return p;
}

}  // namespace

bool Phoneme::same_features(const Phoneme& other) const {
  if (kind != other.kind) return false;
  if (kind == PhonemeKind::consonant)
    return place == other.place && manner == other.manner && voiced == other.voiced;
  return height == other.height && backness == other.backness && rounded == other.rounded &&
         is_long == other.is_long && rhotic == other.rhotic;
}

const Phoneme* PhonemeInventory::find(std::string_view symbol) const {
  auto it = std::lower_bound(phonemes.begin(), phonemes.end(), symbol,
                             [](const Phoneme& p, std::string_view s) { return p.symbol < s; });
  if (it == phonemes.end() || it->symbol != symbol) return nullptr;
  return &*it;
}

const Phoneme& PhonemeInventory::at(std::string_view symbol) const {
  const Phoneme* p = find(symbol);
  if (!p)
    throw ValidationError("symbol '" + std::string(symbol) + "' not in inventory '" + accent +
                          "'");
  return *p;
}

void CostConfig::validate() const {
  const double cw[] = {consonant_place, consonant_manner, consonant_voiced};
  const double vw[] = {vowel_height, vowel_backness, vowel_rounded, vowel_long, vowel_rhotic};
  double csum = 0.0, vsum = 0.0;
  for (double w : cw) {
    if (w < 0.0) throw ValidationError("consonant weights must be non-negative");
    csum += w;
  }
  for (double w : vw) {
    if (w < 0.0) throw ValidationError("vowel weights must be non-negative");
    vsum += w;
  }
  if (std::abs(csum - 1.0) > 1e-9)
    throw ValidationError("consonant weights must sum to 1 (got " + std::to_string(csum) + ")");
  if (std::abs(vsum - 1.0) > 1e-9)
    throw ValidationError("vowel weights must sum to 1 (got " + std::to_string(vsum) + ")");
  if (!(cross_kind_cost > 0.0 && cross_kind_cost <= 1.0))
    throw ValidationError("cross_kind_cost must be in (0, 1]");
  if (!(indel_cost > 0.0)) throw ValidationError("indel_cost must be positive");
}

std::optional<int> UnifiedTokenMap::token_for(std::string_view accent,
                                              std::string_view symbol) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), std::tie(accent, symbol),
                             [](const TokenEntry& e, const auto& key) {
                               return std::tie(e.accent, e.symbol) < key;
                             });
  if (it == entries.end() || it->accent != accent || it->symbol != symbol) return std::nullopt;
  return it->token;
}

PhonemeInventory load_inventory(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("inventory JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("inventory JSON: expected a top-level object");
  if (!doc.contains("accent") || !doc["accent"].is_string() ||
      doc["accent"].get<std::string>().empty())
    throw ParseError("inventory JSON: missing non-empty string field 'accent'");
  if (!doc.contains("phonemes") || !doc["phonemes"].is_array())
    throw ParseError("inventory JSON: missing array field 'phonemes'");

  PhonemeInventory inv;
  inv.accent = doc["accent"].get<std::string>();
  const auto& arr = doc["phonemes"];
  if (arr.empty()) throw ValidationError("inventory '" + inv.accent + "' is empty");

  inv.phonemes.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) inv.phonemes.push_back(parse_phoneme(arr[i], i));

  std::sort(inv.phonemes.begin(), inv.phonemes.end(),
            [](const Phoneme& a, const Phoneme& b) { return a.symbol < b.symbol; });
  for (std::size_t i = 1; i < inv.phonemes.size(); ++i) {
    if (inv.phonemes[i].symbol == inv.phonemes[i - 1].symbol)
      throw ValidationError("inventory '" + inv.accent + "': duplicate symbol '" +
                            inv.phonemes[i].symbol + "'");
  }
  return inv;
}

PhonemeInventory load_inventory_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open inventory file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return load_inventory(buf.str());
  } catch (const Error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string serialize_inventory(const PhonemeInventory& inventory) {
  ordered_json doc;
  doc["accent"] = inventory.accent;
  doc["phonemes"] = ordered_json::array();
  for (const Phoneme& p : inventory.phonemes) {
    ordered_json e;
    e["symbol"] = p.symbol;
    if (p.kind == PhonemeKind::consonant) {
      e["kind"] = "consonant";
      e["voiced"] = p.voiced;
      e["place"] = p.place;
      e["manner"] = p.manner;
    } else {
      e["kind"] = "vowel";
      e["height"] = p.height;
      e["backness"] = p.backness;
      e["rounded"] = p.rounded;
      e["long"] = p.is_long;
    }
    e["rhotic"] = p.rhotic;
    doc["phonemes"].push_back(std::move(e));
  }
  return doc.dump(2) + "\n";
}

UnifiedTokenMap unify_tokens(const std::vector<PhonemeInventory>& inventories) {
  if (inventories.empty()) throw ValidationError("unify_tokens: need at least one inventory");
  std::set<std::string> accents;
  for (const auto& inv : inventories) {
    if (!accents.insert(inv.accent).second)
      throw ValidationError("unify_tokens: duplicate accent tag '" + inv.accent + "'");
  }

  UnifiedTokenMap map;
  std::set<std::string> symbols;
  for (const auto& inv : inventories)
    for (const auto& p : inv.phonemes) symbols.insert(p.symbol);
  int next = 0;
  for (const auto& s : symbols) map.symbol_tokens.emplace(s, next++);
  map.token_count = next;

  for (const auto& inv : inventories)
    for (const auto& p : inv.phonemes)
      map.entries.push_back({inv.accent, p.symbol, map.symbol_tokens.at(p.symbol)});
  std::sort(map.entries.begin(), map.entries.end(), [](const TokenEntry& a, const TokenEntry& b) {
    return std::tie(a.accent, a.symbol) < std::tie(b.accent, b.symbol);
  });
  return map;
}

double phoneme_distance(const Phoneme& a, const Phoneme& b, const CostConfig& cfg) {
  if (a.kind != b.kind) return cfg.cross_kind_cost;
  if (a.kind == PhonemeKind::consonant) {
    return cfg.consonant_place * (std::abs(a.place - b.place) / kPlaceRange) +
           cfg.consonant_manner * (std::abs(a.manner - b.manner) / kMannerRange) +
           cfg.consonant_voiced * (a.voiced != b.voiced ? 1.0 : 0.0);
  }
  return cfg.vowel_height * (std::abs(a.height - b.height) / kHeightRange) +
         cfg.vowel_backness * (std::abs(a.backness - b.backness) / kBacknessRange) +
         cfg.vowel_rounded * (a.rounded != b.rounded ? 1.0 : 0.0) +
         cfg.vowel_long * (a.is_long != b.is_long ? 1.0 : 0.0) +
         cfg.vowel_rhotic * (a.rhotic != b.rhotic ? 1.0 : 0.0);
}

std::vector<Phoneme> parse_sequence(const std::string& text, const PhonemeInventory& inventory) {
  static const std::set<std::string> boundaries = {".", "#", "|", "-", "_"};
  std::vector<Phoneme> seq;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (boundaries.count(tok)) continue;
    seq.push_back(inventory.at(tok));
  }
  return seq;
}

}  // namespace rhotica
