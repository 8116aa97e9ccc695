#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rhotica {

enum class PhonemeKind { vowel, consonant };

// Articulatory feature bundle. Symbols are opaque X-SAMPA-style strings;
// all features come from the inventory file, never from the symbol text.
// Ordinal features use -1 as the "not applicable" sentinel: consonants carry
// place/manner/voiced, vowels carry height/backness/rounded/long. The rhotic
// flag is meaningful for both kinds (/r/-quality consonants and rhotacized
// vowels such as "3`").
struct Phoneme {
  std::string symbol;
  PhonemeKind kind = PhonemeKind::consonant;
  bool voiced = false;
  int place = -1;     // 0 bilabial .. 8 glottal
  int manner = -1;    // 0 stop .. 6 tap
  int height = -1;    // 0 close .. 3 open
  int backness = -1;  // 0 front .. 2 back
  bool rounded = false;
  bool is_long = false;
  bool rhotic = false;

  bool is_vowel() const { return kind == PhonemeKind::vowel; }

  // True when every feature that participates in distance for this kind
  // matches. Symbols are not compared.
  bool same_features(const Phoneme& other) const;
};

struct PhonemeInventory {
  std::string accent;
  std::vector<Phoneme> phonemes;  // sorted by symbol, symbols unique

  const Phoneme* find(std::string_view symbol) const;
  const Phoneme& at(std::string_view symbol) const;  // throws ValidationError
};

// Weights for the graded similarity cost. Consonant and vowel weight groups
// each sum to 1 (checked to 1e-9).
struct CostConfig {
  double consonant_place = 0.35;
  double consonant_manner = 0.35;
  double consonant_voiced = 0.30;
  double vowel_height = 0.30;
  double vowel_backness = 0.30;
  double vowel_rounded = 0.10;
  double vowel_long = 0.10;
  double vowel_rhotic = 0.20;
  double cross_kind_cost = 1.0;  // in (0, 1]
  double indel_cost = 0.7;       // > 0

  void validate() const;  // throws ValidationError
};

struct TokenEntry {
  std::string accent;
  std::string symbol;
  int token = 0;
};

// Cross-accent shared token ids: identical symbols map to identical ids,
// ids are dense 0..N-1 in lexicographic symbol order.
struct UnifiedTokenMap {
  std::vector<TokenEntry> entries;           // sorted by (accent, symbol)
  std::map<std::string, int> symbol_tokens;  // symbol -> id
  int token_count = 0;

  std::optional<int> token_for(std::string_view accent, std::string_view symbol) const;
};

PhonemeInventory load_inventory(const std::string& json_text);
PhonemeInventory load_inventory_file(const std::string& path);
std::string serialize_inventory(const PhonemeInventory& inventory);

UnifiedTokenMap unify_tokens(const std::vector<PhonemeInventory>& inventories);

// Symmetric, in [0,1], zero iff same_features(). Cross-kind pairs cost
// cfg.cross_kind_cost; same-kind pairs are the weighted sum of normalized
// feature mismatches (|delta|/range for ordinals, 0/1 for booleans).
double phoneme_distance(const Phoneme& a, const Phoneme& b, const CostConfig& cfg);

// Resolves space-separated symbols against an inventory. Word/syllable
// boundary marks (".", "#", "|", "-", "_") are stripped; unknown symbols
// raise ValidationError.
std::vector<Phoneme> parse_sequence(const std::string& text, const PhonemeInventory& inventory);

}  // namespace rhotica
