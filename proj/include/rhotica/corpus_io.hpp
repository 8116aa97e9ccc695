#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rhotica {

// One phone interval from a forced-aligner CTM line
// "<utt> <channel> <start> <dur> <symbol>". The channel is parsed and ignored.
struct PhoneTiming {
  std::string utterance;
  std::string symbol;
  double start = 0.0;     // seconds, >= 0
  double duration = 0.0;  // seconds, > 0
  bool operator==(const PhoneTiming&) const = default;
};

// Parses CTM text. Result is sorted by (utterance, start); overlapping
// intervals within an utterance are an error. All-or-nothing.
std::vector<PhoneTiming> parse_ctm(const std::string& text);
std::string serialize_ctm(const std::vector<PhoneTiming>& timings);
std::vector<PhoneTiming> timings_for(const std::vector<PhoneTiming>& timings,
                                     std::string_view utterance);

struct UtteranceRecord {
  std::string id;
  std::string audio;
  std::string text;
  bool operator==(const UtteranceRecord&) const = default;
};

struct SpeakerRecord {
  std::string id;
  std::string accent;
  std::vector<UtteranceRecord> utterances;
  bool operator==(const SpeakerRecord&) const = default;
};

// Speaker/accent/utterance catalog plus the donor and target-accent choice.
// Invariants: the donor exists and its accent differs from target_accent;
// utterance ids are unique per speaker.
struct CorpusManifest {
  std::vector<SpeakerRecord> speakers;
  std::string donor;
  std::string target_accent;

  const SpeakerRecord* find_speaker(std::string_view id) const;
  bool operator==(const CorpusManifest&) const = default;
};

CorpusManifest parse_manifest(const std::string& json_text);
CorpusManifest parse_manifest_file(const std::string& path);
std::string serialize_manifest(const CorpusManifest& manifest);

enum class ScoreKind { mushra, preference };
enum class Choice { a, b, tie };

struct ScoreRow {
  std::string listener;
  std::string testcase;
  std::string system;
  double score = 0.0;        // mushra kind: 0..100
  Choice choice = Choice::tie;  // preference kind
  bool operator==(const ScoreRow&) const = default;
};

struct ScoreTable {
  ScoreKind kind = ScoreKind::mushra;
  std::vector<ScoreRow> rows;
};

// CSV with the exact header "listener,testcase,system,score". For the mushra
// kind the score column is a real in [0,100]; for the preference kind it is
// one of A, B, tie. Duplicate (listener,testcase,system) rows are an error.
ScoreTable parse_scores(const std::string& csv_text, ScoreKind kind);
std::string serialize_scores(const ScoreTable& table);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

}  // namespace rhotica
