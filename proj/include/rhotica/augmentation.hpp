#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rhotica/corpus_io.hpp"

namespace rhotica {

// One voice-conversion work item: re-render a target-accent utterance in the
// donor's voice. The id is a content hash of (source speaker, utterance,
// donor), so re-planning the same manifest yields identical ids.
struct VcJob {
  std::string id;
  std::string source_speaker;
  std::string utterance;
  std::string audio;   // source audio path, verbatim from the manifest
  std::string donor;
  std::string output;  // relative output path
  bool operator==(const VcJob&) const = default;
};

// FNV-1a 64-bit, rendered as 16 hex digits.
std::string content_hash(std::string_view text);

// One job per (source speaker, utterance), ordered by (speaker id,
// utterance id). Empty source_speakers selects the single first
// target-accent speaker by id order.
std::vector<VcJob> plan_vc_jobs(const CorpusManifest& manifest,
                                const std::vector<std::string>& source_speakers = {});

std::string serialize_vc_jobs(const std::vector<VcJob>& jobs);          // JSON lines
std::vector<VcJob> parse_vc_jobs(const std::string& jsonl_text);

struct JobStatus {
  std::string id;
  bool ok = false;          // exit 0 and the output file exists
  int exit_code = -1;
  bool output_exists = false;
  bool operator==(const JobStatus&) const = default;
};

// Substitutes {input}, {output}, {donor} into the template and runs one
// shell command per job with bounded parallelism. Output directories are
// created first; failures never abort the batch. Statuses come back in the
// submitted job order.
std::vector<JobStatus> run_adapter(const std::vector<VcJob>& jobs,
                                   const std::string& adapter_template, int parallelism,
                                   const std::string& output_root);

std::string serialize_job_statuses(const std::vector<JobStatus>& statuses);  // JSON lines
std::vector<JobStatus> parse_job_statuses(const std::string& jsonl_text);

enum class EntryOrigin { recording, synthetic };

struct TrainingEntry {
  std::string speaker;
  std::string accent;
  std::string utterance;
  std::string audio;
  EntryOrigin origin = EntryOrigin::recording;
  bool operator==(const TrainingEntry&) const = default;
};

struct AccentTotals {
  long long recordings = 0;
  long long synthetic = 0;
  bool operator==(const AccentTotals&) const = default;
};

struct TrainingManifest {
  std::vector<TrainingEntry> entries;  // recordings first, then synthetic
  std::map<std::string, AccentTotals> totals;  // keyed by accent
};

// All recordings verbatim plus one synthetic (donor, target_accent) entry
// per completed job. Every job output must exist under output_root; missing
// ones are reported together in a single error.
TrainingManifest build_tts_corpus(const CorpusManifest& manifest,
                                  const std::vector<VcJob>& completed_jobs,
                                  const std::string& output_root);

std::string serialize_training_manifest(const TrainingManifest& manifest);

}  // namespace rhotica
