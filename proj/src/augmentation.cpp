#include "rhotica/augmentation.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "rhotica/errors.hpp"

#ifndef _WIN32
#include <sys/wait.h>
#endif

namespace fs = std::filesystem;

namespace rhotica {

namespace {

std::string sanitize_path_piece(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                      (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
    out.push_back(keep ? c : '_');
  }
  if (out.empty() || out.front() == '.') out.insert(out.begin(), '_');
  return out;
}

std::string shell_quote(std::string_view s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'')
      out += "'\\''";
    else
      out.push_back(c);
  }
  out.push_back('\'');
  return out;
}

void replace_all(std::string& text, std::string_view needle, std::string_view value) {
  std::size_t pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    text.replace(pos, needle.size(), value);
    pos += value.size();
  }
}

// First whitespace-delimited token of the template, for the existence check.
std::string leading_command(const std::string& tmpl) {
  std::size_t start = tmpl.find_first_not_of(" \t");
  if (start == std::string::npos) return {};
  std::size_t end = tmpl.find_first_of(" \t", start);
  return tmpl.substr(start, end == std::string::npos ? std::string::npos : end - start);
}

bool command_exists(const std::string& cmd) {
  if (cmd.empty()) return false;
  if (cmd.find('/') != std::string::npos) {
    std::error_code ec;
    return fs::exists(cmd, ec);
  }
  const char* path = std::getenv("PATH");
  if (!path) return false;
  std::stringstream ss{std::string(path)};
  std::string dir;
  while (std::getline(ss, dir, ':')) {
    if (dir.empty()) continue;
    std::error_code ec;
    if (fs::exists(fs::path(dir) / cmd, ec)) return true;
  }
  return false;
}

int run_command(const std::string& cmd) {
  const int rc = std::system(cmd.c_str());
#ifndef _WIN32
  if (rc == -1) return -1;
  if (WIFEXITED(rc)) return WEXITSTATUS(rc);
  if (WIFSIGNALED(rc)) return 128 + WTERMSIG(rc);
  return -1;
#else
  return rc;
#endif
}

nlohmann::ordered_json job_to_json(const VcJob& job) {
  return {{"id", job.id},
          {"source_speaker", job.source_speaker},
          {"utterance", job.utterance},
          {"audio", job.audio},
          {"donor", job.donor},
          {"output", job.output}};
}

}  // namespace

std::string content_hash(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

std::vector<VcJob> plan_vc_jobs(const CorpusManifest& manifest,
                                const std::vector<std::string>& source_speakers) {
  std::vector<std::string> selected = source_speakers;
  if (selected.empty()) {
    for (const auto& sp : manifest.speakers)
      if (sp.accent == manifest.target_accent) selected.push_back(sp.id);
    if (selected.empty())
      throw ValidationError("plan_vc_jobs: manifest has no speaker with accent " +
                            manifest.target_accent);
    std::sort(selected.begin(), selected.end());
    selected.resize(1);
  } else {
    std::set<std::string> seen;
    for (const auto& id : selected) {
      if (!seen.insert(id).second)
        throw ValidationError("plan_vc_jobs: source speaker listed twice: " + id);
      const SpeakerRecord* sp = manifest.find_speaker(id);
      if (!sp) throw ValidationError("plan_vc_jobs: unknown source speaker: " + id);
      if (sp->accent != manifest.target_accent)
        throw ValidationError("plan_vc_jobs: speaker " + id + " has accent " + sp->accent +
                              ", expected " + manifest.target_accent);
    }
    std::sort(selected.begin(), selected.end());
  }

  std::vector<VcJob> jobs;
  std::set<std::string> outputs;
  for (const auto& speaker_id : selected) {
    const SpeakerRecord* sp = manifest.find_speaker(speaker_id);
    std::vector<const UtteranceRecord*> utts;
    utts.reserve(sp->utterances.size());
    for (const auto& u : sp->utterances) utts.push_back(&u);
    std::sort(utts.begin(), utts.end(),
              [](const UtteranceRecord* a, const UtteranceRecord* b) { return a->id < b->id; });
    for (const UtteranceRecord* u : utts) {
      VcJob job;
      job.source_speaker = speaker_id;
      job.utterance = u->id;
      job.audio = u->audio;
      job.donor = manifest.donor;
      job.id = content_hash(speaker_id + '\x1f' + u->id + '\x1f' + manifest.donor);
      job.output = "vc/" + sanitize_path_piece(manifest.donor) + "/" +
                   sanitize_path_piece(speaker_id) + "/" + sanitize_path_piece(u->id) + ".wav";
      if (!outputs.insert(job.output).second)
        throw ValidationError("plan_vc_jobs: two jobs map to the same output path " + job.output);
      jobs.push_back(std::move(job));
    }
  }
  return jobs;
}

std::string serialize_vc_jobs(const std::vector<VcJob>& jobs) {
  std::string out;
  for (const auto& job : jobs) {
    out += job_to_json(job).dump();
    out.push_back('\n');
  }
  return out;
}

std::vector<VcJob> parse_vc_jobs(const std::string& jsonl_text) {
  std::vector<VcJob> jobs;
  std::istringstream in(jsonl_text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("jobs line " + std::to_string(line_no) + ": " + e.what());
    }
    VcJob job;
    try {
      job.id = j.at("id").get<std::string>();
      job.source_speaker = j.at("source_speaker").get<std::string>();
      job.utterance = j.at("utterance").get<std::string>();
      job.audio = j.at("audio").get<std::string>();
      job.donor = j.at("donor").get<std::string>();
      job.output = j.at("output").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("jobs line " + std::to_string(line_no) + ": " + e.what());
    }
    jobs.push_back(std::move(job));
  }
  return jobs;
}

std::vector<JobStatus> run_adapter(const std::vector<VcJob>& jobs,
                                   const std::string& adapter_template, int parallelism,
                                   const std::string& output_root) {
  if (parallelism < 1) throw ValidationError("run_adapter: parallelism must be >= 1");
  if (adapter_template.find("{input}") == std::string::npos)
    throw ValidationError("run_adapter: template is missing the {input} placeholder");
  if (adapter_template.find("{output}") == std::string::npos)
    throw ValidationError("run_adapter: template is missing the {output} placeholder");
  const std::string cmd0 = leading_command(adapter_template);
  if (!command_exists(cmd0))
    throw ValidationError("run_adapter: adapter executable not found: " + cmd0);

  const fs::path root(output_root.empty() ? "." : output_root);
  std::vector<std::string> commands(jobs.size());
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const fs::path out_path = root / jobs[i].output;
    std::error_code ec;
    fs::create_directories(out_path.parent_path(), ec);
    if (ec)
      throw IoError("run_adapter: cannot create " + out_path.parent_path().string() + ": " +
                    ec.message());
    std::string cmd = adapter_template;
    replace_all(cmd, "{input}", shell_quote(jobs[i].audio));
    replace_all(cmd, "{output}", shell_quote(out_path.string()));
    replace_all(cmd, "{donor}", shell_quote(jobs[i].donor));
    commands[i] = std::move(cmd);
  }

  std::vector<JobStatus> statuses(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      JobStatus st;
      st.id = jobs[i].id;
      st.exit_code = run_command(commands[i]);
      std::error_code ec;
      st.output_exists = fs::exists(root / jobs[i].output, ec);
      st.ok = st.exit_code == 0 && st.output_exists;
      statuses[i] = std::move(st);
    }
  };

  const std::size_t n_workers =
      std::min<std::size_t>(static_cast<std::size_t>(parallelism), std::max<std::size_t>(jobs.size(), 1));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (std::size_t i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return statuses;
}

std::string serialize_job_statuses(const std::vector<JobStatus>& statuses) {
  std::string out;
  for (const auto& st : statuses) {
    nlohmann::ordered_json j{{"id", st.id},
                             {"ok", st.ok},
                             {"exit_code", st.exit_code},
                             {"output_exists", st.output_exists}};
    out += j.dump();
    out.push_back('\n');
  }
  return out;
}

std::vector<JobStatus> parse_job_statuses(const std::string& jsonl_text) {
  std::vector<JobStatus> statuses;
  std::istringstream in(jsonl_text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      JobStatus st;
      st.id = j.at("id").get<std::string>();
      st.ok = j.at("ok").get<bool>();
      st.exit_code = j.at("exit_code").get<int>();
      st.output_exists = j.at("output_exists").get<bool>();
      statuses.push_back(std::move(st));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("statuses line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return statuses;
}

TrainingManifest build_tts_corpus(const CorpusManifest& manifest,
                                  const std::vector<VcJob>& completed_jobs,
                                  const std::string& output_root) {
  const fs::path root(output_root.empty() ? "." : output_root);
  std::vector<std::string> missing;
  for (const auto& job : completed_jobs) {
    if (job.donor != manifest.donor)
      throw ValidationError("build_tts_corpus: job " + job.id + " targets donor " + job.donor +
                            " but the manifest donor is " + manifest.donor);
    std::error_code ec;
    if (!fs::exists(root / job.output, ec)) missing.push_back(job.id);
  }
  if (!missing.empty()) {
    std::string msg = "build_tts_corpus: " + std::to_string(missing.size()) +
                      " job output(s) missing:";
    for (const auto& id : missing) msg += " " + id;
    throw ValidationError(msg);
  }

  TrainingManifest tm;
  for (const auto& sp : manifest.speakers) {
    for (const auto& u : sp.utterances) {
      tm.entries.push_back({sp.id, sp.accent, u.id, u.audio, EntryOrigin::recording});
      tm.totals[sp.accent].recordings += 1;
    }
  }
  for (const auto& job : completed_jobs) {
    tm.entries.push_back(
        {job.donor, manifest.target_accent, job.utterance, job.output, EntryOrigin::synthetic});
    tm.totals[manifest.target_accent].synthetic += 1;
  }
  return tm;
}

std::string serialize_training_manifest(const TrainingManifest& manifest) {
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& e : manifest.entries) {
    entries.push_back({{"speaker", e.speaker},
                       {"accent", e.accent},
                       {"utterance", e.utterance},
                       {"audio", e.audio},
                       {"origin", e.origin == EntryOrigin::recording ? "recording" : "synthetic"}});
  }
  nlohmann::ordered_json totals = nlohmann::ordered_json::object();
  for (const auto& [accent, t] : manifest.totals)
    totals[accent] = {{"recordings", t.recordings}, {"synthetic", t.synthetic}};
  nlohmann::ordered_json doc{{"entries", std::move(entries)}, {"totals", std::move(totals)}};
  return doc.dump(2) + "\n";
}

}  // namespace rhotica
