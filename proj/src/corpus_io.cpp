#include "rhotica/corpus_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "json.hpp"
#include "rhotica/errors.hpp"

namespace rhotica {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

constexpr double kOverlapTolerance = 1e-9;

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_real(const std::string& tok, std::size_t line_no, const char* what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line_no) + ": bad " + what + " '" + tok + "'");
  }
  if (pos != tok.size() || !std::isfinite(v))
    throw ParseError("line " + std::to_string(line_no) + ": bad " + what + " '" + tok + "'");
  return v;
}

std::string format_seconds(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

std::vector<PhoneTiming> parse_ctm(const std::string& text) {
  std::vector<PhoneTiming> out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    std::istringstream ls(t);
    PhoneTiming pt;
    std::string channel, start_tok, dur_tok, extra;
    if (!(ls >> pt.utterance >> channel >> start_tok >> dur_tok >> pt.symbol))
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected '<utt> <channel> <start> <dur> <symbol>'");
    if (ls >> extra)
      throw ParseError("line " + std::to_string(line_no) + ": trailing token '" + extra + "'");
    pt.start = parse_real(start_tok, line_no, "start time");
    pt.duration = parse_real(dur_tok, line_no, "duration");
    if (pt.start < 0.0)
      throw ParseError("line " + std::to_string(line_no) + ": negative start time");
    if (pt.duration <= 0.0)
      throw ParseError("line " + std::to_string(line_no) + ": non-positive duration");
    out.push_back(std::move(pt));
  }

  std::stable_sort(out.begin(), out.end(), [](const PhoneTiming& a, const PhoneTiming& b) {
    return std::tie(a.utterance, a.start) < std::tie(b.utterance, b.start);
  });
  for (std::size_t i = 1; i < out.size(); ++i) {
    const auto& prev = out[i - 1];
    const auto& cur = out[i];
    if (prev.utterance == cur.utterance &&
        cur.start < prev.start + prev.duration - kOverlapTolerance)
      throw ValidationError("overlapping phone intervals in utterance '" + cur.utterance + "' at " +
                            format_seconds(cur.start) + "s");
  }
  return out;
}

std::string serialize_ctm(const std::vector<PhoneTiming>& timings) {
  std::ostringstream os;
  for (const auto& t : timings)
    os << t.utterance << " 1 " << format_seconds(t.start) << ' ' << format_seconds(t.duration)
       << ' ' << t.symbol << '\n';
  return os.str();
}

std::vector<PhoneTiming> timings_for(const std::vector<PhoneTiming>& timings,
                                     std::string_view utterance) {
  std::vector<PhoneTiming> out;
  for (const auto& t : timings)
    if (t.utterance == utterance) out.push_back(t);
  return out;
}

const SpeakerRecord* CorpusManifest::find_speaker(std::string_view id) const {
  for (const auto& s : speakers)
    if (s.id == id) return &s;
  return nullptr;
}

CorpusManifest parse_manifest(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("manifest JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("manifest JSON: expected a top-level object");
  for (const char* field : {"donor", "target_accent", "speakers"})
    if (!doc.contains(field))
      throw ParseError(std::string("manifest JSON: missing field '") + field + "'");
  if (!doc["donor"].is_string() || !doc["target_accent"].is_string())
    throw ParseError("manifest JSON: 'donor' and 'target_accent' must be strings");
  if (!doc["speakers"].is_array()) throw ParseError("manifest JSON: 'speakers' must be an array");

  CorpusManifest m;
  m.donor = doc["donor"].get<std::string>();
  m.target_accent = doc["target_accent"].get<std::string>();
  if (m.donor.empty() || m.target_accent.empty())
    throw ValidationError("manifest: 'donor' and 'target_accent' must be non-empty");

  std::set<std::string> speaker_ids;
  for (std::size_t si = 0; si < doc["speakers"].size(); ++si) {
    const auto& js = doc["speakers"][si];
    const std::string where = "speakers[" + std::to_string(si) + "]";
    if (!js.is_object() || !js.contains("id") || !js["id"].is_string() || !js.contains("accent") ||
        !js["accent"].is_string() || !js.contains("utterances") || !js["utterances"].is_array())
      throw ParseError("manifest JSON: " + where +
                       " needs string 'id', string 'accent', array 'utterances'");
    SpeakerRecord s;
    s.id = js["id"].get<std::string>();
    s.accent = js["accent"].get<std::string>();
    if (s.id.empty() || s.accent.empty())
      throw ValidationError("manifest: " + where + ": empty id or accent");
    if (!speaker_ids.insert(s.id).second)
      throw ValidationError("manifest: duplicate speaker id '" + s.id + "'");
    std::set<std::string> utt_ids;
    for (std::size_t ui = 0; ui < js["utterances"].size(); ++ui) {
      const auto& ju = js["utterances"][ui];
      if (!ju.is_object() || !ju.contains("id") || !ju["id"].is_string() || !ju.contains("audio") ||
          !ju["audio"].is_string())
        throw ParseError("manifest JSON: " + where + ".utterances[" + std::to_string(ui) +
                         "] needs string 'id' and string 'audio'");
      UtteranceRecord u;
      u.id = ju["id"].get<std::string>();
      u.audio = ju["audio"].get<std::string>();
      u.text = ju.contains("text") && ju["text"].is_string() ? ju["text"].get<std::string>() : "";
      if (u.id.empty()) throw ValidationError("manifest: " + where + ": empty utterance id");
      if (!utt_ids.insert(u.id).second)
        throw ValidationError("manifest: speaker '" + s.id + "': duplicate utterance id '" + u.id +
                              "'");
      s.utterances.push_back(std::move(u));
    }
    m.speakers.push_back(std::move(s));
  }

  const SpeakerRecord* donor = m.find_speaker(m.donor);
  if (!donor) throw ValidationError("manifest: donor '" + m.donor + "' is not a listed speaker");
  if (donor->accent == m.target_accent)
    throw ValidationError("manifest: donor accent '" + donor->accent +
                          "' must differ from target accent");
  return m;
}

CorpusManifest parse_manifest_file(const std::string& path) {
  try {
    return parse_manifest(read_text_file(path));
  } catch (const IoError&) {
    throw;
  } catch (const Error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::string serialize_manifest(const CorpusManifest& manifest) {
  ordered_json doc;
  doc["donor"] = manifest.donor;
  doc["target_accent"] = manifest.target_accent;
  doc["speakers"] = ordered_json::array();
  for (const auto& s : manifest.speakers) {
    ordered_json js;
    js["id"] = s.id;
    js["accent"] = s.accent;
    js["utterances"] = ordered_json::array();
    for (const auto& u : s.utterances) {
      ordered_json ju;
      ju["id"] = u.id;
      ju["audio"] = u.audio;
      ju["text"] = u.text;
      js["utterances"].push_back(std::move(ju));
    }
    doc["speakers"].push_back(std::move(js));
  }
  return doc.dump(2) + "\n";
}

ScoreTable parse_scores(const std::string& csv_text, ScoreKind kind) {
  ScoreTable table;
  table.kind = kind;
  std::istringstream in(csv_text);
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  std::set<std::tuple<std::string, std::string, std::string>> seen;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') continue;  // report-style comment lines
    std::vector<std::string> fields;
    std::string cur;
    for (char c : t) {
      if (c == ',') {
        fields.push_back(trim(cur));
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    fields.push_back(trim(cur));
    if (!saw_header) {
      if (fields != std::vector<std::string>{"listener", "testcase", "system", "score"})
        throw ParseError("line " + std::to_string(line_no) +
                         ": expected header 'listener,testcase,system,score'");
      saw_header = true;
      continue;
    }
    if (fields.size() != 4)
      throw ParseError("line " + std::to_string(line_no) + ": expected 4 fields, got " +
                       std::to_string(fields.size()));
    ScoreRow row;
    row.listener = fields[0];
    row.testcase = fields[1];
    row.system = fields[2];
    if (row.listener.empty() || row.testcase.empty() || row.system.empty())
      throw ParseError("line " + std::to_string(line_no) + ": empty id field");
    if (kind == ScoreKind::mushra) {
      row.score = parse_real(fields[3], line_no, "score");
      if (row.score < 0.0 || row.score > 100.0)
        throw ValidationError("line " + std::to_string(line_no) + ": score " + fields[3] +
                              " outside [0,100]");
    } else {
      if (fields[3] == "A")
        row.choice = Choice::a;
      else if (fields[3] == "B")
        row.choice = Choice::b;
      else if (fields[3] == "tie")
        row.choice = Choice::tie;
      else
        throw ParseError("line " + std::to_string(line_no) + ": preference score must be A, B or tie (got '" +
                         fields[3] + "')");
      row.score = 0.0;
    }
    if (!seen.insert({row.listener, row.testcase, row.system}).second)
      throw ValidationError("line " + std::to_string(line_no) + ": duplicate (listener,testcase,system) = (" +
                            row.listener + "," + row.testcase + "," + row.system + ")");
    table.rows.push_back(std::move(row));
  }
  if (!saw_header) throw ParseError("scores CSV: missing header row");
  return table;
}

std::string serialize_scores(const ScoreTable& table) {
  std::ostringstream os;
  os << "listener,testcase,system,score\n";
  for (const auto& r : table.rows) {
    os << r.listener << ',' << r.testcase << ',' << r.system << ',';
    if (table.kind == ScoreKind::mushra) {
      os << std::setprecision(17) << r.score;
    } else {
      os << (r.choice == Choice::a ? "A" : r.choice == Choice::b ? "B" : "tie");
    }
    os << '\n';
  }
  return os.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path);
  return buf.str();
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open file for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace rhotica
