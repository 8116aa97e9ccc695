#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rhotica/alignment.hpp"
#include "rhotica/augmentation.hpp"
#include "rhotica/config_io.hpp"
#include "rhotica/corpus_io.hpp"
#include "rhotica/errors.hpp"
#include "rhotica/formant.hpp"
#include "rhotica/phoneme.hpp"
#include "rhotica/stats.hpp"
#include "rhotica/version.hpp"
#include "rhotica/wav.hpp"

namespace {

using nlohmann::json;
using nlohmann::ordered_json;
using namespace rhotica;

// Shortest round-trippable decimal form.
std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ordered_json tool_header(const ToolConfig& cfg) {
  ordered_json j;
  j["tool"] = {{"name", kToolName}, {"version", kVersion}};
  j["config"] = config_to_json(cfg);
  return j;
}

std::string csv_preamble(const ToolConfig& cfg) {
  std::string out = std::string("# ") + kToolName + " " + kVersion + "\n";
  out += "# config " + config_to_json(cfg).dump() + "\n";
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    write_text_file(out_path, text);
  }
}

// Per-subcommand configuration: defaults, then RHOTICA_CONFIG, then --config.
struct ConfigFlag {
  std::string path;

  ToolConfig resolve() const {
    ToolConfig cfg = load_default_config();
    if (!path.empty()) {
      json overlay;
      try {
        overlay = json::parse(read_text_file(path));
      } catch (const json::exception& e) {
        throw ParseError(std::string("config: ") + e.what());
      }
      cfg = apply_config_overlay(cfg, overlay);
    }
    cfg.validate();
    return cfg;
  }
};

std::string read_sequence_arg(const std::string& inline_seq, const std::string& file) {
  if (!inline_seq.empty() && !file.empty())
    throw ValidationError("give the sequence inline or as a file, not both");
  if (!file.empty()) return read_text_file(file);
  if (inline_seq.empty()) throw ValidationError("empty phoneme sequence");
  return inline_seq;
}

ordered_json path_to_json(const AlignmentPath& path, const std::vector<Phoneme>& a,
                          const std::vector<Phoneme>& b) {
  ordered_json steps = ordered_json::array();
  for (std::size_t k = 0; k < path.steps.size(); ++k) {
    const auto& s = path.steps[k];
    const char* move = "start";
    if (k > 0) {
      const auto& prev = path.steps[k - 1];
      if (s.i != prev.i && s.j != prev.j)
        move = "both";
      else if (s.j != prev.j)
        move = "b";
      else
        move = "a";
    }
    steps.push_back({{"i", s.i},
                     {"j", s.j},
                     {"a", a[s.i].symbol},
                     {"b", b[s.j].symbol},
                     {"advance", move}});
  }
  return steps;
}

const char* context_kind_name(ContextKind kind) {
  return kind == ContextKind::r_insertion ? "r_insertion" : "rhotacized_vowel";
}

struct LoadedPair {
  PhonemeInventory inv_a;
  PhonemeInventory inv_b;
  std::vector<Phoneme> seq_a;
  std::vector<Phoneme> seq_b;
};

// Map a phone index span to a time span using the utterance's CTM entries.
TimeSpan span_from_ctm(const std::vector<PhoneTiming>& timings, const IndexSpan& span) {
  if (span.last >= timings.size() || span.first > span.last)
    throw ValidationError("context span [" + std::to_string(span.first) + "," +
                          std::to_string(span.last) + "] is outside the " +
                          std::to_string(timings.size()) + " aligned phones");
  const auto& first = timings[span.first];
  const auto& last = timings[span.last];
  return {first.start, last.start + last.duration};
}

struct ContextSpec {
  std::string utterance;
  std::string kind;
  IndexSpan span;
};

std::vector<ContextSpec> parse_contexts_file(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("contexts file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("contexts") || !doc["contexts"].is_array())
    throw ParseError("contexts file: expected an object with a 'contexts' array");
  std::vector<ContextSpec> out;
  for (const auto& c : doc["contexts"]) {
    ContextSpec spec;
    try {
      spec.utterance = c.at("utterance").get<std::string>();
      spec.kind = c.at("kind").get<std::string>();
      spec.span.first = c.at("rhotic_span").at("first").get<std::size_t>();
      spec.span.last = c.at("rhotic_span").at("last").get<std::size_t>();
    } catch (const json::exception& e) {
      throw ParseError(std::string("contexts file: ") + e.what());
    }
    out.push_back(std::move(spec));
  }
  return out;
}

void require_16k(const Pcm& pcm, bool any_rate) {
  if (!any_rate && pcm.sample_rate != 16000)
    throw ValidationError("expected 16 kHz audio, got " + std::to_string(pcm.sample_rate) +
                          " Hz (pass --any-rate to analyze anyway)");
}

struct SlopeRow {
  std::string utterance;
  std::string kind;
  IndexSpan span;
  TimeSpan time;
  SlopeStat stat;
};

std::string slopes_to_csv(const std::vector<SlopeRow>& rows, const ToolConfig& cfg) {
  std::string out = csv_preamble(cfg);
  out += "utterance,kind,first,last,start,end,n_frames,ols_slope,net_change\n";
  for (const auto& r : rows) {
    out += r.utterance + "," + r.kind + "," + std::to_string(r.span.first) + "," +
           std::to_string(r.span.last) + "," + fmt_double(r.time.start) + "," +
           fmt_double(r.time.end) + "," + std::to_string(r.stat.n_frames) + "," +
           fmt_double(r.stat.ols_slope) + "," + fmt_double(r.stat.net_change) + "\n";
  }
  return out;
}

std::vector<SlopeRow> parse_slopes_csv(const std::string& text) {
  std::vector<SlopeRow> rows;
  std::istringstream in(text);
  std::string line;
  bool saw_header = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!saw_header) {
      if (line != "utterance,kind,first,last,start,end,n_frames,ols_slope,net_change")
        throw ParseError("slopes CSV line " + std::to_string(line_no) + ": unexpected header");
      saw_header = true;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 9)
      throw ParseError("slopes CSV line " + std::to_string(line_no) + ": expected 9 columns");
    SlopeRow r;
    try {
      r.utterance = cells[0];
      r.kind = cells[1];
      r.span.first = std::stoul(cells[2]);
      r.span.last = std::stoul(cells[3]);
      r.time.start = std::stod(cells[4]);
      r.time.end = std::stod(cells[5]);
      r.stat.n_frames = std::stoi(cells[6]);
      r.stat.ols_slope = std::stod(cells[7]);
      r.stat.net_change = std::stod(cells[8]);
    } catch (const std::exception&) {
      throw ParseError("slopes CSV line " + std::to_string(line_no) + ": malformed number");
    }
    rows.push_back(std::move(r));
  }
  if (!saw_header) throw ParseError("slopes CSV: missing header row");
  return rows;
}

ordered_json test_result_to_json(const TestResult& t) {
  ordered_json j;
  if (std::isfinite(t.t))
    j["t"] = t.t;
  else
    j["t"] = nullptr;  // degenerate zero-variance comparison
  j["df"] = t.degrees_of_freedom;
  j["p"] = t.p;
  j["rejected"] = t.rejected;
  j["alpha"] = t.alpha;
  j["degenerate"] = t.degenerate;
  return j;
}

// ---------------------------------------------------------------------------
// subcommand bodies

int cmd_map_phonemes(const std::vector<std::string>& inventory_paths, const std::string& out,
                     const std::string& format, const ConfigFlag& cf) {
  const ToolConfig cfg = cf.resolve();
  std::vector<PhonemeInventory> invs;
  for (const auto& p : inventory_paths) invs.push_back(load_inventory_file(p));
  const UnifiedTokenMap map = unify_tokens(invs);

  if (format == "csv") {
    std::string text = csv_preamble(cfg);
    text += "accent,symbol,token\n";
    for (const auto& e : map.entries)
      text += e.accent + "," + e.symbol + "," + std::to_string(e.token) + "\n";
    emit(text, out);
  } else {
    ordered_json doc = tool_header(cfg);
    doc["kind"] = "token_map";
    doc["token_count"] = map.token_count;
    ordered_json entries = ordered_json::array();
    for (const auto& e : map.entries)
      entries.push_back({{"accent", e.accent}, {"symbol", e.symbol}, {"token", e.token}});
    doc["entries"] = std::move(entries);
    emit(doc.dump(2) + "\n", out);
  }
  return 0;
}

LoadedPair load_pair(const std::string& inv_a_path, const std::string& inv_b_path,
                     const std::string& seq_a, const std::string& seq_a_file,
                     const std::string& seq_b, const std::string& seq_b_file) {
  LoadedPair lp;
  lp.inv_a = load_inventory_file(inv_a_path);
  lp.inv_b = load_inventory_file(inv_b_path);
  lp.seq_a = parse_sequence(read_sequence_arg(seq_a, seq_a_file), lp.inv_a);
  lp.seq_b = parse_sequence(read_sequence_arg(seq_b, seq_b_file), lp.inv_b);
  return lp;
}

int cmd_align(const LoadedPair& lp, const std::string& out, const ConfigFlag& cf) {
  const ToolConfig cfg = cf.resolve();
  const AlignmentPath path = align(lp.seq_a, lp.seq_b, cfg.cost);

  ordered_json doc = tool_header(cfg);
  doc["kind"] = "alignment";
  doc["accent_a"] = lp.inv_a.accent;
  doc["accent_b"] = lp.inv_b.accent;
  doc["total_cost"] = path.total_cost;
  doc["path"] = path_to_json(path, lp.seq_a, lp.seq_b);
  emit(doc.dump(2) + "\n", out);
  return 0;
}

int cmd_find_contexts(const LoadedPair& lp, const std::string& rhotic_side,
                      const std::string& utterance, const std::string& out,
                      const ConfigFlag& cf) {
  const ToolConfig cfg = cf.resolve();

  SequenceSlot slot;
  if (rhotic_side == "a") {
    slot = SequenceSlot::a;
  } else if (rhotic_side == "b") {
    slot = SequenceSlot::b;
  } else if (rhotic_side.empty()) {
    const bool ra = has_rhotic_phoneme(lp.seq_a);
    const bool rb = has_rhotic_phoneme(lp.seq_b);
    if (ra == rb)
      throw ValidationError(
          ra ? "both sequences contain rhotic phonemes; pass --rhotic-side a|b"
             : "neither sequence contains a rhotic phoneme; pass --rhotic-side a|b");
    slot = ra ? SequenceSlot::a : SequenceSlot::b;
  } else {
    throw ValidationError("--rhotic-side must be 'a' or 'b'");
  }

  const auto& rhotic_seq = slot == SequenceSlot::a ? lp.seq_a : lp.seq_b;
  const auto& nonrhotic_seq = slot == SequenceSlot::a ? lp.seq_b : lp.seq_a;
  if (!has_rhotic_phoneme(rhotic_seq))
    std::cerr << "warning: declared rhotic side has no rhotic phoneme; no contexts will match\n";

  const AlignmentPath path = align(lp.seq_a, lp.seq_b, cfg.cost);
  const auto contexts = find_rhotic_contrasts(path, rhotic_seq, nonrhotic_seq, slot, utterance);

  ordered_json doc = tool_header(cfg);
  doc["kind"] = "contexts";
  doc["utterance"] = utterance;
  doc["rhotic_side"] = slot == SequenceSlot::a ? "a" : "b";
  doc["accent_rhotic"] = slot == SequenceSlot::a ? lp.inv_a.accent : lp.inv_b.accent;
  doc["accent_nonrhotic"] = slot == SequenceSlot::a ? lp.inv_b.accent : lp.inv_a.accent;
  doc["total_cost"] = path.total_cost;
  doc["path"] = path_to_json(path, lp.seq_a, lp.seq_b);
  ordered_json ctx = ordered_json::array();
  for (const auto& c : contexts) {
    ordered_json item;
    item["utterance"] = c.utterance;
    item["kind"] = context_kind_name(c.kind);
    item["rhotic_span"] = {{"first", c.rhotic_span.first}, {"last", c.rhotic_span.last}};
    item["nonrhotic_index"] = c.nonrhotic_index;
    ordered_json symbols = ordered_json::array();
    for (std::size_t i = c.rhotic_span.first; i <= c.rhotic_span.last; ++i)
      symbols.push_back(rhotic_seq[i].symbol);
    item["rhotic_symbols"] = std::move(symbols);
    item["nonrhotic_symbol"] = nonrhotic_seq[c.nonrhotic_index].symbol;
    ctx.push_back(std::move(item));
  }
  doc["contexts"] = std::move(ctx);
  emit(doc.dump(2) + "\n", out);
  return 0;
}

int cmd_f3_track(const std::string& wav_path, double start, double end, bool any_rate,
                 const std::string& utterance, const std::string& out, const std::string& format,
                 const ConfigFlag& cf) {
  const ToolConfig cfg = cf.resolve();
  const Pcm pcm = read_wav_file(wav_path);
  require_16k(pcm, any_rate);
  const TimeSpan span{start, end <= 0.0 ? pcm.duration() : end};
  const FormantTrack track = track_f3(pcm, span, cfg.dsp, utterance);

  if (format == "json") {
    ordered_json doc = tool_header(cfg);
    doc["kind"] = "f3_track";
    doc["utterance"] = track.utterance;
    doc["span"] = {{"start", track.span.start}, {"end", track.span.end}};
    ordered_json frames = ordered_json::array();
    for (const auto& f : track.frames) {
      ordered_json item{{"time", f.time}};
      auto put = [&](const char* name, const std::optional<Formant>& fo) {
        if (fo)
          item[name] = {{"frequency", fo->frequency}, {"bandwidth", fo->bandwidth}};
        else
          item[name] = nullptr;
      };
      put("f1", f.f1);
      put("f2", f.f2);
      put("f3", f.f3);
      frames.push_back(std::move(item));
    }
    doc["frames"] = std::move(frames);
    emit(doc.dump(2) + "\n", out);
  } else {
    std::string text = csv_preamble(cfg);
    text += "time,f1,bw1,f2,bw2,f3,bw3\n";
    for (const auto& f : track.frames) {
      text += fmt_double(f.time);
      for (const auto& fo : {f.f1, f.f2, f.f3}) {
        if (fo)
          text += "," + fmt_double(fo->frequency) + "," + fmt_double(fo->bandwidth);
        else
          text += ",,";
      }
      text += "\n";
    }
    emit(text, out);
  }
  return 0;
}

int cmd_f3_slope(const std::string& wav_path, const std::string& ctm_path,
                 const std::string& contexts_path, const std::string& utterance_filter,
                 bool any_rate, const std::string& out, const ConfigFlag& cf) {
  const ToolConfig cfg = cf.resolve();
  const Pcm pcm = read_wav_file(wav_path);
  require_16k(pcm, any_rate);
  const auto timings = parse_ctm(read_text_file(ctm_path));
  auto contexts = parse_contexts_file(read_text_file(contexts_path));

  std::string target = utterance_filter;
  if (target.empty()) {
    std::set<std::string> utts;
    for (const auto& t : timings) utts.insert(t.utterance);
    if (utts.size() != 1)
      throw ValidationError("CTM covers " + std::to_string(utts.size()) +
                            " utterances; pass --utterance to pick one");
    target = *utts.begin();
  }
  const auto utt_timings = timings_for(timings, target);
  if (utt_timings.empty())
    throw ValidationError("no CTM entries for utterance " + target);

  std::vector<SlopeRow> rows;
  for (const auto& c : contexts) {
    if (c.utterance != target) continue;
    SlopeRow row;
    row.utterance = c.utterance;
    row.kind = c.kind;
    row.span = c.span;
    row.time = span_from_ctm(utt_timings, c.span);
    const FormantTrack track = track_f3(pcm, row.time, cfg.dsp, c.utterance);
    row.stat = f3_slope(track);
    rows.push_back(std::move(row));
  }
  emit(slopes_to_csv(rows, cfg), out);
  return 0;
}

int cmd_compare_slopes(const std::vector<std::string>& system_args, double alpha,
                       const std::string& out, const std::string& format, const ConfigFlag& cf) {
  ToolConfig cfg = cf.resolve();
  if (alpha > 0.0) cfg.alpha = alpha;
  cfg.validate();

  std::map<std::string, std::vector<SlopeSample>> per_system;
  for (const auto& arg : system_args) {
    const auto eq = arg.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= arg.size())
      throw ValidationError("--system expects NAME=SLOPES_CSV, got '" + arg + "'");
    const std::string name = arg.substr(0, eq);
    const std::string path = arg.substr(eq + 1);
    if (per_system.count(name))
      throw ValidationError("system '" + name + "' listed twice");
    std::vector<SlopeSample> samples;
    for (const auto& row : parse_slopes_csv(read_text_file(path))) {
      SlopeSample s;
      s.context = row.utterance + "[" + std::to_string(row.span.first) + "-" +
                  std::to_string(row.span.last) + "]";
      s.stat = row.stat;
      samples.push_back(std::move(s));
    }
    per_system.emplace(name, std::move(samples));
  }

  const SlopeComparison cmp = slope_comparison(per_system, cfg.alpha);

  if (format == "csv") {
    std::string text = csv_preamble(cfg);
    text += "system_a,system_b,paired,t,df,p,adjusted_p,rejected\n";
    for (const auto& p : cmp.pairs) {
      text += p.system_a + "," + p.system_b + "," + (p.paired ? "paired" : "welch") + "," +
              (std::isfinite(p.test.t) ? fmt_double(p.test.t) : "") + "," +
              fmt_double(p.test.degrees_of_freedom) + "," + fmt_double(p.test.p) + "," +
              fmt_double(p.adjusted_p) + "," + (p.test.rejected ? "true" : "false") + "\n";
    }
    emit(text, out);
  } else {
    ordered_json doc = tool_header(cfg);
    doc["kind"] = "slopes";
    doc["alpha"] = cmp.alpha;
    ordered_json systems = ordered_json::array();
    for (const auto& s : cmp.systems)
      systems.push_back({{"system", s.system},
                         {"n", s.n},
                         {"mean_ols_slope", s.mean_ols_slope},
                         {"mean_net_change", s.mean_net_change}});
    doc["systems"] = std::move(systems);
    ordered_json pairs = ordered_json::array();
    for (const auto& p : cmp.pairs) {
      ordered_json item{{"system_a", p.system_a},
                        {"system_b", p.system_b},
                        {"paired", p.paired}};
      item["test"] = test_result_to_json(p.test);
      item["adjusted_p"] = p.adjusted_p;
      pairs.push_back(std::move(item));
    }
    doc["pairs"] = std::move(pairs);
    emit(doc.dump(2) + "\n", out);
  }
  return 0;
}

int cmd_mushra(const std::string& scores_path, double alpha, bool all_pairs,
               bool pair_on_testcase_mean, const std::string& out, const std::string& format,
               const ConfigFlag& cf) {
  ToolConfig cfg = cf.resolve();
  if (alpha > 0.0) cfg.alpha = alpha;
  cfg.validate();

  const ScoreTable table = parse_scores(read_text_file(scores_path), ScoreKind::mushra);
  MushraOptions opts;
  opts.alpha = cfg.alpha;
  opts.all_pairs = all_pairs;
  opts.pair_on_testcase_mean = pair_on_testcase_mean;
  const MushraSummary summary = mushra_summary(table, opts);

  if (format == "csv") {
    std::string text = csv_preamble(cfg);
    text += "system,mean,n,ci_lo,ci_hi,best_group,adjusted_p\n";
    for (const auto& s : summary.systems) {
      text += s.system + "," + fmt_double(s.mean) + "," + std::to_string(s.n) + "," +
              fmt_double(s.ci_lo) + "," + fmt_double(s.ci_hi) + "," +
              (s.in_best_group ? "true" : "false") + "," +
              (s.adjusted_p ? fmt_double(*s.adjusted_p) : "") + "\n";
    }
    emit(text, out);
  } else {
    ordered_json doc = tool_header(cfg);
    doc["kind"] = "mushra";
    doc["alpha"] = summary.alpha;
    doc["top_system"] = summary.top_system;
    ordered_json systems = ordered_json::array();
    for (const auto& s : summary.systems) {
      ordered_json item{{"system", s.system},
                        {"mean", s.mean},
                        {"n", s.n},
                        {"ci_lo", s.ci_lo},
                        {"ci_hi", s.ci_hi},
                        {"best_group", s.in_best_group}};
      if (s.adjusted_p)
        item["adjusted_p"] = *s.adjusted_p;
      else
        item["adjusted_p"] = nullptr;
      systems.push_back(std::move(item));
    }
    doc["systems"] = std::move(systems);
    ordered_json pairs = ordered_json::array();
    for (const auto& p : summary.pairs) {
      ordered_json item{{"system_a", p.system_a}, {"system_b", p.system_b}};
      item["test"] = test_result_to_json(p.test);
      item["adjusted_p"] = p.adjusted_p;
      pairs.push_back(std::move(item));
    }
    doc["pairs"] = std::move(pairs);
    doc["best_group"] = summary.best_group;
    emit(doc.dump(2) + "\n", out);
  }
  return 0;
}

int cmd_preference(const std::string& scores_path, const std::string& out, const ConfigFlag& cf) {
  const ToolConfig cfg = cf.resolve();
  const ScoreTable table = parse_scores(read_text_file(scores_path), ScoreKind::preference);
  const PreferenceSummary s = preference_summary(table);

  ordered_json doc = tool_header(cfg);
  doc["kind"] = "preference";
  doc["n_a"] = s.n_a;
  doc["n_b"] = s.n_b;
  doc["n_tie"] = s.n_tie;
  doc["share_a"] = s.share_a;
  doc["share_b"] = s.share_b;
  doc["share_tie"] = s.share_tie;
  if (s.sign_test_p)
    doc["sign_test_p"] = *s.sign_test_p;
  else
    doc["sign_test_p"] = nullptr;
  emit(doc.dump(2) + "\n", out);
  return 0;
}

int cmd_plan_vc(const std::string& manifest_path, const std::vector<std::string>& sources,
                const std::string& out) {
  const CorpusManifest manifest = parse_manifest_file(manifest_path);
  const auto jobs = plan_vc_jobs(manifest, sources);
  emit(serialize_vc_jobs(jobs), out);
  std::cerr << "planned " << jobs.size() << " job(s)\n";
  return 0;
}

int cmd_run_adapter(const std::string& jobs_path, const std::string& adapter, int parallelism,
                    const std::string& root, const std::string& out) {
  const auto jobs = parse_vc_jobs(read_text_file(jobs_path));
  const auto statuses = run_adapter(jobs, adapter, parallelism, root);
  emit(serialize_job_statuses(statuses), out);
  std::size_t ok = 0;
  for (const auto& st : statuses)
    if (st.ok) ++ok;
  std::cerr << ok << "/" << statuses.size() << " job(s) succeeded\n";
  return ok == statuses.size() ? 0 : 1;
}

int cmd_build_corpus(const std::string& manifest_path, const std::string& jobs_path,
                     const std::string& statuses_path, const std::string& root,
                     const std::string& out) {
  const CorpusManifest manifest = parse_manifest_file(manifest_path);
  auto jobs = parse_vc_jobs(read_text_file(jobs_path));
  if (!statuses_path.empty()) {
    const auto statuses = parse_job_statuses(read_text_file(statuses_path));
    std::set<std::string> ok_ids;
    for (const auto& st : statuses)
      if (st.ok) ok_ids.insert(st.id);
    std::erase_if(jobs, [&](const VcJob& j) { return !ok_ids.count(j.id); });
  }
  const TrainingManifest tm = build_tts_corpus(manifest, jobs, root);
  emit(serialize_training_manifest(tm), out);
  std::cerr << tm.entries.size() << " training entrie(s)\n";
  return 0;
}

int cmd_report(const std::string& kind, const std::vector<std::string>& payloads,
               const std::string& format, const std::string& out, const ConfigFlag& cf) {
  static const std::set<std::string> kinds = {"alignment", "contexts", "f3_track", "slopes",
                                              "mushra",    "preference", "plan"};
  if (!kinds.count(kind)) {
    std::string known;
    for (const auto& k : kinds) known += (known.empty() ? "" : ", ") + k;
    throw ValidationError("unknown report kind '" + kind + "' (known: " + known + ")");
  }
  const ToolConfig cfg = cf.resolve();
  ordered_json doc = tool_header(cfg);
  doc["kind"] = kind;
  doc["format"] = format;
  ordered_json items = ordered_json::array();
  for (const auto& p : payloads) {
    const std::string bytes = read_text_file(p);
    items.push_back({{"path", p},
                     {"bytes", bytes.size()},
                     {"digest", content_hash(bytes)}});
  }
  doc["payloads"] = std::move(items);
  emit(doc.dump(2) + "\n", out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"accent contrast analysis and voice-conversion augmentation toolkit"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kVersion);
  app.require_subcommand(1);

  // shared option storage
  struct {
    std::vector<std::string> inventories;
    std::string inv_a, inv_b, seq_a, seq_b, seq_file_a, seq_file_b;
    std::string out, format = "json";
    std::string rhotic_side, utterance;
    std::string wav, ctm, contexts;
    double start = 0.0, end = 0.0;
    bool any_rate = false;
    std::vector<std::string> systems;
    double alpha = 0.0;
    bool all_pairs = false, pair_on_testcase_mean = false;
    std::string scores;
    std::string manifest, jobs, statuses, adapter, root = ".";
    std::vector<std::string> sources;
    int parallelism = 0;
    std::string report_kind;
    std::vector<std::string> payloads;
    bool show = false;
    ConfigFlag cf;
  } o;

  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", o.cf.path, "JSON config overlay applied over defaults");
  };
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "write output to this file instead of stdout");
  };

  auto* map_cmd = app.add_subcommand("map-phonemes", "unify phoneme tokens across inventories");
  map_cmd->add_option("--inventory", o.inventories, "inventory JSON file (repeatable)")
      ->required()
      ->expected(-1);
  map_cmd->add_option("--format", o.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  add_out(map_cmd);
  add_config(map_cmd);

  auto add_pair_options = [&](CLI::App* sub) {
    sub->add_option("--inventory-a", o.inv_a, "inventory for sequence A")->required();
    sub->add_option("--inventory-b", o.inv_b, "inventory for sequence B")->required();
    sub->add_option("--seq-a", o.seq_a, "space-separated phoneme symbols");
    sub->add_option("--seq-b", o.seq_b, "space-separated phoneme symbols");
    sub->add_option("--seq-file-a", o.seq_file_a, "file holding sequence A symbols");
    sub->add_option("--seq-file-b", o.seq_file_b, "file holding sequence B symbols");
  };

  auto* align_cmd = app.add_subcommand("align", "align two phoneme sequences");
  add_pair_options(align_cmd);
  add_out(align_cmd);
  add_config(align_cmd);

  auto* ctx_cmd = app.add_subcommand("find-contexts", "locate rhotic contrast sites");
  add_pair_options(ctx_cmd);
  ctx_cmd->add_option("--rhotic-side", o.rhotic_side, "which sequence is the rhotic frontend (a|b)");
  ctx_cmd->add_option("--utterance", o.utterance, "utterance id recorded on each context");
  add_out(ctx_cmd);
  add_config(ctx_cmd);

  auto* track_cmd = app.add_subcommand("f3-track", "track formants over a time span");
  track_cmd->add_option("--wav", o.wav, "mono 16 kHz WAV file")->required();
  track_cmd->add_option("--start", o.start, "span start in seconds (default 0)");
  track_cmd->add_option("--end", o.end, "span end in seconds (default: end of file)");
  track_cmd->add_flag("--any-rate", o.any_rate, "accept sample rates other than 16 kHz");
  track_cmd->add_option("--utterance", o.utterance, "utterance id recorded in the output");
  track_cmd->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"json", "csv"}));
  add_out(track_cmd);
  add_config(track_cmd);

  auto* slope_cmd = app.add_subcommand("f3-slope", "per-context F3 slopes for one utterance");
  slope_cmd->add_option("--wav", o.wav, "mono 16 kHz WAV file")->required();
  slope_cmd->add_option("--ctm", o.ctm, "phone timing file")->required();
  slope_cmd->add_option("--contexts", o.contexts, "contexts JSON from find-contexts")->required();
  slope_cmd->add_option("--utterance", o.utterance, "utterance id (default: sole id in the CTM)");
  slope_cmd->add_flag("--any-rate", o.any_rate, "accept sample rates other than 16 kHz");
  add_out(slope_cmd);
  add_config(slope_cmd);

  auto* cmp_cmd = app.add_subcommand("compare-slopes", "pairwise slope tests across systems");
  cmp_cmd->add_option("--system", o.systems, "NAME=SLOPES_CSV (repeatable)")
      ->required()
      ->expected(-1);
  cmp_cmd->add_option("--alpha", o.alpha, "significance level (default 0.05)");
  cmp_cmd->add_option("--format", o.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  add_out(cmp_cmd);
  add_config(cmp_cmd);

  auto* mushra_cmd = app.add_subcommand("mushra", "summarize a MUSHRA score table");
  mushra_cmd->add_option("--scores", o.scores, "score CSV")->required();
  mushra_cmd->add_option("--alpha", o.alpha, "significance level (default 0.05)");
  mushra_cmd->add_flag("--all-pairs", o.all_pairs, "test every system pair, not top-vs-rest");
  mushra_cmd->add_flag("--pair-on-testcase-mean", o.pair_on_testcase_mean,
                       "pair t-tests on per-testcase means instead of raw ratings");
  mushra_cmd->add_option("--format", o.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  add_out(mushra_cmd);
  add_config(mushra_cmd);

  auto* pref_cmd = app.add_subcommand("preference", "summarize an A/B preference table");
  pref_cmd->add_option("--scores", o.scores, "preference CSV")->required();
  add_out(pref_cmd);
  add_config(pref_cmd);

  auto* plan_cmd = app.add_subcommand("plan-vc", "plan voice-conversion jobs from a manifest");
  plan_cmd->add_option("--manifest", o.manifest, "corpus manifest JSON")->required();
  plan_cmd->add_option("--source", o.sources, "source speaker id (repeatable)");
  add_out(plan_cmd);

  auto* run_cmd = app.add_subcommand("run-adapter", "execute planned jobs through an adapter");
  run_cmd->add_option("--jobs", o.jobs, "jobs JSONL from plan-vc")->required();
  run_cmd->add_option("--adapter", o.adapter, "command template with {input} {output} [{donor}]")
      ->required();
  run_cmd->add_option("--parallelism", o.parallelism, "worker count (default: CPU count)");
  run_cmd->add_option("--root", o.root, "directory job outputs are created under (default .)");
  add_out(run_cmd);

  auto* build_cmd = app.add_subcommand("build-corpus", "emit the combined training manifest");
  build_cmd->add_option("--manifest", o.manifest, "corpus manifest JSON")->required();
  build_cmd->add_option("--jobs", o.jobs, "jobs JSONL from plan-vc")->required();
  build_cmd->add_option("--statuses", o.statuses, "statuses JSONL; keeps only ok jobs");
  build_cmd->add_option("--root", o.root, "directory job outputs live under (default .)");
  add_out(build_cmd);

  auto* report_cmd = app.add_subcommand("report", "wrap payload files in a provenance envelope");
  report_cmd->add_option("--kind", o.report_kind,
                         "alignment|contexts|f3_track|slopes|mushra|preference|plan")
      ->required();
  report_cmd->add_option("--payload", o.payloads, "payload file (repeatable)")
      ->required()
      ->expected(-1);
  report_cmd->add_option("--format", o.format, "payload format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  add_out(report_cmd);
  add_config(report_cmd);

  auto* config_cmd = app.add_subcommand("config", "inspect the effective configuration");
  config_cmd->add_flag("--show", o.show, "print the effective configuration as JSON");
  add_config(config_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (map_cmd->parsed())
      return cmd_map_phonemes(o.inventories, o.out, o.format, o.cf);
    if (align_cmd->parsed())
      return cmd_align(
          load_pair(o.inv_a, o.inv_b, o.seq_a, o.seq_file_a, o.seq_b, o.seq_file_b), o.out, o.cf);
    if (ctx_cmd->parsed())
      return cmd_find_contexts(
          load_pair(o.inv_a, o.inv_b, o.seq_a, o.seq_file_a, o.seq_b, o.seq_file_b),
          o.rhotic_side, o.utterance, o.out, o.cf);
    if (track_cmd->parsed()) {
      if (o.format == "json" && track_cmd->count("--format") == 0) o.format = "csv";
      return cmd_f3_track(o.wav, o.start, o.end, o.any_rate, o.utterance, o.out, o.format, o.cf);
    }
    if (slope_cmd->parsed())
      return cmd_f3_slope(o.wav, o.ctm, o.contexts, o.utterance, o.any_rate, o.out, o.cf);
    if (cmp_cmd->parsed())
      return cmd_compare_slopes(o.systems, o.alpha, o.out, o.format, o.cf);
    if (mushra_cmd->parsed())
      return cmd_mushra(o.scores, o.alpha, o.all_pairs, o.pair_on_testcase_mean, o.out, o.format,
                        o.cf);
    if (pref_cmd->parsed())
      return cmd_preference(o.scores, o.out, o.cf);
    if (plan_cmd->parsed())
      return cmd_plan_vc(o.manifest, o.sources, o.out);
    if (run_cmd->parsed()) {
      int par = o.parallelism;
      if (par <= 0) par = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
      return cmd_run_adapter(o.jobs, o.adapter, par, o.root, o.out);
    }
    if (build_cmd->parsed())
      return cmd_build_corpus(o.manifest, o.jobs, o.statuses, o.root, o.out);
    if (report_cmd->parsed())
      return cmd_report(o.report_kind, o.payloads, o.format, o.out, o.cf);
    if (config_cmd->parsed()) {
      if (!o.show) throw ValidationError("config: pass --show to print the configuration");
      const ToolConfig cfg = o.cf.resolve();
      std::cout << config_to_json(cfg).dump(2) << "\n";
      return 0;
    }
    throw ValidationError("no subcommand selected");
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
