#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

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

namespace py = pybind11;
using namespace rhotica;

PYBIND11_MODULE(_core, m) {
  m.doc() = "accent contrast analysis and VC augmentation core";
  m.attr("__version__") = kVersion;

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
  py::register_exception<IoError>(m, "IoError", PyExc_IOError);

  py::enum_<PhonemeKind>(m, "PhonemeKind")
      .value("vowel", PhonemeKind::vowel)
      .value("consonant", PhonemeKind::consonant);

  py::class_<Phoneme>(m, "Phoneme")
      .def(py::init<>())
      .def_readwrite("symbol", &Phoneme::symbol)
      .def_readwrite("kind", &Phoneme::kind)
      .def_readwrite("voiced", &Phoneme::voiced)
      .def_readwrite("place", &Phoneme::place)
      .def_readwrite("manner", &Phoneme::manner)
      .def_readwrite("height", &Phoneme::height)
      .def_readwrite("backness", &Phoneme::backness)
      .def_readwrite("rounded", &Phoneme::rounded)
      .def_readwrite("is_long", &Phoneme::is_long)
      .def_readwrite("rhotic", &Phoneme::rhotic)
      .def("is_vowel", &Phoneme::is_vowel)
      .def("same_features", &Phoneme::same_features)
      .def("__repr__",
           [](const Phoneme& p) { return "<Phoneme '" + p.symbol + "'>"; });

  py::class_<PhonemeInventory>(m, "PhonemeInventory")
      .def_readonly("accent", &PhonemeInventory::accent)
      .def_readonly("phonemes", &PhonemeInventory::phonemes)
      .def("find",
           [](const PhonemeInventory& inv, const std::string& symbol) -> std::optional<Phoneme> {
             const Phoneme* p = inv.find(symbol);
             if (!p) return std::nullopt;
             return *p;
           })
      .def("__contains__",
           [](const PhonemeInventory& inv, const std::string& s) { return inv.find(s) != nullptr; })
      .def("__len__", [](const PhonemeInventory& inv) { return inv.phonemes.size(); });

  py::class_<CostConfig>(m, "CostConfig")
      .def(py::init<>())
      .def_readwrite("consonant_place", &CostConfig::consonant_place)
      .def_readwrite("consonant_manner", &CostConfig::consonant_manner)
      .def_readwrite("consonant_voiced", &CostConfig::consonant_voiced)
      .def_readwrite("vowel_height", &CostConfig::vowel_height)
      .def_readwrite("vowel_backness", &CostConfig::vowel_backness)
      .def_readwrite("vowel_rounded", &CostConfig::vowel_rounded)
      .def_readwrite("vowel_long", &CostConfig::vowel_long)
      .def_readwrite("vowel_rhotic", &CostConfig::vowel_rhotic)
      .def_readwrite("cross_kind_cost", &CostConfig::cross_kind_cost)
      .def_readwrite("indel_cost", &CostConfig::indel_cost)
      .def("validate", &CostConfig::validate);

  m.def("load_inventory", &load_inventory, py::arg("json_text"));
  m.def("load_inventory_file", &load_inventory_file, py::arg("path"));
  m.def("serialize_inventory", &serialize_inventory, py::arg("inventory"));
  m.def("parse_sequence", &parse_sequence, py::arg("text"), py::arg("inventory"));
  m.def("phoneme_distance", &phoneme_distance, py::arg("a"), py::arg("b"),
        py::arg("cost") = CostConfig{});
  m.def(
      "unify_tokens",
      [](const std::vector<PhonemeInventory>& invs) {
        const UnifiedTokenMap map = unify_tokens(invs);
        std::vector<std::tuple<std::string, std::string, int>> out;
        for (const auto& e : map.entries) out.emplace_back(e.accent, e.symbol, e.token);
        return out;
      },
      py::arg("inventories"), "Returns (accent, symbol, token) triples.");

  py::class_<PathStep>(m, "PathStep")
      .def_readonly("i", &PathStep::i)
      .def_readonly("j", &PathStep::j)
      .def("__repr__", [](const PathStep& s) {
        return "(" + std::to_string(s.i) + "," + std::to_string(s.j) + ")";
      });

  py::class_<AlignmentPath>(m, "AlignmentPath")
      .def_readonly("steps", &AlignmentPath::steps)
      .def_readonly("total_cost", &AlignmentPath::total_cost);

  py::enum_<ContextKind>(m, "ContextKind")
      .value("r_insertion", ContextKind::r_insertion)
      .value("rhotacized_vowel", ContextKind::rhotacized_vowel);

  py::enum_<SequenceSlot>(m, "SequenceSlot")
      .value("a", SequenceSlot::a)
      .value("b", SequenceSlot::b);

  py::class_<IndexSpan>(m, "IndexSpan")
      .def_readonly("first", &IndexSpan::first)
      .def_readonly("last", &IndexSpan::last);

  py::class_<RhoticContext>(m, "RhoticContext")
      .def_readonly("kind", &RhoticContext::kind)
      .def_readonly("rhotic_span", &RhoticContext::rhotic_span)
      .def_readonly("nonrhotic_index", &RhoticContext::nonrhotic_index)
      .def_readonly("utterance", &RhoticContext::utterance);

  m.def("align", &align, py::arg("a"), py::arg("b"), py::arg("cost") = CostConfig{});
  m.def("path_cost", &path_cost, py::arg("path"), py::arg("a"), py::arg("b"),
        py::arg("cost") = CostConfig{});
  m.def("find_rhotic_contrasts", &find_rhotic_contrasts, py::arg("path"), py::arg("rhotic_seq"),
        py::arg("nonrhotic_seq"), py::arg("rhotic_slot"), py::arg("utterance") = std::string{});
  m.def("has_rhotic_phoneme", &has_rhotic_phoneme, py::arg("seq"));

  py::class_<Pcm>(m, "Pcm")
      .def(py::init([](std::vector<double> samples, int rate) {
             return Pcm{std::move(samples), rate};
           }),
           py::arg("samples"), py::arg("sample_rate"))
      .def_readwrite("samples", &Pcm::samples)
      .def_readwrite("sample_rate", &Pcm::sample_rate)
      .def("duration", &Pcm::duration);

  m.def("read_wav_file", &read_wav_file, py::arg("path"));
  m.def("write_wav_file", &write_wav_file, py::arg("path"), py::arg("pcm"),
        py::arg("float32") = false);

  py::class_<DspConfig>(m, "DspConfig")
      .def(py::init<>())
      .def_readwrite("frame_ms", &DspConfig::frame_ms)
      .def_readwrite("hop_ms", &DspConfig::hop_ms)
      .def_readwrite("preemphasis", &DspConfig::preemphasis)
      .def_readwrite("lpc_order", &DspConfig::lpc_order)
      .def_readwrite("max_bandwidth_hz", &DspConfig::max_bandwidth_hz)
      .def_readwrite("min_freq_hz", &DspConfig::min_freq_hz)
      .def("order_for", &DspConfig::order_for)
      .def("validate", &DspConfig::validate);

  py::class_<Formant>(m, "Formant")
      .def_readonly("frequency", &Formant::frequency)
      .def_readonly("bandwidth", &Formant::bandwidth);

  py::class_<TimeSpan>(m, "TimeSpan")
      .def(py::init([](double start, double end) { return TimeSpan{start, end}; }),
           py::arg("start"), py::arg("end"))
      .def_readwrite("start", &TimeSpan::start)
      .def_readwrite("end", &TimeSpan::end);

  py::class_<TrackFrame>(m, "TrackFrame")
      .def_readonly("time", &TrackFrame::time)
      .def_readonly("f1", &TrackFrame::f1)
      .def_readonly("f2", &TrackFrame::f2)
      .def_readonly("f3", &TrackFrame::f3);

  py::class_<FormantTrack>(m, "FormantTrack")
      .def_readonly("frames", &FormantTrack::frames)
      .def_readonly("span", &FormantTrack::span)
      .def_readonly("utterance", &FormantTrack::utterance);

  py::class_<SlopeStat>(m, "SlopeStat")
      .def_readonly("ols_slope", &SlopeStat::ols_slope)
      .def_readonly("net_change", &SlopeStat::net_change)
      .def_readonly("n_frames", &SlopeStat::n_frames);

  m.def("track_f3", &track_f3, py::arg("pcm"), py::arg("span"), py::arg("config") = DspConfig{},
        py::arg("utterance") = std::string{});
  m.def("f3_slope", &f3_slope, py::arg("track"));
  m.def(
      "lpc_fit",
      [](const std::vector<double>& frame, int order) {
        const LpcModel model = lpc_fit(frame, order);
        return py::make_tuple(model.coefficients, model.gain, model.reflection);
      },
      py::arg("frame"), py::arg("order"), "Returns (coefficients, gain, reflection).");

  py::class_<TestResult>(m, "TestResult")
      .def_readonly("t", &TestResult::t)
      .def_readonly("degrees_of_freedom", &TestResult::degrees_of_freedom)
      .def_readonly("p", &TestResult::p)
      .def_readonly("rejected", &TestResult::rejected)
      .def_readonly("alpha", &TestResult::alpha)
      .def_readonly("degenerate", &TestResult::degenerate);

  py::class_<HolmEntry>(m, "HolmEntry")
      .def_readonly("adjusted_p", &HolmEntry::adjusted_p)
      .def_readonly("rejected", &HolmEntry::rejected);

  m.def(
      "t_test",
      [](const std::vector<double>& xs, const std::vector<double>& ys, bool paired, double alpha) {
        return t_test(xs, ys, paired, alpha);
      },
      py::arg("xs"), py::arg("ys"), py::arg("paired"), py::arg("alpha") = 0.05);
  m.def("student_t_two_sided_p", &student_t_two_sided_p, py::arg("t"), py::arg("df"));
  m.def("student_t_critical", &student_t_critical, py::arg("df"), py::arg("alpha"));
  m.def(
      "holm_bonferroni",
      [](const std::vector<double>& ps, double alpha) { return holm_bonferroni(ps, alpha); },
      py::arg("p_values"), py::arg("alpha") = 0.05);
  m.def("binomial_two_sided_p", &binomial_two_sided_p, py::arg("k"), py::arg("n"));

  py::enum_<ScoreKind>(m, "ScoreKind")
      .value("mushra", ScoreKind::mushra)
      .value("preference", ScoreKind::preference);

  py::class_<ScoreTable>(m, "ScoreTable")
      .def_readonly("kind", &ScoreTable::kind)
      .def("__len__", [](const ScoreTable& t) { return t.rows.size(); });

  m.def("parse_scores", &parse_scores, py::arg("csv_text"), py::arg("kind"));

  py::class_<MushraOptions>(m, "MushraOptions")
      .def(py::init<>())
      .def_readwrite("alpha", &MushraOptions::alpha)
      .def_readwrite("all_pairs", &MushraOptions::all_pairs)
      .def_readwrite("pair_on_testcase_mean", &MushraOptions::pair_on_testcase_mean);

  py::class_<MushraSystem>(m, "MushraSystem")
      .def_readonly("system", &MushraSystem::system)
      .def_readonly("mean", &MushraSystem::mean)
      .def_readonly("n", &MushraSystem::n)
      .def_readonly("ci_lo", &MushraSystem::ci_lo)
      .def_readonly("ci_hi", &MushraSystem::ci_hi)
      .def_readonly("adjusted_p", &MushraSystem::adjusted_p)
      .def_readonly("in_best_group", &MushraSystem::in_best_group);

  py::class_<MushraSummary>(m, "MushraSummary")
      .def_readonly("systems", &MushraSummary::systems)
      .def_readonly("best_group", &MushraSummary::best_group)
      .def_readonly("top_system", &MushraSummary::top_system)
      .def_readonly("alpha", &MushraSummary::alpha);

  m.def("mushra_summary", &mushra_summary, py::arg("scores"),
        py::arg("options") = MushraOptions{});

  py::class_<PreferenceSummary>(m, "PreferenceSummary")
      .def_readonly("n_a", &PreferenceSummary::n_a)
      .def_readonly("n_b", &PreferenceSummary::n_b)
      .def_readonly("n_tie", &PreferenceSummary::n_tie)
      .def_readonly("share_a", &PreferenceSummary::share_a)
      .def_readonly("share_b", &PreferenceSummary::share_b)
      .def_readonly("share_tie", &PreferenceSummary::share_tie)
      .def_readonly("sign_test_p", &PreferenceSummary::sign_test_p);

  m.def("preference_summary", &preference_summary, py::arg("scores"));

  py::class_<VcJob>(m, "VcJob")
      .def_readonly("id", &VcJob::id)
      .def_readonly("source_speaker", &VcJob::source_speaker)
      .def_readonly("utterance", &VcJob::utterance)
      .def_readonly("audio", &VcJob::audio)
      .def_readonly("donor", &VcJob::donor)
      .def_readonly("output", &VcJob::output);

  py::class_<JobStatus>(m, "JobStatus")
      .def_readonly("id", &JobStatus::id)
      .def_readonly("ok", &JobStatus::ok)
      .def_readonly("exit_code", &JobStatus::exit_code)
      .def_readonly("output_exists", &JobStatus::output_exists);

  py::class_<CorpusManifest>(m, "CorpusManifest")
      .def_readonly("donor", &CorpusManifest::donor)
      .def_readonly("target_accent", &CorpusManifest::target_accent);

  m.def("parse_manifest", &parse_manifest, py::arg("json_text"));
  m.def("parse_manifest_file", &parse_manifest_file, py::arg("path"));
  m.def("plan_vc_jobs", &plan_vc_jobs, py::arg("manifest"),
        py::arg("source_speakers") = std::vector<std::string>{});
  m.def("serialize_vc_jobs", &serialize_vc_jobs, py::arg("jobs"));
  m.def("parse_vc_jobs", &parse_vc_jobs, py::arg("jsonl_text"));
  m.def("run_adapter", &run_adapter, py::arg("jobs"), py::arg("adapter_template"),
        py::arg("parallelism") = 1, py::arg("output_root") = std::string("."));
  m.def("content_hash", [](const std::string& s) { return content_hash(s); }, py::arg("text"));

  m.def(
      "build_tts_corpus_json",
      [](const CorpusManifest& manifest, const std::vector<VcJob>& jobs,
         const std::string& root) {
        return serialize_training_manifest(build_tts_corpus(manifest, jobs, root));
      },
      py::arg("manifest"), py::arg("completed_jobs"), py::arg("output_root") = std::string("."),
      "Builds the combined training manifest and returns it as JSON text.");
}
