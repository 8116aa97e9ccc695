#include "rhotica/formant.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rhotica/errors.hpp"
#include "rhotica/roots.hpp"

namespace rhotica {

namespace {

constexpr double kRootResidualLimit = 1e-8;
constexpr double kNyquistGuardHz = 50.0;

std::vector<double> hamming(std::size_t n) {
  std::vector<double> w(n, 1.0);
  if (n < 2) return w;
  for (std::size_t i = 0; i < n; ++i)
    w[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                  static_cast<double>(n - 1));
  return w;
}

}  // namespace

void DspConfig::validate() const {
  if (!(frame_ms > 0.0) || !(hop_ms > 0.0))
    throw ValidationError("dsp config: frame_ms and hop_ms must be positive");
  if (preemphasis < 0.0 || preemphasis >= 1.0)
    throw ValidationError("dsp config: preemphasis must be in [0, 1)");
  if (lpc_order < 0) throw ValidationError("dsp config: lpc_order must be >= 0");
  if (!(max_bandwidth_hz > 0.0)) throw ValidationError("dsp config: max_bandwidth_hz must be positive");
  if (min_freq_hz < 0.0) throw ValidationError("dsp config: min_freq_hz must be >= 0");
}

int DspConfig::order_for(int sample_rate) const {
  if (lpc_order > 0) return lpc_order;
  return 2 + sample_rate / 1000;
}

std::vector<std::vector<double>> preprocess(const Pcm& pcm, double frame_ms, double hop_ms,
                                            double preemphasis) {
  if (pcm.samples.empty()) return {};
  if (pcm.sample_rate <= 0) throw ValidationError("preprocess: sample_rate must be positive");
  if (preemphasis < 0.0 || preemphasis >= 1.0)
    throw ValidationError("preprocess: preemphasis must be in [0, 1)");
  const auto frame_len =
      static_cast<std::size_t>(std::lround(frame_ms * pcm.sample_rate / 1000.0));
  const auto hop = static_cast<std::size_t>(std::lround(hop_ms * pcm.sample_rate / 1000.0));
  if (frame_len == 0 || hop == 0)
    throw ValidationError("preprocess: frame and hop must round to at least one sample");
  if (pcm.samples.size() < frame_len) return {};

  std::vector<double> emphasized(pcm.samples.size());
  emphasized[0] = pcm.samples[0];
  for (std::size_t i = 1; i < pcm.samples.size(); ++i)
    emphasized[i] = pcm.samples[i] - preemphasis * pcm.samples[i - 1];

  const std::vector<double> window = hamming(frame_len);
  std::vector<std::vector<double>> frames;
  for (std::size_t start = 0; start + frame_len <= emphasized.size(); start += hop) {
    std::vector<double> frame(frame_len);
    for (std::size_t i = 0; i < frame_len; ++i) frame[i] = emphasized[start + i] * window[i];
    frames.push_back(std::move(frame));
  }
  return frames;
}

std::vector<double> autocorrelation(std::span<const double> frame, int max_lag) {
  if (max_lag < 0) throw ValidationError("autocorrelation: max_lag must be >= 0");
  if (frame.size() <= static_cast<std::size_t>(max_lag))
    throw ValidationError("autocorrelation: frame shorter than max_lag + 1");
  std::vector<double> r(static_cast<std::size_t>(max_lag) + 1, 0.0);
  for (int lag = 0; lag <= max_lag; ++lag) {
    double acc = 0.0;
    for (std::size_t i = static_cast<std::size_t>(lag); i < frame.size(); ++i)
      acc += frame[i] * frame[i - static_cast<std::size_t>(lag)];
    r[static_cast<std::size_t>(lag)] = acc;
  }
  return r;
}

LpcModel lpc_fit(std::span<const double> frame, int order) {
  if (order < 2) throw ValidationError("lpc_fit: order must be >= 2");
  if (frame.size() <= static_cast<std::size_t>(order))
    throw ValidationError("lpc_fit: frame must be longer than the order");
  const std::vector<double> r = autocorrelation(frame, order);
  if (r[0] <= 0.0) throw NumericError("lpc_fit: degenerate input (all-zero frame)");

  LpcModel model;
  model.order = order;
  model.coefficients.assign(static_cast<std::size_t>(order), 0.0);
  model.reflection.reserve(static_cast<std::size_t>(order));

  double error = r[0];
  std::vector<double>& a = model.coefficients;
  std::vector<double> prev(a.size(), 0.0);
  for (int i = 1; i <= order; ++i) {
    double acc = r[static_cast<std::size_t>(i)];
    for (int j = 1; j < i; ++j)
      acc -= a[static_cast<std::size_t>(j - 1)] * r[static_cast<std::size_t>(i - j)];
    const double k = acc / error;
    if (!std::isfinite(k) || std::abs(k) >= 1.0)
      throw NumericError("lpc_fit: non-positive-definite autocorrelation (|k_" +
                         std::to_string(i) + "| >= 1)");
    model.reflection.push_back(k);
    prev = a;
    a[static_cast<std::size_t>(i - 1)] = k;
    for (int j = 1; j < i; ++j)
      a[static_cast<std::size_t>(j - 1)] =
          prev[static_cast<std::size_t>(j - 1)] - k * prev[static_cast<std::size_t>(i - j - 1)];
    error *= (1.0 - k * k);
    if (!(error > 0.0)) throw NumericError("lpc_fit: prediction error collapsed to zero");
  }
  model.gain = std::sqrt(error);
  return model;
}

std::vector<Formant> formants_from_lpc(const LpcModel& model, double sample_rate,
                                       double max_bandwidth_hz, double min_freq_hz) {
  if (sample_rate <= 0.0) throw ValidationError("formants_from_lpc: bad sample rate");
  const int p = model.order;
  // A(z) * z^p in ascending powers: [-a_p, ..., -a_1, 1].
  std::vector<double> poly(static_cast<std::size_t>(p) + 1, 0.0);
  for (int k = 1; k <= p; ++k)
    poly[static_cast<std::size_t>(p - k)] = -model.coefficients[static_cast<std::size_t>(k - 1)];
  poly[static_cast<std::size_t>(p)] = 1.0;

  const auto roots = find_polynomial_roots(poly);
  for (const auto& root : roots) {
    const auto residual = std::abs(evaluate_polynomial(poly, root));
    if (residual >= kRootResidualLimit * std::max(1.0, std::abs(std::pow(std::abs(root), p))))
      throw NumericError("formants_from_lpc: root residual above tolerance");
  }

  std::vector<Formant> formants;
  for (const auto& root : roots) {
    if (root.imag() <= 1e-12) continue;  // keep one of each conjugate pair
    const double magnitude = std::abs(root);
    if (magnitude >= 1.0) continue;  // not a resonance
    const double freq =
        sample_rate * std::atan2(root.imag(), root.real()) / (2.0 * std::numbers::pi);
    const double bandwidth = -sample_rate * std::log(magnitude) / std::numbers::pi;
    if (freq > min_freq_hz && freq < sample_rate / 2.0 - kNyquistGuardHz &&
        bandwidth < max_bandwidth_hz)
      formants.push_back({freq, bandwidth});
  }
  std::sort(formants.begin(), formants.end(),
            [](const Formant& a, const Formant& b) { return a.frequency < b.frequency; });
  return formants;
}

FormantTrack track_f3(const Pcm& pcm, TimeSpan span, const DspConfig& cfg,
                      const std::string& utterance) {
  cfg.validate();
  if (pcm.sample_rate <= 0) throw ValidationError("track_f3: sample_rate must be positive");
  if (!(span.start < span.end))
    throw ValidationError("track_f3: span start must precede span end");
  if (span.start < 0.0 || span.end > pcm.duration() + 1e-9)
    throw ValidationError("track_f3: span outside audio duration");

  FormantTrack track;
  track.span = span;
  track.utterance = utterance;

  const auto frames = preprocess(pcm, cfg.frame_ms, cfg.hop_ms, cfg.preemphasis);
  if (frames.empty()) return track;
  const double fs = pcm.sample_rate;
  const auto frame_len = static_cast<double>(frames.front().size());
  const double hop = std::lround(cfg.hop_ms * fs / 1000.0);
  const int order = cfg.order_for(pcm.sample_rate);

  for (std::size_t k = 0; k < frames.size(); ++k) {
    const double center = (static_cast<double>(k) * hop + frame_len / 2.0) / fs;
    if (center < span.start || center > span.end) continue;
    TrackFrame tf;
    tf.time = center;
    try {
      const LpcModel model = lpc_fit(frames[k], order);
      const auto formants =
          formants_from_lpc(model, fs, cfg.max_bandwidth_hz, cfg.min_freq_hz);
      if (formants.size() >= 1) tf.f1 = formants[0];
      if (formants.size() >= 2) tf.f2 = formants[1];
      if (formants.size() >= 3) tf.f3 = formants[2];
    } catch (const NumericError&) {
      // silence or a degenerate frame contributes no formant samples
    }
    track.frames.push_back(tf);
  }
  return track;
}

SlopeStat f3_slope(const FormantTrack& track) {
  std::vector<std::pair<double, double>> pts;  // (time, f3)
  for (const auto& f : track.frames)
    if (f.f3) pts.emplace_back(f.time, f.f3->frequency);
  if (pts.size() < 2)
    throw ValidationError("f3_slope: fewer than 2 frames with f3 present");

  double mean_t = 0.0, mean_y = 0.0;
  for (const auto& [t, y] : pts) {
    mean_t += t;
    mean_y += y;
  }
  mean_t /= static_cast<double>(pts.size());
  mean_y /= static_cast<double>(pts.size());
  double num = 0.0, den = 0.0;
  for (const auto& [t, y] : pts) {
    num += (t - mean_t) * (y - mean_y);
    den += (t - mean_t) * (t - mean_t);
  }
  if (den == 0.0) throw NumericError("f3_slope: zero time spread");

  SlopeStat stat;
  stat.ols_slope = num / den;
  stat.n_frames = static_cast<int>(pts.size());

  // Differences between consecutive present frames only; gaps contribute
  // nothing, so the sum telescopes per contiguous run.
  double net = 0.0;
  for (std::size_t k = 1; k < track.frames.size(); ++k)
    if (track.frames[k].f3 && track.frames[k - 1].f3)
      net += track.frames[k].f3->frequency - track.frames[k - 1].f3->frequency;
  stat.net_change = net;
  return stat;
}

}  // namespace rhotica
