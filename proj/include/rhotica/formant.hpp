#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rhotica/wav.hpp"

namespace rhotica {

// All-pole model A(z) = 1 - sum_{k=1..p} a_k z^-k fitted by the
// autocorrelation method. For positive-definite autocorrelation input all
// reflection coefficients satisfy |k_i| < 1 and A(z) is minimum phase.
struct LpcModel {
  int order = 0;
  std::vector<double> coefficients;  // a_1..a_p
  double gain = 0.0;                 // sqrt of the residual energy
  std::vector<double> reflection;    // k_1..k_p
};

struct Formant {
  double frequency = 0.0;  // Hz, in (0, fs/2)
  double bandwidth = 0.0;  // Hz, > 0
};

struct TimeSpan {
  double start = 0.0;
  double end = 0.0;
};

struct TrackFrame {
  double time = 0.0;  // frame-center seconds
  std::optional<Formant> f1, f2, f3;
};

struct FormantTrack {
  std::vector<TrackFrame> frames;  // times strictly increasing, within span
  TimeSpan span;
  std::string utterance;
};

// Slope metrics over the frames where f3 is present: the closed-form
// least-squares slope of frequency against time, and the telescoped sum of
// differences between consecutive present frames.
struct SlopeStat {
  double ols_slope = 0.0;   // Hz/s
  double net_change = 0.0;  // Hz
  int n_frames = 0;
};

struct DspConfig {
  double frame_ms = 25.0;
  double hop_ms = 10.0;
  double preemphasis = 0.97;      // in [0, 1)
  int lpc_order = 0;              // 0 = auto: 2 + fs/1000
  double max_bandwidth_hz = 400.0;
  double min_freq_hz = 90.0;

  void validate() const;
  int order_for(int sample_rate) const;
};

// Pre-emphasizes the whole signal (y[n] = x[n] - a*x[n-1]), then cuts
// Hamming-windowed frames. A signal shorter than one frame yields an empty
// list.
std::vector<std::vector<double>> preprocess(const Pcm& pcm, double frame_ms, double hop_ms,
                                            double preemphasis);

std::vector<double> autocorrelation(std::span<const double> frame, int max_lag);

// Levinson-Durbin solve of the Toeplitz normal equations R a = r.
LpcModel lpc_fit(std::span<const double> frame, int order);

// Resonances of A(z): complex roots with positive imaginary part map to
// frequency fs*arg/(2*pi) and bandwidth -fs*ln|root|/pi. Keeps those with
// min_freq < f < fs/2 - 50 and bandwidth < max_bandwidth, ascending by
// frequency.
std::vector<Formant> formants_from_lpc(const LpcModel& model, double sample_rate,
                                       double max_bandwidth_hz, double min_freq_hz);

// One entry per frame whose center lies in `span`; f3 is absent wherever
// fewer than three formants survive the filters (silence, degenerate frames).
FormantTrack track_f3(const Pcm& pcm, TimeSpan span, const DspConfig& cfg,
                      const std::string& utterance = {});

SlopeStat f3_slope(const FormantTrack& track);

}  // namespace rhotica
