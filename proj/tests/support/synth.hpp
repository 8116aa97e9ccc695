#pragma once

// All-pole test-signal generators: cascaded two-pole resonators at chosen
// (frequency, bandwidth) pairs, excited by a single impulse or by a 100 Hz
// impulse train with a time-varying third resonance.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace synth {

struct Resonance {
  double frequency = 0.0;  // Hz
  double bandwidth = 0.0;  // Hz
};

// Predictor coefficients a_k of the cascade, so x[n] = sum a_k x[n-k] + e[n].
// Each resonance contributes a conjugate pole pair at radius exp(-pi*bw/fs),
// angle 2*pi*f/fs.
inline std::vector<double> all_pole_coeffs(const std::vector<Resonance>& sections, double fs) {
  std::vector<double> a{1.0};
  for (const auto& s : sections) {
    const double r = std::exp(-M_PI * s.bandwidth / fs);
    const double th = 2.0 * M_PI * s.frequency / fs;
    const double sec[3] = {1.0, -2.0 * r * std::cos(th), r * r};
    std::vector<double> next(a.size() + 2, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < 3; ++j) next[i + j] += a[i] * sec[j];
    a = std::move(next);
  }
  std::vector<double> out(a.size() - 1);
  for (std::size_t k = 1; k < a.size(); ++k) out[k - 1] = -a[k];
  return out;
}

inline std::vector<double> impulse_response(const std::vector<double>& coeffs, std::size_t n) {
  std::vector<double> x(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = (i == 0) ? 1.0 : 0.0;
    const std::size_t kmax = std::min(coeffs.size(), i);
    for (std::size_t k = 1; k <= kmax; ++k) acc += coeffs[k - 1] * x[i - k];
    x[i] = acc;
  }
  return x;
}

// Impulse train at f0 through a three-resonance filter: F1 = 500 Hz (bw 80),
// F2 = 1500 Hz (bw 90), F3 = f3_of_t(t) (bw 100). Coefficients refresh every
// 64 samples. Output is peak-normalized.
inline std::vector<double> vowel_like(const std::function<double(double)>& f3_of_t,
                                      double duration, double fs, double f0 = 100.0) {
  const std::size_t n = static_cast<std::size_t>(duration * fs);
  const std::size_t period = static_cast<std::size_t>(fs / f0);
  std::vector<double> exc(n, 0.0);
  for (std::size_t i = 0; i < n; i += period) exc[i] = 1.0;

  std::vector<double> x(n, 0.0);
  const std::size_t block = 64;
  for (std::size_t s = 0; s < n; s += block) {
    const double t_mid = (static_cast<double>(s) + block / 2.0) / fs;
    const std::vector<double> a = all_pole_coeffs(
        {{500.0, 80.0}, {1500.0, 90.0}, {f3_of_t(t_mid), 100.0}}, fs);
    const std::size_t stop = std::min(s + block, n);
    for (std::size_t i = s; i < stop; ++i) {
      double acc = exc[i];
      const std::size_t kmax = std::min(a.size(), i);
      for (std::size_t k = 1; k <= kmax; ++k) acc += a[k - 1] * x[i - k];
      x[i] = acc;
    }
  }
  double peak = 0.0;
  for (double v : x) peak = std::max(peak, std::fabs(v));
  if (peak > 0.0)
    for (double& v : x) v /= peak;
  return x;
}

// F3 trajectory helper: holds `before` until span_start, ramps linearly to
// `after` across the span, holds `after` past span_end.
inline std::function<double(double)> ramp_f3(double before, double after, double span_start,
                                             double span_end) {
  return [=](double t) {
    if (t <= span_start) return before;
    if (t >= span_end) return after;
    return before + (after - before) * (t - span_start) / (span_end - span_start);
  };
}

}  // namespace synth
