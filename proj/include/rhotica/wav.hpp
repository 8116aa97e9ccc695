#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rhotica {

// Mono audio, samples in [-1,1].
struct Pcm {
  std::vector<double> samples;
  int sample_rate = 0;  // Hz, > 0

  double duration() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
  }
};

// RIFF/WAVE reader for mono PCM16 or IEEE float32. PCM16 samples are divided
// by 32768 so the most negative code maps to exactly -1.
Pcm read_wav(const std::vector<std::uint8_t>& bytes);
Pcm read_wav_file(const std::string& path);

std::vector<std::uint8_t> write_wav_pcm16(const Pcm& pcm);
std::vector<std::uint8_t> write_wav_float32(const Pcm& pcm);
void write_wav_file(const std::string& path, const Pcm& pcm, bool as_float32 = false);

}  // namespace rhotica
