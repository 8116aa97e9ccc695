#include "rhotica/wav.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "rhotica/errors.hpp"

namespace rhotica {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;

std::uint32_t read_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void put_u32(std::vector<std::uint8_t>& v, std::uint32_t x) {
  v.push_back(static_cast<std::uint8_t>(x & 0xff));
  v.push_back(static_cast<std::uint8_t>((x >> 8) & 0xff));
  v.push_back(static_cast<std::uint8_t>((x >> 16) & 0xff));
  v.push_back(static_cast<std::uint8_t>((x >> 24) & 0xff));
}

void put_u16(std::vector<std::uint8_t>& v, std::uint16_t x) {
  v.push_back(static_cast<std::uint8_t>(x & 0xff));
  v.push_back(static_cast<std::uint8_t>((x >> 8) & 0xff));
}

void put_tag(std::vector<std::uint8_t>& v, const char* tag) {
  v.insert(v.end(), tag, tag + 4);
}

std::vector<std::uint8_t> write_header(const Pcm& pcm, std::uint16_t format,
                                       std::uint16_t bits_per_sample) {
  if (pcm.sample_rate <= 0) throw ValidationError("wav: sample_rate must be positive");
  const std::uint16_t block_align = bits_per_sample / 8;
  const std::uint32_t data_bytes = static_cast<std::uint32_t>(pcm.samples.size()) * block_align;
  std::vector<std::uint8_t> v;
  v.reserve(44 + data_bytes);
  put_tag(v, "RIFF");
  put_u32(v, 36 + data_bytes);
  put_tag(v, "WAVE");
  put_tag(v, "fmt ");
  put_u32(v, 16);
  put_u16(v, format);
  put_u16(v, 1);  // mono
  put_u32(v, static_cast<std::uint32_t>(pcm.sample_rate));
  put_u32(v, static_cast<std::uint32_t>(pcm.sample_rate) * block_align);
  put_u16(v, block_align);
  put_u16(v, bits_per_sample);
  put_tag(v, "data");
  put_u32(v, data_bytes);
  return v;
}

}  // namespace

Pcm read_wav(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw ParseError("wav: not a RIFF/WAVE file");

  bool have_fmt = false, have_data = false;
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  std::size_t data_off = 0, data_len = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const char* id = reinterpret_cast<const char*>(bytes.data() + pos);
    const std::uint32_t size = read_u32(bytes.data() + pos + 4);
    pos += 8;
    if (pos + size > bytes.size()) throw ParseError("wav: truncated chunk");
    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (size < 16) throw ParseError("wav: fmt chunk too small");
      format = read_u16(bytes.data() + pos);
      channels = read_u16(bytes.data() + pos + 2);
      rate = read_u32(bytes.data() + pos + 4);
      bits = read_u16(bytes.data() + pos + 14);
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      data_off = pos;
      data_len = size;
      have_data = true;
    }
    pos += size + (size & 1);  // chunks are word-aligned
  }
  if (!have_fmt) throw ParseError("wav: missing fmt chunk");
  if (!have_data) throw ParseError("wav: missing data chunk");
  if (channels != 1)
    throw ValidationError("wav: expected mono audio, got " + std::to_string(channels) +
                          " channels");
  if (rate == 0) throw ParseError("wav: zero sample rate");

  Pcm pcm;
  pcm.sample_rate = static_cast<int>(rate);
  if (format == kFormatPcm) {
    if (bits != 16)
      throw ValidationError("wav: unsupported PCM bit depth " + std::to_string(bits) +
                            " (need 16)");
    if (data_len % 2 != 0) throw ParseError("wav: truncated file (odd PCM16 data size)");
    const std::size_t n = data_len / 2;
    pcm.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint16_t u = read_u16(bytes.data() + data_off + 2 * i);
      pcm.samples[i] = static_cast<std::int16_t>(u) / 32768.0;
    }
  } else if (format == kFormatFloat) {
    if (bits != 32)
      throw ValidationError("wav: unsupported float bit depth " + std::to_string(bits) +
                            " (need 32)");
    if (data_len % 4 != 0) throw ParseError("wav: truncated file (odd float32 data size)");
    const std::size_t n = data_len / 4;
    pcm.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t u = read_u32(bytes.data() + data_off + 4 * i);
      float f;
      std::memcpy(&f, &u, 4);
      if (!std::isfinite(f)) throw ParseError("wav: non-finite float32 sample");
      pcm.samples[i] = std::clamp(static_cast<double>(f), -1.0, 1.0);
    }
  } else {
    throw ValidationError("wav: compressed or unsupported codec (format tag " +
                          std::to_string(format) + ")");
  }
  return pcm;
}

Pcm read_wav_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open wav file: " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed: " + path);
  try {
    return read_wav(bytes);
  } catch (const IoError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::vector<std::uint8_t> write_wav_pcm16(const Pcm& pcm) {
  auto v = write_header(pcm, kFormatPcm, 16);
  for (double s : pcm.samples) {
    const double clamped = std::clamp(s, -1.0, 1.0);
    const double scaled = std::round(clamped * 32768.0);
    const auto code = static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0));
    put_u16(v, static_cast<std::uint16_t>(code));
  }
  return v;
}

std::vector<std::uint8_t> write_wav_float32(const Pcm& pcm) {
  auto v = write_header(pcm, kFormatFloat, 32);
  for (double s : pcm.samples) {
    const float f = static_cast<float>(std::clamp(s, -1.0, 1.0));
    std::uint32_t u;
    std::memcpy(&u, &f, 4);
    put_u32(v, u);
  }
  return v;
}

void write_wav_file(const std::string& path, const Pcm& pcm, bool as_float32) {
  const auto bytes = as_float32 ? write_wav_float32(pcm) : write_wav_pcm16(pcm);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open wav file for writing: " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace rhotica
