// Copyright 2026 The ctta Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "ctta/audio/waveform.hpp"

namespace ctta::audio {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint32_t le32(const std::uint8_t* p) {
  return std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 | std::uint32_t(p[2]) << 16 |
         std::uint32_t(p[3]) << 24;
}
std::uint16_t le16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | p[1] << 8);
}

void put32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void put16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}
void put_tag(std::vector<std::uint8_t>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

float decode_sample(const std::uint8_t* p, int bits, bool is_float) {
  if (is_float) {
    float f;
    std::uint32_t raw = le32(p);
    std::memcpy(&f, &raw, sizeof f);
    return f;
  }
  switch (bits) {
    case 8: return (static_cast<int>(p[0]) - 128) / 128.0f;
    case 16: return static_cast<std::int16_t>(le16(p)) / 32768.0f;
    case 24: {
      std::int32_t v = p[0] | p[1] << 8 | p[2] << 16;
      if (v & 0x800000) v |= ~0xFFFFFF;
      return static_cast<float>(v / 8388608.0);
    }
    case 32: return static_cast<float>(static_cast<std::int32_t>(le32(p)) / 2147483648.0);
  }
  return 0.0f;
}

}  // namespace

Waveform decode_wav(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw AudioError("not a RIFF/WAVE file");
  }
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  const std::uint8_t* data = nullptr;
  std::size_t data_size = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t* chunk = bytes.data() + pos;
    const std::size_t size = le32(chunk + 4);
    const std::size_t body = pos + 8;
    const std::size_t available = std::min(size, bytes.size() - body);
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (available < 16) throw AudioError("truncated fmt chunk");
      format = le16(chunk + 8);
      channels = le16(chunk + 10);
      rate = le32(chunk + 12);
      bits = le16(chunk + 22);
      if (format == kFormatExtensible) {
        if (available < 26) throw AudioError("truncated extensible fmt chunk");
        format = le16(chunk + 8 + 24);
      }
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = chunk + 8;
      data_size = available;
    }
    pos = body + size + (size & 1);
  }
  if (channels == 0 || rate == 0) throw AudioError("missing or invalid fmt chunk");
  if (!data) throw AudioError("missing data chunk");
  const bool is_float = format == kFormatFloat;
  if (!((format == kFormatPcm && (bits == 8 || bits == 16 || bits == 24 || bits == 32)) ||
        (is_float && bits == 32))) {
    throw AudioError("unsupported WAV encoding (format " + std::to_string(format) +
                     ", " + std::to_string(bits) + " bits)");
  }
  const std::size_t width = bits / 8;
  const std::size_t count = data_size / width / channels * channels;
  Waveform wave;
  wave.sample_rate = static_cast<int>(rate);
  wave.channels = channels;
  wave.samples.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    wave.samples[i] = decode_sample(data + i * width, bits, is_float);
  }
  return wave;
}

Waveform read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw AudioError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  try {
    return decode_wav(bytes);
  } catch (const AudioError& e) {
    throw AudioError(path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> encode_wav_pcm16(const Waveform& wave) {
  const auto data_bytes = static_cast<std::uint32_t>(wave.samples.size() * 2);
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put32(out, 36 + data_bytes);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put32(out, 16);
  put16(out, kFormatPcm);
  put16(out, static_cast<std::uint16_t>(wave.channels));
  put32(out, static_cast<std::uint32_t>(wave.sample_rate));
  put32(out, static_cast<std::uint32_t>(wave.sample_rate * wave.channels * 2));
  put16(out, static_cast<std::uint16_t>(wave.channels * 2));
  put16(out, 16);
  put_tag(out, "data");
  put32(out, data_bytes);
  for (const float s : wave.samples) {
    const double scaled = std::clamp(static_cast<double>(s) * 32768.0, -32768.0, 32767.0);
    put16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(std::lround(scaled))));
  }
  return out;
}

void write_wav(const std::filesystem::path& path, const Waveform& wave) {
  const auto bytes = encode_wav_pcm16(wave);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw AudioError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw AudioError("write failed for " + path.string());
}

double rms(std::span<const float> samples) {
  if (samples.empty()) return 0.0;
  double sum = 0.0;
  for (const float s : samples) sum += static_cast<double>(s) * s;
  return std::sqrt(sum / static_cast<double>(samples.size()));
}

double peak(std::span<const float> samples) {
  double p = 0.0;
  for (const float s : samples) p = std::max(p, static_cast<double>(std::fabs(s)));
  return p;
}

}  // namespace ctta::audio
