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

#include <array>
#include <bit>
#include <cstring>
#include <fstream>

#include "ctta/diffusion/toy_denoiser.hpp"

namespace ctta::diffusion {

namespace {

constexpr std::array<char, 8> kMagic = {'C', 'T', 'T', 'A', 'T', 'O', 'Y', '\0'};

template <typename T>
void put_le(std::ostream& os, T value) {
  static_assert(std::is_unsigned_v<T>);
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    os.put(static_cast<char>((value >> (8 * i)) & 0xff));
  }
}

template <typename T>
T get_le(std::istream& is, const std::string& what) {
  static_assert(std::is_unsigned_v<T>);
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    const int c = is.get();
    if (c == std::char_traits<char>::eof()) {
      throw CheckpointError("checkpoint: truncated while reading " + what);
    }
    value |= static_cast<T>(static_cast<unsigned char>(c)) << (8 * i);
  }
  return value;
}

}  // namespace

void save_checkpoint(const ToyDenoiser& model, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw CheckpointError("checkpoint: cannot open " + path.string() + " for writing");
  os.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(os, kCheckpointVersion);
  const ToyShape& s = model.shape();
  for (const std::uint32_t field : {s.dim, s.hidden, s.embed, s.time_features, s.n_text,
                                    s.n_timing, s.n_phoneme, s.steps}) {
    put_le<std::uint32_t>(os, field);
  }
  put_le<std::uint64_t>(os, model.parameters().size());
  for (const double value : model.parameters()) put_le<std::uint64_t>(os, std::bit_cast<std::uint64_t>(value));
  os.flush();
  if (!os) throw CheckpointError("checkpoint: write failed for " + path.string());
}

ToyDenoiser load_checkpoint(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw CheckpointError("checkpoint: cannot open " + path.string());
  std::array<char, 8> magic{};
  is.read(magic.data(), magic.size());
  if (is.gcount() != static_cast<std::streamsize>(magic.size()) || magic != kMagic) {
    throw CheckpointError("checkpoint: " + path.string() + " is not a toy denoiser checkpoint");
  }
  const auto version = get_le<std::uint32_t>(is, "version");
  if (version != kCheckpointVersion) {
    throw CheckpointError("checkpoint: unsupported version " + std::to_string(version));
  }
  ToyShape s;
  for (std::uint32_t* field : {&s.dim, &s.hidden, &s.embed, &s.time_features, &s.n_text,
                               &s.n_timing, &s.n_phoneme, &s.steps}) {
    *field = get_le<std::uint32_t>(is, "shape");
  }
  if (s.dim == 0 || s.hidden == 0 || s.steps == 0 || s.time_features % 2 != 0) {
    throw CheckpointError("checkpoint: invalid shape header");
  }
  const auto count = get_le<std::uint64_t>(is, "parameter count");
  if (count != s.parameter_count()) {
    throw CheckpointError("checkpoint: parameter count " + std::to_string(count) +
                          " does not match shape (" + std::to_string(s.parameter_count()) + ")");
  }
  std::vector<double> params(count);
  for (auto& p : params) p = std::bit_cast<double>(get_le<std::uint64_t>(is, "parameters"));
  if (is.peek() != std::char_traits<char>::eof()) {
    throw CheckpointError("checkpoint: trailing bytes after parameters");
  }
  return ToyDenoiser(s, std::move(params));
}

}  // namespace ctta::diffusion
