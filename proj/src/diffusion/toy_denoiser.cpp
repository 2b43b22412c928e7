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

#include <cmath>
#include <numbers>

#include "ctta/diffusion/toy_denoiser.hpp"

namespace ctta::diffusion {

namespace {

struct Layout {
  std::size_t w1, b1, w2, b2, w3, b3, level, text, timing, phoneme, total;

  explicit Layout(const ToyShape& s) {
    const std::size_t in = s.input_size();
    std::size_t at = 0;
    const auto take = [&](std::size_t n) {
      const std::size_t start = at;
      at += n;
      return start;
    };
    w1 = take(s.hidden * in);
    b1 = take(s.hidden);
    w2 = take(s.hidden * s.hidden);
    b2 = take(s.hidden);
    w3 = take(s.dim * s.hidden);
    b3 = take(s.dim);
    level = take(kConditionLevels * s.embed);
    text = take(s.n_text * s.embed);
    timing = take(s.n_timing * s.embed);
    phoneme = take(s.n_phoneme * s.embed);
    total = at;
  }
};

}  // namespace

std::size_t ToyShape::parameter_count() const { return Layout(*this).total; }

struct ToyDenoiser::Forward {
  std::vector<double> x, h1, h2, out;
};

ToyDenoiser::ToyDenoiser(ToyShape shape, std::uint64_t seed) : shape_(shape) {
  const Layout l(shape_);
  params_.assign(l.total, 0.0);
  Rng rng(seed);
  const auto fill = [&](std::size_t begin, std::size_t count, double scale) {
    for (std::size_t i = 0; i < count; ++i) params_[begin + i] = scale * rng.normal();
  };
  fill(l.w1, shape_.hidden * shape_.input_size(), 1.0 / std::sqrt(shape_.input_size()));
  fill(l.w2, shape_.hidden * shape_.hidden, 1.0 / std::sqrt(shape_.hidden));
  fill(l.w3, shape_.dim * shape_.hidden, 0.1 / std::sqrt(shape_.hidden));
  fill(l.level, l.total - l.level, 0.5);
}

ToyDenoiser::ToyDenoiser(ToyShape shape, std::vector<double> parameters)
    : shape_(shape), params_(std::move(parameters)) {
  if (params_.size() != shape_.parameter_count()) {
    throw std::invalid_argument("toy denoiser: expected " +
                                std::to_string(shape_.parameter_count()) +
                                " parameters, got " + std::to_string(params_.size()));
  }
}

void ToyDenoiser::check_condition(const Condition& c) const {
  const auto bad = [](int id, std::uint32_t n) { return id < 0 || id >= static_cast<int>(n); };
  if (bad(c.text, shape_.n_text) || bad(c.timing, shape_.n_timing) ||
      bad(c.phoneme, shape_.n_phoneme)) {
    throw std::out_of_range("toy denoiser: condition " + c.to_string() + " out of range");
  }
}

void ToyDenoiser::forward(std::span<const double> z, int t, const Condition& c,
                          Forward& f) const {
  if (z.size() != shape_.dim) throw std::invalid_argument("toy denoiser: dimension mismatch");
  if (t < 1 || t > static_cast<int>(shape_.steps)) {
    throw std::out_of_range("toy denoiser: step out of range");
  }
  check_condition(c);
  const Layout l(shape_);
  const std::size_t d = shape_.dim, in = shape_.input_size(), h = shape_.hidden,
                    e = shape_.embed, nf = shape_.time_features;
  const double* p = params_.data();

  f.x.assign(in, 0.0);
  std::copy(z.begin(), z.end(), f.x.begin());
  const double tau = static_cast<double>(t) / shape_.steps;
  for (std::size_t k = 0; k < nf / 2; ++k) {
    const double freq = std::numbers::pi / 2.0 * std::pow(2.0, static_cast<double>(k));
    f.x[d + 2 * k] = std::sin(freq * tau);
    f.x[d + 2 * k + 1] = std::cos(freq * tau);
  }
  double* emb = f.x.data() + d + nf;
  const int level = static_cast<int>(c.level);
  const auto add_row = [&](std::size_t table, int row) {
    for (std::size_t j = 0; j < e; ++j) emb[j] += p[table + static_cast<std::size_t>(row) * e + j];
  };
  add_row(l.level, level);
  if (level >= 1) add_row(l.text, c.text);
  if (level >= 2) add_row(l.timing, c.timing);
  if (level >= 3) add_row(l.phoneme, c.phoneme);

  f.h1.resize(h);
  for (std::size_t i = 0; i < h; ++i) {
    double acc = p[l.b1 + i];
    const double* row = p + l.w1 + i * in;
    for (std::size_t j = 0; j < in; ++j) acc += row[j] * f.x[j];
    f.h1[i] = std::tanh(acc);
  }
  f.h2.resize(h);
  for (std::size_t i = 0; i < h; ++i) {
    double acc = p[l.b2 + i];
    const double* row = p + l.w2 + i * h;
    for (std::size_t j = 0; j < h; ++j) acc += row[j] * f.h1[j];
    f.h2[i] = std::tanh(acc);
  }
  f.out.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    double acc = p[l.b3 + i];
    const double* row = p + l.w3 + i * h;
    for (std::size_t j = 0; j < h; ++j) acc += row[j] * f.h2[j];
    f.out[i] = acc;
  }
}

Latent ToyDenoiser::predict(std::span<const double> z, int t, const Condition& c) const {
  Forward f;
  forward(z, t, c, f);
  return std::move(f.out);
}

double ToyDenoiser::accumulate_gradient(std::span<const double> z, int t, const Condition& c,
                                        std::span<const double> eps, double scale,
                                        std::span<double> grad) const {
  Forward f;
  forward(z, t, c, f);
  const Layout l(shape_);
  const std::size_t d = shape_.dim, in = shape_.input_size(), h = shape_.hidden,
                    e = shape_.embed, nf = shape_.time_features;
  const double* p = params_.data();
  double* g = grad.data();

  double loss = 0.0;
  std::vector<double> d_out(d);
  for (std::size_t i = 0; i < d; ++i) {
    const double diff = f.out[i] - eps[i];
    loss += diff * diff;
    d_out[i] = 2.0 * scale * diff;
  }

  std::vector<double> d_h2(h, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    g[l.b3 + i] += d_out[i];
    const double* row = p + l.w3 + i * h;
    double* grow = g + l.w3 + i * h;
    for (std::size_t j = 0; j < h; ++j) {
      grow[j] += d_out[i] * f.h2[j];
      d_h2[j] += row[j] * d_out[i];
    }
  }
  std::vector<double> d_h1(h, 0.0);
  for (std::size_t i = 0; i < h; ++i) {
    const double da = d_h2[i] * (1.0 - f.h2[i] * f.h2[i]);
    g[l.b2 + i] += da;
    const double* row = p + l.w2 + i * h;
    double* grow = g + l.w2 + i * h;
    for (std::size_t j = 0; j < h; ++j) {
      grow[j] += da * f.h1[j];
      d_h1[j] += row[j] * da;
    }
  }
  std::vector<double> d_emb(e, 0.0);
  for (std::size_t i = 0; i < h; ++i) {
    const double da = d_h1[i] * (1.0 - f.h1[i] * f.h1[i]);
    g[l.b1 + i] += da;
    const double* row = p + l.w1 + i * in;
    double* grow = g + l.w1 + i * in;
    for (std::size_t j = 0; j < in; ++j) grow[j] += da * f.x[j];
    for (std::size_t j = 0; j < e; ++j) d_emb[j] += row[d + nf + j] * da;
  }
  const int level = static_cast<int>(c.level);
  const auto add_row = [&](std::size_t table, int row) {
    for (std::size_t j = 0; j < e; ++j) g[table + static_cast<std::size_t>(row) * e + j] += d_emb[j];
  };
  add_row(l.level, level);
  if (level >= 1) add_row(l.text, c.text);
  if (level >= 2) add_row(l.timing, c.timing);
  if (level >= 3) add_row(l.phoneme, c.phoneme);
  return loss;
}

}  // namespace ctta::diffusion
