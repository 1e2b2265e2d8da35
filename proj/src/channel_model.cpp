/*
 * Copyright 2026 The fbgame Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "fbgame/channel_model.hpp"

#include <cmath>
#include <random>
#include <string>

#include "fbgame/errors.hpp"

namespace fbgame {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

void fill_gaussian(CMatrix& m, std::mt19937_64& rng) {
  // CN(0, 1): independent real and imaginary parts of variance 1/2.
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  for (Eigen::Index row = 0; row < m.rows(); ++row) {
    for (Eigen::Index col = 0; col < m.cols(); ++col) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(row, col) = Complex(re, im);
    }
  }
}

}  // namespace

Distortion::Distortion(double d) : d_(d) {
  if (!(d >= 0.0 && d <= 1.0)) {
    throw InvalidArgument("distortion must lie in [0, 1], got " + std::to_string(d));
  }
}

ChannelRealization draw_channel(std::size_t n_s, std::size_t n_t, std::uint64_t seed) {
  if (n_s == 0 || n_t == 0) {
    throw InvalidArgument("draw_channel: dimensions must be positive");
  }
  std::mt19937_64 rng(seed);
  ChannelRealization real{CMatrix(n_s, n_t), CMatrix(n_s, n_t), seed};
  fill_gaussian(real.h, rng);
  fill_gaussian(real.nq, rng);
  return real;
}

Distortion distortion_from_rate(double rate_bits) {
  if (!(rate_bits >= 0.0)) {
    throw InvalidArgument("feedback rate must be non-negative, got " + std::to_string(rate_bits));
  }
  return Distortion(std::exp2(-rate_bits));
}

MuNu mu_nu(Distortion d) {
  const double v = d.value();
  return {1.0 - v, std::sqrt(v * (1.0 - v))};
}

void quantize_channel_into(const ChannelRealization& real, std::span<const double> true_gain,
                           std::span<const double> noise_gain, CMatrix& out) {
  const auto n_s = real.h.rows();
  out.resize(n_s, real.h.cols());
  for (Eigen::Index k = 0; k < n_s; ++k) {
    out.row(k) = true_gain[k] * real.h.row(k) + noise_gain[k] * real.nq.row(k);
  }
}

CMatrix quantize_channel(const ChannelRealization& real, std::span<const double> rates) {
  if (rates.size() != static_cast<std::size_t>(real.h.rows())) {
    throw InvalidArgument("quantize_channel: expected " + std::to_string(real.h.rows()) +
                          " rates, got " + std::to_string(rates.size()));
  }
  std::vector<double> true_gain(rates.size());
  std::vector<double> noise_gain(rates.size());
  for (std::size_t k = 0; k < rates.size(); ++k) {
    const double d = distortion_from_rate(rates[k]).value();
    true_gain[k] = std::sqrt(1.0 - d);
    noise_gain[k] = std::sqrt(d);
  }
  CMatrix out;
  quantize_channel_into(real, true_gain, noise_gain, out);
  return out;
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t trial) {
  return splitmix64(splitmix64(master_seed) ^ static_cast<std::uint64_t>(trial));
}

CrnBank::CrnBank(std::size_t n_s, std::size_t n_t, std::size_t trials, std::uint64_t master_seed)
    : n_s_(n_s), n_t_(n_t), master_seed_(master_seed) {
  if (trials == 0) throw InvalidArgument("CrnBank: at least one trial is required");
  draws_.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    draws_.push_back(draw_channel(n_s, n_t, trial_seed(master_seed, t)));
  }
}

}  // namespace fbgame
