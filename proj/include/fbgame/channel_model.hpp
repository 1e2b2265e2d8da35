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
#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "fbgame/types.hpp"

namespace fbgame {

/// One Rayleigh fading draw together with the quantization-noise base draw
/// that is paired with it. Both matrices are N_s x N_t with i.i.d. CN(0, 1)
/// entries; row k belongs to user k.
struct ChannelRealization {
  CMatrix h;
  CMatrix nq;
  std::uint64_t seed = 0;
};

/// Mean-square distortion of a quantized channel estimate, in [0, 1].
class Distortion {
 public:
  explicit Distortion(double d);
  double value() const { return d_; }

 private:
  double d_;
};

/// Coefficients of the un-normalized quantized-CSI model
/// h_bar = mu * h + nu * n_q.
struct MuNu {
  double mu;
  double nu;
};

/// Draws h and then nq from a 64-bit Mersenne twister seeded with `seed`.
/// Entries are filled row by row, real part first.
ChannelRealization draw_channel(std::size_t n_s, std::size_t n_t, std::uint64_t seed);

/// Rate-distortion bound of a unit-variance complex Gaussian source: D = 2^-r.
Distortion distortion_from_rate(double rate_bits);

MuNu mu_nu(Distortion d);

/// Normalized quantized estimate: row k is sqrt(1 - 2^-r_k) h_k + sqrt(2^-r_k) nq_k.
CMatrix quantize_channel(const ChannelRealization& real, std::span<const double> rates);

/// Writes the quantized estimate into `out` without reallocating when the
/// shape already matches. `true_gain[k]` and `noise_gain[k]` are the two row
/// coefficients of `quantize_channel`.
void quantize_channel_into(const ChannelRealization& real, std::span<const double> true_gain,
                           std::span<const double> noise_gain, CMatrix& out);

/// Seed of Monte Carlo trial `trial` under `master_seed`. The pair is mixed
/// through splitmix64 so that banks built from neighbouring master seeds do
/// not share draws.
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t trial);

/// Fixed bank of channel draws reused by every utility evaluation (common
/// random numbers). Trial t is draw_channel(n_s, n_t, trial_seed(master, t)).
class CrnBank {
 public:
  CrnBank(std::size_t n_s, std::size_t n_t, std::size_t trials, std::uint64_t master_seed);

  std::size_t size() const { return draws_.size(); }
  std::size_t n_s() const { return n_s_; }
  std::size_t n_t() const { return n_t_; }
  std::uint64_t master_seed() const { return master_seed_; }

  const ChannelRealization& operator[](std::size_t t) const { return draws_[t]; }
  auto begin() const { return draws_.begin(); }
  auto end() const { return draws_.end(); }

 private:
  std::size_t n_s_;
  std::size_t n_t_;
  std::uint64_t master_seed_;
  std::vector<ChannelRealization> draws_;
};

}  // namespace fbgame
