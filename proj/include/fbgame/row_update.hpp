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
#include <span>
#include <vector>

#include "fbgame/channel_model.hpp"
#include "fbgame/types.hpp"

namespace fbgame {

/// SINRs over a channel bank as the feedback rate of one user (the "swept"
/// user) varies while every other quantized row stays fixed.
///
/// The swept row is a * h_k + b * nq_k with a^2 + b^2 = 1, so
/// Hq^H Hq + psi I is a rank-one update of a fixed matrix. Writing the
/// precoder as (Hq^H Hq + psi I)^-1 Hq^H and applying Sherman-Morrison, each
/// trial reduces to a handful of precomputed inner products: one user's SINR
/// costs O(N_s) per trial instead of a fresh O(N^3) solve. Results agree with
/// build_precoder + link_metrics to rounding.
///
/// Requires psi > 0: with the swept row removed, Hq^H Hq is singular.
class RowUpdateSinr {
 public:
  /// `true_gain` / `noise_gain` give the fixed rows' quantization coefficients;
  /// entry `swept` is ignored.
  RowUpdateSinr(const CrnBank& bank, std::span<const double> true_gain,
                std::span<const double> noise_gain, std::size_t swept, double psi, double n0);

  std::size_t swept_user() const { return swept_; }
  std::size_t trials() const { return cache_.size(); }

  /// SINR of user `user` in trial `t` when the swept row has coefficients (a, b).
  double gamma(std::size_t t, std::size_t user, double a, double b) const;

  /// Bank averages of log2(1 + gamma) for every user, written to `out`.
  void mean_log2_sinr(double a, double b, std::vector<double>& out) const;

  /// Bank average of log2(1 + gamma) for one user.
  double mean_log2_sinr(std::size_t user, double a, double b) const;

 private:
  struct Trial {
    CMatrix cross;  // H C Fz^H; column `swept` is zero
    Eigen::VectorXcd u;  // H C h_k^H
    Eigen::VectorXcd v;  // H C nq_k^H
    Eigen::VectorXcd m;  // nq_k C Fz^H (row as a column vector)
    double c_hh, c_nn, c2_hh, c2_nn, c3_hh, c3_nn;
    Complex c_hn, c2_hn, c3_hn;
    double tr1, tr2;
  };

  std::size_t swept_;
  std::size_t n_s_;
  double psi_;
  double n0_;
  std::vector<Trial> cache_;
};

}  // namespace fbgame
