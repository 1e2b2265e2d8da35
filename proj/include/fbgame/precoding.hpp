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

#include <vector>

#include "fbgame/types.hpp"

namespace fbgame {

struct GameConfig;

/// Regularized channel-inversion precoder W = K * H^H (H H^H + psi I)^-1.
/// Column k of `w` serves user k; `k_norm` scales the total transmit power
/// (squared Frobenius norm of `w`) to one.
struct PrecoderSet {
  CMatrix w;
  double k_norm = 0.0;
  double psi = 0.0;
};

/// Per-user link quality against the true channel; powers are averaged over
/// independent unit-power data symbols.
struct LinkMetrics {
  std::vector<double> gamma;
  std::vector<double> signal_power;
  std::vector<double> interference_power;
  double n0 = 0.0;
};

/// Condition number of H H^H above which the zero-forcing inverse is refused.
inline constexpr double kZfConditionLimit = 1e12;

/// psi = N_s * N0 (unit total transmit power), unless the config overrides
/// it. An override of 0 selects plain zero forcing.
double regularization_param(const GameConfig& cfg);

/// Throws SingularMatrix when psi == 0 and H H^H is numerically singular.
PrecoderSet build_precoder(const CMatrix& h_quant, double psi);

LinkMetrics link_metrics(const CMatrix& h_true, const PrecoderSet& precoder, double n0);

/// Shannon throughput b_dl * log2(1 + gamma).
double throughput(double gamma, double b_dl);

/// Scratch space for `sinr_into`, reused across Monte Carlo trials.
struct SinrWorkspace {
  CMatrix gram;
  CMatrix solved;
  CMatrix cross;
  Eigen::LLT<CMatrix> llt;
};

/// Computes every user's SINR for precoding on `h_quant` and receiving on
/// `h_true`. Same arithmetic as build_precoder followed by link_metrics,
/// without intermediate allocations.
void sinr_into(const CMatrix& h_true, const CMatrix& h_quant, double psi, double n0,
               SinrWorkspace& ws, std::vector<double>& gamma);

}  // namespace fbgame
