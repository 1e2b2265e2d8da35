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

#include "fbgame/types.hpp"

namespace fbgame {

/// Slotted p-persistent CSMA feedback channel.
///
/// `a_ratio` is the propagation delay over the packet transmission time.
/// `g0` is the largest offered load the channel accepts; beyond it every
/// user's effective feedback rate collapses to zero. Series in the throughput
/// expression stop once a term drops below `truncation_eps` relative to the
/// partial sum.
struct CsmaModel {
  double p = 1.0;
  double a_ratio = 0.1;
  double g0 = 1.0;
  double truncation_eps = 1e-12;

  /// Throws InvalidArgument unless 0 < p <= 1, a_ratio > 0, g0 > 0.
  void validate() const;
};

/// Downlink/uplink partition of the system bandwidth.
struct BandwidthSplit {
  double b_total = 0.0;
  double b_ul = 0.0;
  double b_dl = 0.0;
};

/// Hard cap on terms summed per series in `csma_throughput`.
inline constexpr std::size_t kCsmaMaxTerms = 100000;

/// Upper end of the offered-load interval searched by `calibrate_g0`.
inline constexpr double kCsmaLoadSearchMax = 50.0;

/// Orthogonal feedback channels: b_ul = beta * sum(r), b_dl = b_total - b_ul.
/// Throws InfeasibleProfile when the uplink would take the whole band.
BandwidthSplit fdma_split(double b_total, double beta, const RateProfile& rates);

/// Network throughput S(G) of slotted p-persistent CSMA at offered load G.
/// At p = 1 the series are geometric and are summed in closed form.
double csma_throughput(double g, const CsmaModel& model);

/// Offered load that maximizes S(G) over (0, 50]: coarse grid bracketing
/// followed by golden-section refinement.
double calibrate_g0(double p, double a_ratio, double truncation_eps = 1e-12);

/// Model with `g0` set by `calibrate_g0`.
CsmaModel make_csma_model(double p, double a_ratio, double truncation_eps = 1e-12);

/// Rates delivered through the contended channel: z_k = r_k S(G) / G when
/// G = sum(r) <= g0, all zero otherwise.
RateProfile csma_effective_rates(const RateProfile& rates, const CsmaModel& model);

}  // namespace fbgame
