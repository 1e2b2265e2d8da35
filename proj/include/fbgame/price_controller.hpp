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

#include <optional>
#include <string>
#include <vector>

#include "fbgame/game_engine.hpp"

namespace fbgame {

struct PriceSweepRecord {
  double alpha_price = 0.0;
  EquilibriumReport equilibrium;
  double sum_rate = 0.0;    ///< sum of unpriced utilities
  double sum_priced = 0.0;  ///< sum of priced utilities
  double uplink_bw = 0.0;   ///< beta * sum of equilibrium rates
};

enum class StopReason { UserWorsened, RangeExhausted };

std::string_view to_string(StopReason reason);

enum class SweepMode {
  /// Stop at the first price where some user's equilibrium utility drops.
  StopRule,
  /// Record every price up to alpha_max; alpha_best is still located by the stop rule.
  Curve,
};

struct PriceSweepResult {
  std::vector<PriceSweepRecord> records;
  double alpha_best = 0.0;
  StopReason stop_reason = StopReason::RangeExhausted;
  std::vector<std::string> warnings;

  /// Record whose price equals alpha_best.
  const PriceSweepRecord& best() const;
};

/// Raises the price from 0 in steps of delta_alpha up to alpha_max, re-running
/// best-response dynamics at each price, warm-started from the previous
/// equilibrium. alpha_best is the last price before any user's equilibrium
/// utility falls below its value at the preceding price.
PriceSweepResult sweep_price(const FeedbackGame& game, double delta_alpha, double alpha_max,
                             SweepMode mode = SweepMode::StopRule);

PriceSweepResult sweep_price(const GameConfig& cfg, double delta_alpha, double alpha_max,
                             SweepMode mode = SweepMode::StopRule);

struct OccupancyPoint {
  double alpha_price;
  double uplink_bw;
  RateProfile rates;
};

std::vector<OccupancyPoint> uplink_occupancy_curve(const PriceSweepResult& result);

}  // namespace fbgame
