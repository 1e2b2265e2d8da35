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
#include <string>
#include <vector>

#include "fbgame/game_engine.hpp"

namespace fbgame {

struct CentralizedStep {
  std::string stage;  ///< "symmetric" or "coordinate"
  std::size_t iteration = 0;
  double sum_utility = 0.0;
};

struct CentralizedResult {
  RateProfile rates;
  double sum_utility = 0.0;
  std::vector<CentralizedStep> method_trace;
};

/// Maximizes the unpriced sum utility over 0 <= r_i <= r_max with positive
/// downlink bandwidth. A golden-section line search over a rate common to all
/// users is followed by coordinate ascent from that point, in full rounds
/// until a round gains less than 1e-6. The price of the game is ignored.
CentralizedResult centralized_optimum(const FeedbackGame& game);
CentralizedResult centralized_optimum(const GameConfig& cfg);

}  // namespace fbgame
