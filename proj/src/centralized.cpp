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
#include "fbgame/centralized.hpp"

#include <algorithm>

#include "fbgame/scalar_search.hpp"

namespace fbgame {

namespace {

constexpr double kRoundGainTolerance = 1e-6;

}  // namespace

CentralizedResult centralized_optimum(const FeedbackGame& priced_game) {
  const FeedbackGame game = priced_game.with_price(0.0);
  const auto& cfg = game.config();
  const double users = static_cast<double>(cfg.n_s);

  CentralizedResult result;
  const double common_upper =
      std::clamp(cfg.b_total / (cfg.beta * users) * (1.0 - 1e-9), 0.0, cfg.r_max);
  const auto symmetric = maximize_on_interval(
      [&](double r) { return game.sum_utility(RateProfile(cfg.n_s, r)); }, 0.0, common_upper,
      cfg.br_tolerance, kBestResponseGrid);
  RateProfile rates(cfg.n_s, symmetric.x);
  double current = symmetric.value;
  result.method_trace.push_back({"symmetric", 0, current});
  const RateProfile symmetric_rates = rates;
  const double symmetric_value = current;

  for (std::size_t round = 1; round <= cfg.max_rounds; ++round) {
    const double round_start = current;
    for (std::size_t i = 0; i < cfg.n_s; ++i) {
      const UnilateralSweep sweep = game.unilateral(i, rates);
      const auto best =
          maximize_on_interval([&](double r) { return sweep.sum_utility(r); }, 0.0,
                               sweep.upper_bound(), cfg.br_tolerance, kBestResponseGrid);
      if (best.value > current) {
        rates[i] = best.x;
        current = best.value;
      }
    }
    result.method_trace.push_back({"coordinate", round, current});
    if (current - round_start < kRoundGainTolerance) break;
  }

  if (current >= symmetric_value) {
    result.rates = std::move(rates);
    result.sum_utility = current;
  } else {
    result.rates = symmetric_rates;
    result.sum_utility = symmetric_value;
  }
  return result;
}

CentralizedResult centralized_optimum(const GameConfig& cfg) {
  return centralized_optimum(FeedbackGame(cfg));
}

}  // namespace fbgame
