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
#include "fbgame/price_controller.hpp"

#include <cmath>
#include <string>

#include "fbgame/errors.hpp"

namespace fbgame {

std::string_view to_string(StopReason reason) {
  return reason == StopReason::UserWorsened ? "user-worsened" : "range-exhausted";
}

const PriceSweepRecord& PriceSweepResult::best() const {
  for (const auto& rec : records) {
    if (rec.alpha_price == alpha_best) return rec;
  }
  throw InvalidArgument("price sweep result has no record at alpha_best");
}

PriceSweepResult sweep_price(const FeedbackGame& game, double delta_alpha, double alpha_max,
                             SweepMode mode) {
  if (!(delta_alpha > 0.0)) throw InvalidArgument("sweep_price: delta_alpha must be positive");
  if (!(alpha_max >= 0.0)) throw InvalidArgument("sweep_price: alpha_max must be non-negative");

  const auto& cfg = game.config();
  // Prices are i * delta_alpha rather than a running sum so the grid does not drift.
  const auto steps = static_cast<std::size_t>(std::floor(alpha_max / delta_alpha + 1e-9));

  PriceSweepResult result;
  bool stopped = false;
  RateProfile warm(cfg.n_s, cfg.initial_rate);
  for (std::size_t i = 0; i <= steps; ++i) {
    const double alpha = delta_alpha * static_cast<double>(i);
    const FeedbackGame priced = game.with_price(alpha);

    PriceSweepRecord rec;
    rec.alpha_price = alpha;
    rec.equilibrium = priced.run_dynamics(warm);
    for (std::size_t k = 0; k < cfg.n_s; ++k) {
      rec.sum_rate += rec.equilibrium.utilities[k];
      rec.sum_priced += rec.equilibrium.priced_utilities[k];
    }
    rec.uplink_bw = cfg.beta * rec.equilibrium.rates.sum();
    if (!rec.equilibrium.converged) {
      result.warnings.push_back("equilibrium at alpha=" + std::to_string(alpha) +
                                " did not converge within " + std::to_string(cfg.max_rounds) +
                                " rounds");
    }
    warm = rec.equilibrium.rates;

    if (!stopped && !result.records.empty()) {
      const auto& prev = result.records.back().equilibrium.utilities;
      for (std::size_t k = 0; k < cfg.n_s; ++k) {
        if (rec.equilibrium.utilities[k] < prev[k]) {
          stopped = true;
          break;
        }
      }
      if (stopped) {
        result.alpha_best = result.records.back().alpha_price;
        result.stop_reason = StopReason::UserWorsened;
      }
    }
    result.records.push_back(std::move(rec));
    if (stopped && mode == SweepMode::StopRule) break;
  }
  if (!stopped) {
    result.alpha_best = result.records.back().alpha_price;
    result.stop_reason = StopReason::RangeExhausted;
  }
  return result;
}

PriceSweepResult sweep_price(const GameConfig& cfg, double delta_alpha, double alpha_max,
                             SweepMode mode) {
  return sweep_price(FeedbackGame(cfg), delta_alpha, alpha_max, mode);
}

std::vector<OccupancyPoint> uplink_occupancy_curve(const PriceSweepResult& result) {
  if (result.records.empty()) throw InvalidArgument("uplink_occupancy_curve: empty sweep");
  std::vector<OccupancyPoint> out;
  out.reserve(result.records.size());
  for (const auto& rec : result.records) {
    out.push_back({rec.alpha_price, rec.uplink_bw, rec.equilibrium.rates});
  }
  return out;
}

}  // namespace fbgame
