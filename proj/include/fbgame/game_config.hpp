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
#include <optional>
#include <string>
#include <string_view>

#include "fbgame/access_models.hpp"

namespace fbgame {

enum class Protocol { Fdma, Csma };

std::string_view to_string(Protocol protocol);
Protocol protocol_from_string(std::string_view name);

/// Every constant of one feedback-rate game scenario.
struct GameConfig {
  std::size_t n_t = 10;
  std::size_t n_s = 10;
  double b_total = 20.0;
  double beta = 0.01;
  double n0 = 1.0;
  double alpha_price = 0.0;
  Protocol protocol = Protocol::Fdma;
  CsmaModel csma = make_csma_model(1.0, 0.1);
  double r_max = 16.0;
  std::size_t mc_trials = 500;
  std::uint64_t master_seed = 1;
  double br_tolerance = 1e-3;
  std::size_t max_rounds = 200;
  /// Regularization override; unset means N_s * N0, zero means zero forcing.
  std::optional<double> psi;
  /// Every user's rate at the start of best-response dynamics.
  double initial_rate = 1.0;

  /// Throws InvalidArgument on the first violated constraint.
  void validate() const;
};

}  // namespace fbgame
