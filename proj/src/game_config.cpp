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
#include "fbgame/game_config.hpp"

#include "fbgame/errors.hpp"

namespace fbgame {

std::string_view to_string(Protocol protocol) {
  return protocol == Protocol::Fdma ? "FDMA" : "CSMA";
}

Protocol protocol_from_string(std::string_view name) {
  if (name == "FDMA" || name == "fdma") return Protocol::Fdma;
  if (name == "CSMA" || name == "csma") return Protocol::Csma;
  throw InvalidArgument("unknown protocol '" + std::string(name) + "' (expected FDMA or CSMA)");
}

void GameConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw InvalidArgument(std::string("invalid game config: ") + what);
  };
  require(n_s >= 1, "n_s must be at least 1");
  require(n_t >= n_s, "n_t must be at least n_s");
  require(b_total > 0.0, "b_total must be positive");
  require(beta > 0.0, "beta must be positive");
  require(n0 > 0.0, "n0 must be positive");
  require(alpha_price >= 0.0, "alpha_price must be non-negative");
  require(r_max > 0.0, "r_max must be positive");
  require(mc_trials >= 1, "mc_trials must be at least 1");
  require(br_tolerance > 0.0, "br_tolerance must be positive");
  require(max_rounds >= 1, "max_rounds must be at least 1");
  require(!psi || *psi >= 0.0, "psi must be non-negative");
  require(initial_rate >= 0.0 && initial_rate <= r_max, "initial_rate must lie in [0, r_max]");
  if (protocol == Protocol::Csma) csma.validate();
}

}  // namespace fbgame
