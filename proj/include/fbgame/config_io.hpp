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

#include <filesystem>

#include <json.hpp>

#include "fbgame/game_config.hpp"

namespace fbgame {

/// JSON form of a GameConfig. Keys are the field names; the CSMA parameters
/// sit in a nested "csma" object and an unset psi is written as null.
nlohmann::json config_to_json(const GameConfig& cfg);

/// Overlays the keys present in `j` onto `base`. Unknown keys are rejected.
/// Changing the CSMA p or a_ratio without giving g0 (or giving g0 as null)
/// recalibrates g0.
GameConfig config_from_json(const nlohmann::json& j, GameConfig base = {});

GameConfig load_config(const std::filesystem::path& path, GameConfig base = {});

}  // namespace fbgame
