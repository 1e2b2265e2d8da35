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
#include "fbgame/config_io.hpp"

#include <fstream>
#include <set>
#include <string>
#include <type_traits>

#include "fbgame/errors.hpp"

namespace fbgame {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& known, const char* where) {
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) {
      throw InvalidArgument(std::string("unknown key '") + key + "' in " + where);
    }
  }
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  if constexpr (std::is_unsigned_v<T>) {
    if (!j.at(key).is_number_unsigned()) {
      throw InvalidArgument(std::string("config key '") + key + "' must be a non-negative integer");
    }
  }
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace

json config_to_json(const GameConfig& cfg) {
  json j;
  j["n_t"] = cfg.n_t;
  j["n_s"] = cfg.n_s;
  j["b_total"] = cfg.b_total;
  j["beta"] = cfg.beta;
  j["n0"] = cfg.n0;
  j["alpha_price"] = cfg.alpha_price;
  j["protocol"] = std::string(to_string(cfg.protocol));
  j["csma"] = {{"p", cfg.csma.p},
               {"a_ratio", cfg.csma.a_ratio},
               {"g0", cfg.csma.g0},
               {"truncation_eps", cfg.csma.truncation_eps}};
  j["r_max"] = cfg.r_max;
  j["mc_trials"] = cfg.mc_trials;
  j["master_seed"] = cfg.master_seed;
  j["br_tolerance"] = cfg.br_tolerance;
  j["max_rounds"] = cfg.max_rounds;
  j["psi"] = cfg.psi ? json(*cfg.psi) : json(nullptr);
  j["initial_rate"] = cfg.initial_rate;
  return j;
}

GameConfig config_from_json(const json& j, GameConfig base) {
  if (!j.is_object()) throw InvalidArgument("game config must be a JSON object");
  reject_unknown(j,
                 {"n_t", "n_s", "b_total", "beta", "n0", "alpha_price", "protocol", "csma", "r_max",
                  "mc_trials", "master_seed", "br_tolerance", "max_rounds", "psi", "initial_rate"},
                 "game config");
  GameConfig cfg = std::move(base);
  read(j, "n_t", cfg.n_t);
  read(j, "n_s", cfg.n_s);
  read(j, "b_total", cfg.b_total);
  read(j, "beta", cfg.beta);
  read(j, "n0", cfg.n0);
  read(j, "alpha_price", cfg.alpha_price);
  if (j.contains("protocol")) {
    std::string name;
    read(j, "protocol", name);
    cfg.protocol = protocol_from_string(name);
  }
  read(j, "r_max", cfg.r_max);
  read(j, "mc_trials", cfg.mc_trials);
  read(j, "master_seed", cfg.master_seed);
  read(j, "br_tolerance", cfg.br_tolerance);
  read(j, "max_rounds", cfg.max_rounds);
  read(j, "initial_rate", cfg.initial_rate);
  if (j.contains("psi")) {
    if (j.at("psi").is_null()) {
      cfg.psi.reset();
    } else {
      double psi = 0.0;
      read(j, "psi", psi);
      cfg.psi = psi;
    }
  }
  if (j.contains("csma")) {
    const json& c = j.at("csma");
    if (!c.is_object()) throw InvalidArgument("config key 'csma' must be an object");
    reject_unknown(c, {"p", "a_ratio", "g0", "truncation_eps"}, "csma config");
    read(c, "p", cfg.csma.p);
    read(c, "a_ratio", cfg.csma.a_ratio);
    read(c, "truncation_eps", cfg.csma.truncation_eps);
    const bool shape_changed = c.contains("p") || c.contains("a_ratio");
    if (c.contains("g0") && !c.at("g0").is_null()) {
      read(c, "g0", cfg.csma.g0);
    } else if (shape_changed || c.contains("g0")) {
      cfg.csma.g0 = calibrate_g0(cfg.csma.p, cfg.csma.a_ratio, cfg.csma.truncation_eps);
    }
  }
  cfg.validate();
  return cfg;
}

GameConfig load_config(const std::filesystem::path& path, GameConfig base) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidArgument("config file " + path.string() + " is not valid JSON: " + e.what());
  }
  return config_from_json(j, std::move(base));
}

}  // namespace fbgame
