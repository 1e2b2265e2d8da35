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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fbgame/game_config.hpp"

namespace fbgame {

struct ExperimentInfo {
  std::string name;
  std::string description;
  std::string columns;  ///< CSV header written by the experiment
};

/// Registered experiments in their fixed order.
const std::vector<ExperimentInfo>& list_experiments();

bool is_registered_experiment(std::string_view name);

/// Everything one experiment run needs. Fields that an experiment does not
/// use are ignored.
struct ExperimentSpec {
  std::string name;
  GameConfig cfg;
  /// Utility curves: rate held by every user except user 1.
  std::vector<double> fixed_other_rates{1.0, 3.0, 10.0};
  /// Utility curves: points on the probed user's rate grid over [0, r_max].
  std::size_t probe_points = 200;
  /// Price sweeps.
  double delta_alpha = 0.005;
  double alpha_max = 0.2;
  /// CSMA throughput curve: offered loads i * load_max / load_points, i = 1..load_points.
  std::size_t load_points = 200;
  double load_max = 20.0;
  std::filesystem::path output;

  void validate() const;
};

/// Spec with the experiment's scenario defaults. Full-scale runs use
/// N_t = N_s = 10 and 500 trials; utility curves use two users; `quick`
/// drops to N_t = N_s = 4 and 100 trials.
ExperimentSpec default_experiment_spec(std::string_view name, bool quick = false);

struct ExperimentOutcome {
  std::filesystem::path output;
  std::vector<std::string> warnings;
  /// Human-readable key results (alpha_best, g0, ...).
  std::vector<std::string> summary;
};

/// Runs the experiment and writes its CSV atomically (temporary file, then
/// rename). Identical specs give byte-identical files.
ExperimentOutcome run_experiment(const ExperimentSpec& spec);

struct PsiScanPoint {
  double psi = 0.0;
  double mean_sinr = 0.0;  ///< averaged over users and trials
};

/// Mean SINR with every user at `common_rate`, for each regularization in
/// `psi_values`, all on the same channel bank. Diagnoses the choice of psi.
std::vector<PsiScanPoint> psi_scan(const GameConfig& cfg, double common_rate,
                                   const std::vector<double>& psi_values);

/// Formats with 12 significant digits.
std::string format_number(double value);

/// Writes `content` to a temporary sibling of `path` and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace fbgame
