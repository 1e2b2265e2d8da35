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
// fbgame: batch runner for the feedback-rate control experiments.
//
//   fbgame list
//   fbgame run <experiment> [--config FILE] [--seed N] [--out PATH] [--quick] ...
//   fbgame psi-scan [--config FILE] [--rate R] [--out PATH]
//   fbgame config <experiment> [--config FILE] [--quick]
//
// Exit status: 0 success, 2 finished with convergence warnings, 1 error.

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fbgame/config_io.hpp"
#include "fbgame/errors.hpp"
#include "fbgame/experiments.hpp"
#include "fbgame/precoding.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitWarnings = 2;
constexpr const char* kOutputDirEnv = "FBGAME_OUTPUT_DIR";

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> mc_trials;
  std::optional<double> psi;
  std::string out;
  bool quick = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "JSON game config overlaid on the defaults")
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", opts.seed, "master seed of the channel bank");
  cmd->add_option("--mc-trials", opts.mc_trials, "Monte Carlo trials in the channel bank");
  cmd->add_option("--psi", opts.psi, "precoder regularization (0 = zero forcing)");
  cmd->add_option("--out", opts.out, "output CSV path");
  cmd->add_flag("--quick", opts.quick, "small CI profile: 4 users, 100 trials");
}

void apply_common(const CommonOptions& opts, fbgame::GameConfig& cfg) {
  if (!opts.config_path.empty()) cfg = fbgame::load_config(opts.config_path, cfg);
  if (opts.seed) cfg.master_seed = *opts.seed;
  if (opts.mc_trials) cfg.mc_trials = *opts.mc_trials;
  if (opts.psi) cfg.psi = *opts.psi;
  cfg.validate();
}

std::filesystem::path output_path(const CommonOptions& opts, const std::string& stem) {
  if (!opts.out.empty()) return opts.out;
  if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) {
    return std::filesystem::path(dir) / (stem + ".csv");
  }
  return stem + ".csv";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Feedback-rate control games over limited CSI feedback"};
  app.require_subcommand(1);

  auto* list_cmd = app.add_subcommand("list", "list the registered experiments");

  CommonOptions run_opts;
  std::string run_name;
  std::optional<double> delta_alpha;
  std::optional<double> alpha_max;
  auto* run_cmd = app.add_subcommand("run", "run one experiment and write its CSV");
  run_cmd->add_option("experiment", run_name, "experiment name (see `list`)")->required();
  add_common(run_cmd, run_opts);
  run_cmd->add_option("--delta-alpha", delta_alpha, "price step of the sweeps");
  run_cmd->add_option("--alpha-max", alpha_max, "largest swept price");

  CommonOptions scan_opts;
  double scan_rate = 16.0;
  int scan_points = 25;
  auto* scan_cmd = app.add_subcommand("psi-scan", "mean SINR over a grid of regularizations");
  add_common(scan_cmd, scan_opts);
  scan_cmd->add_option("--rate", scan_rate, "common feedback rate of every user")
      ->check(CLI::NonNegativeNumber);
  scan_cmd->add_option("--points", scan_points, "grid points, log-spaced over [psi/100, psi*100]")
      ->check(CLI::Range(2, 10000));

  CommonOptions show_opts;
  std::string show_name;
  auto* show_cmd = app.add_subcommand("config", "print the resolved config of an experiment");
  show_cmd->add_option("experiment", show_name, "experiment name")->required();
  add_common(show_cmd, show_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (list_cmd->parsed()) {
      for (const auto& info : fbgame::list_experiments()) {
        std::cout << info.name << '\t' << info.description << '\n';
      }
      return kExitOk;
    }

    if (show_cmd->parsed()) {
      auto spec = fbgame::default_experiment_spec(show_name, show_opts.quick);
      apply_common(show_opts, spec.cfg);
      std::cout << fbgame::config_to_json(spec.cfg).dump(2) << '\n';
      return kExitOk;
    }

    if (scan_cmd->parsed()) {
      fbgame::GameConfig cfg;
      if (scan_opts.quick) {
        cfg.n_s = cfg.n_t = 4;
        cfg.mc_trials = 100;
      }
      apply_common(scan_opts, cfg);
      const double center = static_cast<double>(cfg.n_s) * cfg.n0;
      std::vector<double> grid;
      for (int i = 0; i < scan_points; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(scan_points - 1);
        grid.push_back(center * std::pow(10.0, -2.0 + 4.0 * t));
      }
      std::string csv = "psi,mean_sinr\n";
      for (const auto& point : fbgame::psi_scan(cfg, scan_rate, grid)) {
        csv += fbgame::format_number(point.psi) + "," + fbgame::format_number(point.mean_sinr) +
               "\n";
      }
      const auto path = output_path(scan_opts, "psi-scan");
      fbgame::write_file_atomic(path, csv);
      std::cout << "wrote " << path.string() << '\n';
      return kExitOk;
    }

    auto spec = fbgame::default_experiment_spec(run_name, run_opts.quick);
    apply_common(run_opts, spec.cfg);
    if (delta_alpha) spec.delta_alpha = *delta_alpha;
    if (alpha_max) spec.alpha_max = *alpha_max;
    spec.output = output_path(run_opts, spec.name);
    const auto outcome = fbgame::run_experiment(spec);
    for (const auto& line : outcome.summary) std::cout << line << '\n';
    for (const auto& w : outcome.warnings) std::cerr << "warning: " << w << '\n';
    std::cout << "wrote " << outcome.output.string() << '\n';
    return outcome.warnings.empty() ? kExitOk : kExitWarnings;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}
