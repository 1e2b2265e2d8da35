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
#include <functional>
#include <memory>
#include <vector>

#include "fbgame/channel_model.hpp"
#include "fbgame/game_config.hpp"
#include "fbgame/types.hpp"

namespace fbgame {

/// Monte Carlo mean over the CRN bank and its standard error.
struct UtilityEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Outcome of best-response dynamics. `trace` holds the profile after each
/// completed round; `nash_verified` is only set by FeedbackGame::verify_nash.
struct EquilibriumReport {
  RateProfile rates;
  std::vector<double> utilities;
  std::vector<double> priced_utilities;
  std::size_t rounds = 0;
  bool converged = false;
  bool nash_verified = false;
  std::vector<RateProfile> trace;
};

/// Number of grid points used to bracket a best response before the
/// golden-section refinement.
inline constexpr std::size_t kBestResponseGrid = 65;

/// Smallest regularization for which unilateral sweeps use the rank-one
/// update path; below it (and for zero forcing) every point is a full solve.
inline constexpr double kRowUpdateMinPsi = 1e-4;

class FeedbackGame;

/// The game seen by user k while every other rate stays where `profile` puts
/// them. Under FDMA with psi >= kRowUpdateMinPsi the per-trial precoders are
/// factored once and each rate costs O(N_s^2) per trial; otherwise each
/// evaluation falls back to the full pipeline.
class UnilateralSweep {
 public:
  UnilateralSweep(const FeedbackGame& game, std::size_t k, const RateProfile& profile);
  ~UnilateralSweep();
  UnilateralSweep(UnilateralSweep&&) noexcept;

  std::size_t user() const { return k_; }
  /// Largest rate user k may take (see FeedbackGame::feasible_rate_bound).
  double upper_bound() const { return upper_; }
  bool uses_row_update() const { return row_ != nullptr; }

  double utility(double rate) const;
  double priced_utility(double rate) const;
  /// Unpriced utility summed over all users.
  double sum_utility(double rate) const;

 private:
  RateProfile with_rate(double rate) const;

  const FeedbackGame* game_;
  std::size_t k_;
  RateProfile profile_;
  double upper_;
  std::unique_ptr<class RowUpdateSinr> row_;
};

/// The feedback-rate game: one scenario plus the fixed bank of channel draws
/// over which expected utilities are taken. Utilities are deterministic,
/// continuous functions of the rate profile because every evaluation reuses
/// the same draws. Copies share the bank.
class FeedbackGame {
 public:
  explicit FeedbackGame(GameConfig cfg);
  FeedbackGame(GameConfig cfg, std::shared_ptr<const CrnBank> bank);

  /// Same scenario and bank with a different price factor.
  FeedbackGame with_price(double alpha_price) const;

  const GameConfig& config() const { return cfg_; }
  const CrnBank& bank() const { return *bank_; }
  std::shared_ptr<const CrnBank> shared_bank() const { return bank_; }
  double psi() const { return psi_; }

  bool is_feasible(const RateProfile& profile) const;
  /// Throws InvalidArgument on a malformed profile, InfeasibleProfile when the
  /// uplink would consume the whole band.
  void check_feasible(const RateProfile& profile) const;
  /// B - beta * sum(r), computed from the requested rates under both protocols.
  double downlink_bandwidth(const RateProfile& profile) const;
  /// Rates that reach the base station: the profile itself under FDMA,
  /// the contention-reduced rates under CSMA.
  RateProfile effective_rates(const RateProfile& profile) const;

  std::vector<double> expected_utilities(const RateProfile& profile) const;
  double expected_utility(std::size_t k, const RateProfile& profile) const;
  UtilityEstimate utility_estimate(std::size_t k, const RateProfile& profile) const;
  double priced_utility(std::size_t k, const RateProfile& profile) const;
  std::vector<double> priced_utilities(const RateProfile& profile) const;
  double sum_utility(const RateProfile& profile) const;

  /// SINR of user k in every trial of the bank, in bank order.
  std::vector<double> sinr_samples(std::size_t k, const RateProfile& profile) const;
  /// Per-user SINR averaged over the bank.
  std::vector<double> mean_sinr(const RateProfile& profile) const;

  /// Largest rate user k may request given the others: min(r_max, bound
  /// that keeps the downlink bandwidth positive).
  double feasible_rate_bound(std::size_t k, const RateProfile& profile) const;

  UnilateralSweep unilateral(std::size_t k, const RateProfile& profile) const;

  /// Maximizer of user k's priced utility over [0, feasible_rate_bound],
  /// the other users' rates taken from `profile`.
  double best_response(std::size_t k, const RateProfile& profile) const;

  /// Round-robin best responses (user 0 first) until a full round moves no
  /// rate by br_tolerance or more, or max_rounds rounds have run.
  EquilibriumReport run_dynamics(const RateProfile& r0) const;
  /// Starts from every user at cfg.initial_rate.
  EquilibriumReport run_dynamics() const;

  /// Checks that no user gains more than 1e-6 |u| + 1e-9 by deviating to any
  /// point of a `check_grid`-point grid over [0, r_max]. Stores the outcome
  /// in report.nash_verified. Requires report.converged.
  bool verify_nash(EquilibriumReport& report, std::size_t check_grid = 129) const;

 private:
  FeedbackGame(GameConfig cfg, std::shared_ptr<const CrnBank> bank,
               std::shared_ptr<const std::vector<double>> silent_log_sinr);

  void for_each_trial_sinr(const RateProfile& profile,
                           const std::function<void(const std::vector<double>&)>& visit) const;
  // Per-user sums of log2(1 + gamma) and of its square over the bank.
  void accumulate_log_sinr(const RateProfile& profile, std::vector<double>& sum,
                           std::vector<double>* sum_sq) const;

  GameConfig cfg_;
  std::shared_ptr<const CrnBank> bank_;
  double psi_;
  // CSMA only: bank means of log2(1 + gamma) when no feedback gets through,
  // which is every profile whose offered load exceeds g0.
  std::shared_ptr<const std::vector<double>> silent_log_sinr_;
};

double expected_utility(std::size_t k, const RateProfile& profile, const GameConfig& cfg);
double priced_utility(std::size_t k, const RateProfile& profile, const GameConfig& cfg);
double best_response(std::size_t k, const RateProfile& profile, const GameConfig& cfg);
EquilibriumReport run_dynamics(const GameConfig& cfg, const RateProfile& r0);
bool verify_nash(EquilibriumReport& report, const GameConfig& cfg, std::size_t check_grid);

}  // namespace fbgame
