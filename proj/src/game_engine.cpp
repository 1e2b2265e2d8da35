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
#include "fbgame/game_engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fbgame/errors.hpp"
#include "fbgame/precoding.hpp"
#include "fbgame/row_update.hpp"
#include "fbgame/scalar_search.hpp"

namespace fbgame {

namespace {

void check_user(std::size_t k, std::size_t n_s) {
  if (k >= n_s) {
    throw InvalidArgument("user index " + std::to_string(k) + " out of range for " +
                          std::to_string(n_s) + " users");
  }
}

std::shared_ptr<const CrnBank> make_bank(const GameConfig& cfg) {
  cfg.validate();
  return std::make_shared<const CrnBank>(cfg.n_s, cfg.n_t, cfg.mc_trials, cfg.master_seed);
}

struct RowGains {
  double a;
  double b;
};

RowGains row_gains(double rate) {
  const double d = distortion_from_rate(rate).value();
  return {std::sqrt(1.0 - d), std::sqrt(d)};
}

}  // namespace

UnilateralSweep::UnilateralSweep(const FeedbackGame& game, std::size_t k, const RateProfile& profile)
    : game_(&game), k_(k), profile_(profile), upper_(game.feasible_rate_bound(k, profile)) {
  const auto& cfg = game.config();
  RateProfile probe = profile_;
  probe[k_] = 0.0;
  game.check_feasible(probe);
  if (cfg.protocol == Protocol::Fdma && game.psi() >= kRowUpdateMinPsi) {
    std::vector<double> true_gain(cfg.n_s);
    std::vector<double> noise_gain(cfg.n_s);
    for (std::size_t j = 0; j < cfg.n_s; ++j) {
      const auto g = row_gains(j == k_ ? 0.0 : profile_[j]);
      true_gain[j] = g.a;
      noise_gain[j] = g.b;
    }
    row_ = std::make_unique<RowUpdateSinr>(game.bank(), true_gain, noise_gain, k_, game.psi(),
                                           cfg.n0);
  }
}

UnilateralSweep::~UnilateralSweep() = default;
UnilateralSweep::UnilateralSweep(UnilateralSweep&&) noexcept = default;

RateProfile UnilateralSweep::with_rate(double rate) const {
  RateProfile p = profile_;
  p[k_] = rate;
  return p;
}

double UnilateralSweep::utility(double rate) const {
  const RateProfile p = with_rate(rate);
  if (!row_) return game_->expected_utility(k_, p);
  game_->check_feasible(p);
  const auto g = row_gains(rate);
  return game_->downlink_bandwidth(p) * row_->mean_log2_sinr(k_, g.a, g.b);
}

double UnilateralSweep::priced_utility(double rate) const {
  return utility(rate) - game_->config().alpha_price * rate;
}

double UnilateralSweep::sum_utility(double rate) const {
  const RateProfile p = with_rate(rate);
  if (!row_) return game_->sum_utility(p);
  game_->check_feasible(p);
  const auto g = row_gains(rate);
  std::vector<double> per_user;
  row_->mean_log2_sinr(g.a, g.b, per_user);
  double total = 0.0;
  for (double v : per_user) total += v;
  return game_->downlink_bandwidth(p) * total;
}

FeedbackGame::FeedbackGame(GameConfig cfg) : FeedbackGame(cfg, make_bank(cfg)) {}

FeedbackGame::FeedbackGame(GameConfig cfg, std::shared_ptr<const CrnBank> bank)
    : cfg_(std::move(cfg)), bank_(std::move(bank)), psi_(0.0) {
  cfg_.validate();
  if (!bank_ || bank_->n_s() != cfg_.n_s || bank_->n_t() != cfg_.n_t) {
    throw InvalidArgument("FeedbackGame: channel bank does not match the configured dimensions");
  }
  psi_ = regularization_param(cfg_);
  if (cfg_.protocol == Protocol::Csma) {
    std::vector<double> sum;
    accumulate_log_sinr(RateProfile(cfg_.n_s, 0.0), sum, nullptr);
    for (double& v : sum) v /= static_cast<double>(bank_->size());
    silent_log_sinr_ = std::make_shared<const std::vector<double>>(std::move(sum));
  }
}

FeedbackGame::FeedbackGame(GameConfig cfg, std::shared_ptr<const CrnBank> bank,
                           std::shared_ptr<const std::vector<double>> silent_log_sinr)
    : cfg_(std::move(cfg)), bank_(std::move(bank)), psi_(regularization_param(cfg_)),
      silent_log_sinr_(std::move(silent_log_sinr)) {
  cfg_.validate();
}

FeedbackGame FeedbackGame::with_price(double alpha_price) const {
  GameConfig cfg = cfg_;
  cfg.alpha_price = alpha_price;
  FeedbackGame out(std::move(cfg), bank_, silent_log_sinr_);
  return out;
}

bool FeedbackGame::is_feasible(const RateProfile& profile) const {
  if (profile.size() != cfg_.n_s) return false;
  for (double r : profile.values()) {
    if (!(r >= 0.0 && r <= cfg_.r_max)) return false;
  }
  return cfg_.beta * profile.sum() < cfg_.b_total;
}

void FeedbackGame::check_feasible(const RateProfile& profile) const {
  if (profile.size() != cfg_.n_s) {
    throw InvalidArgument("rate profile has " + std::to_string(profile.size()) +
                          " entries, expected " + std::to_string(cfg_.n_s));
  }
  for (double r : profile.values()) {
    if (!(r >= 0.0 && r <= cfg_.r_max)) {
      throw InvalidArgument("rate " + std::to_string(r) + " outside [0, r_max]");
    }
  }
  if (!(cfg_.beta * profile.sum() < cfg_.b_total)) {
    throw InfeasibleProfile("rate profile leaves no downlink bandwidth");
  }
}

double FeedbackGame::downlink_bandwidth(const RateProfile& profile) const {
  return fdma_split(cfg_.b_total, cfg_.beta, profile).b_dl;
}

RateProfile FeedbackGame::effective_rates(const RateProfile& profile) const {
  if (cfg_.protocol == Protocol::Csma) return csma_effective_rates(profile, cfg_.csma);
  return profile;
}

void FeedbackGame::for_each_trial_sinr(
    const RateProfile& profile, const std::function<void(const std::vector<double>&)>& visit) const {
  check_feasible(profile);
  const RateProfile z = effective_rates(profile);
  std::vector<double> true_gain(cfg_.n_s);
  std::vector<double> noise_gain(cfg_.n_s);
  for (std::size_t k = 0; k < cfg_.n_s; ++k) {
    const double d = distortion_from_rate(z[k]).value();
    true_gain[k] = std::sqrt(1.0 - d);
    noise_gain[k] = std::sqrt(d);
  }
  CMatrix h_quant;
  SinrWorkspace ws;
  std::vector<double> gamma;
  // Bank order is the reduction order, which keeps results bit-stable.
  for (const auto& draw : *bank_) {
    quantize_channel_into(draw, true_gain, noise_gain, h_quant);
    sinr_into(draw.h, h_quant, psi_, cfg_.n0, ws, gamma);
    visit(gamma);
  }
}

void FeedbackGame::accumulate_log_sinr(const RateProfile& profile, std::vector<double>& sum,
                                       std::vector<double>* sum_sq) const {
  sum.assign(cfg_.n_s, 0.0);
  if (sum_sq) sum_sq->assign(cfg_.n_s, 0.0);
  for_each_trial_sinr(profile, [&](const std::vector<double>& gamma) {
    for (std::size_t k = 0; k < cfg_.n_s; ++k) {
      const double v = std::log2(1.0 + gamma[k]);
      sum[k] += v;
      if (sum_sq) (*sum_sq)[k] += v * v;
    }
  });
}

std::vector<double> FeedbackGame::expected_utilities(const RateProfile& profile) const {
  check_feasible(profile);
  const double b_dl = downlink_bandwidth(profile);
  if (silent_log_sinr_) {
    const double load = profile.sum();
    if (load == 0.0 || load > cfg_.csma.g0) {
      std::vector<double> out = *silent_log_sinr_;
      for (double& v : out) v *= b_dl;
      return out;
    }
  }
  std::vector<double> sum;
  accumulate_log_sinr(profile, sum, nullptr);
  const double trials = static_cast<double>(bank_->size());
  for (double& s : sum) s = b_dl * (s / trials);
  return sum;
}

double FeedbackGame::expected_utility(std::size_t k, const RateProfile& profile) const {
  check_user(k, cfg_.n_s);
  return expected_utilities(profile)[k];
}

UtilityEstimate FeedbackGame::utility_estimate(std::size_t k, const RateProfile& profile) const {
  check_user(k, cfg_.n_s);
  std::vector<double> sum;
  std::vector<double> sum_sq;
  accumulate_log_sinr(profile, sum, &sum_sq);
  const double b_dl = downlink_bandwidth(profile);
  const double m = static_cast<double>(bank_->size());
  const double mean = sum[k] / m;
  double var = 0.0;
  if (bank_->size() > 1) var = std::max(sum_sq[k] - m * mean * mean, 0.0) / (m - 1.0);
  return {b_dl * mean, b_dl * std::sqrt(var / m)};
}

double FeedbackGame::priced_utility(std::size_t k, const RateProfile& profile) const {
  return expected_utility(k, profile) - cfg_.alpha_price * profile[k];
}

std::vector<double> FeedbackGame::priced_utilities(const RateProfile& profile) const {
  auto u = expected_utilities(profile);
  for (std::size_t k = 0; k < u.size(); ++k) u[k] -= cfg_.alpha_price * profile[k];
  return u;
}

double FeedbackGame::sum_utility(const RateProfile& profile) const {
  double total = 0.0;
  for (double u : expected_utilities(profile)) total += u;
  return total;
}

std::vector<double> FeedbackGame::sinr_samples(std::size_t k, const RateProfile& profile) const {
  check_user(k, cfg_.n_s);
  std::vector<double> out;
  out.reserve(bank_->size());
  for_each_trial_sinr(profile, [&](const std::vector<double>& gamma) { out.push_back(gamma[k]); });
  return out;
}

std::vector<double> FeedbackGame::mean_sinr(const RateProfile& profile) const {
  std::vector<double> sum(cfg_.n_s, 0.0);
  for_each_trial_sinr(profile, [&](const std::vector<double>& gamma) {
    for (std::size_t k = 0; k < cfg_.n_s; ++k) sum[k] += gamma[k];
  });
  for (double& v : sum) v /= static_cast<double>(bank_->size());
  return sum;
}

double FeedbackGame::feasible_rate_bound(std::size_t k, const RateProfile& profile) const {
  check_user(k, cfg_.n_s);
  const double headroom = cfg_.b_total / cfg_.beta - profile.sum_except(k);
  // Stay strictly inside B - beta * sum(r) > 0.
  return std::clamp(headroom * (1.0 - 1e-9), 0.0, cfg_.r_max);
}

UnilateralSweep FeedbackGame::unilateral(std::size_t k, const RateProfile& profile) const {
  return UnilateralSweep(*this, k, profile);
}

double FeedbackGame::best_response(std::size_t k, const RateProfile& profile) const {
  const UnilateralSweep sweep = unilateral(k, profile);
  auto objective = [&](double r) { return sweep.priced_utility(r); };
  return maximize_on_interval(objective, 0.0, sweep.upper_bound(), cfg_.br_tolerance,
                              kBestResponseGrid)
      .x;
}

EquilibriumReport FeedbackGame::run_dynamics(const RateProfile& r0) const {
  check_feasible(r0);
  EquilibriumReport report;
  RateProfile rates = r0;
  while (report.rounds < cfg_.max_rounds) {
    double max_change = 0.0;
    for (std::size_t k = 0; k < cfg_.n_s; ++k) {
      const double next = best_response(k, rates);
      max_change = std::max(max_change, std::abs(next - rates[k]));
      rates[k] = next;
    }
    ++report.rounds;
    report.trace.push_back(rates);
    if (max_change < cfg_.br_tolerance) {
      report.converged = true;
      break;
    }
  }
  report.utilities = expected_utilities(rates);
  report.priced_utilities = report.utilities;
  for (std::size_t k = 0; k < cfg_.n_s; ++k) {
    report.priced_utilities[k] -= cfg_.alpha_price * rates[k];
  }
  report.rates = std::move(rates);
  return report;
}

EquilibriumReport FeedbackGame::run_dynamics() const {
  return run_dynamics(RateProfile(cfg_.n_s, cfg_.initial_rate));
}

bool FeedbackGame::verify_nash(EquilibriumReport& report, std::size_t check_grid) const {
  if (!report.converged) throw InvalidArgument("verify_nash: report has not converged");
  if (check_grid < 2) throw InvalidArgument("verify_nash: check grid needs at least 2 points");
  check_feasible(report.rates);
  bool ok = true;
  for (std::size_t k = 0; k < cfg_.n_s && ok; ++k) {
    const UnilateralSweep sweep = unilateral(k, report.rates);
    const double equilibrium = sweep.priced_utility(report.rates[k]);
    const double slack = 1e-6 * std::abs(equilibrium) + 1e-9;
    RateProfile deviated = report.rates;
    for (std::size_t i = 0; i < check_grid; ++i) {
      deviated[k] = cfg_.r_max * static_cast<double>(i) / static_cast<double>(check_grid - 1);
      if (!is_feasible(deviated)) continue;
      if (sweep.priced_utility(deviated[k]) > equilibrium + slack) {
        ok = false;
        break;
      }
    }
  }
  report.nash_verified = ok;
  return ok;
}

double expected_utility(std::size_t k, const RateProfile& profile, const GameConfig& cfg) {
  return FeedbackGame(cfg).expected_utility(k, profile);
}

double priced_utility(std::size_t k, const RateProfile& profile, const GameConfig& cfg) {
  return FeedbackGame(cfg).priced_utility(k, profile);
}

double best_response(std::size_t k, const RateProfile& profile, const GameConfig& cfg) {
  return FeedbackGame(cfg).best_response(k, profile);
}

EquilibriumReport run_dynamics(const GameConfig& cfg, const RateProfile& r0) {
  return FeedbackGame(cfg).run_dynamics(r0);
}

bool verify_nash(EquilibriumReport& report, const GameConfig& cfg, std::size_t check_grid) {
  return FeedbackGame(cfg).verify_nash(report, check_grid);
}

}  // namespace fbgame
