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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "fbgame/errors.hpp"
#include "fbgame/game_engine.hpp"
#include "fbgame/precoding.hpp"
#include "fbgame/row_update.hpp"
#include "oracles.hpp"

using namespace fbgame;

namespace {

GameConfig small_config(std::size_t n = 2, std::size_t trials = 200) {
  GameConfig cfg;
  cfg.n_s = n;
  cfg.n_t = n;
  cfg.mc_trials = trials;
  cfg.master_seed = 42;
  return cfg;
}

}  // namespace

TEST_CASE("expected utility matches a straight-line pipeline") {
  GameConfig cfg = small_config(2, 300);
  const FeedbackGame game(cfg);
  const RateProfile r(std::vector<double>{3.0, 3.0});
  const auto ref = testing::pipeline_oracle(game.bank(), {3.0, 3.0}, 2.0, 1.0, 20.0 - 0.06);
  const auto u = game.expected_utilities(r);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(std::abs(u[k] - ref[k]) <= 1e-12 * std::abs(ref[k]));
    CHECK(game.expected_utility(k, r) == u[k]);
  }
  cfg.n_t = 4;
  cfg.n_s = 3;
  const FeedbackGame wide(cfg);
  const RateProfile r3(std::vector<double>{0.5, 2.0, 7.0});
  const auto ref3 = testing::pipeline_oracle(wide.bank(), r3.vector(), 3.0, 1.0, 20.0 - 0.095);
  const auto u3 = wide.expected_utilities(r3);
  for (std::size_t k = 0; k < 3; ++k) CHECK(u3[k] == doctest::Approx(ref3[k]).epsilon(1e-12));
}

TEST_CASE("zero feedback utility is the pure noise precoder at full bandwidth") {
  const FeedbackGame game(small_config(3));
  const auto u = game.expected_utilities(RateProfile(3, 0.0));
  const auto ref = testing::pipeline_oracle(game.bank(), {0.0, 0.0, 0.0}, 3.0, 1.0, 20.0);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(u[k] >= 0.0);
    CHECK(u[k] == doctest::Approx(ref[k]).epsilon(1e-12));
  }
}

TEST_CASE("csma overload falls back to zero feedback with reduced downlink") {
  GameConfig cfg = small_config(2);
  cfg.protocol = Protocol::Csma;
  const FeedbackGame game(cfg);
  const RateProfile r(std::vector<double>{2.0, 1.0});
  REQUIRE(r.sum() > cfg.csma.g0);
  const auto u = game.expected_utilities(r);
  const auto ref = testing::pipeline_oracle(game.bank(), {0.0, 0.0}, 2.0, 1.0, 20.0 - 0.03);
  for (std::size_t k = 0; k < 2; ++k) CHECK(u[k] == doctest::Approx(ref[k]).epsilon(1e-12));
  // below g0 the effective rates drive quantization
  const RateProfile low(std::vector<double>{0.3, 0.4});
  const auto z = csma_effective_rates(low, cfg.csma);
  const auto ref_low = testing::pipeline_oracle(game.bank(), z.vector(), 2.0, 1.0, 20.0 - 0.007);
  const auto u_low = game.expected_utilities(low);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(u_low[k] == doctest::Approx(ref_low[k]).epsilon(1e-12));
  }
}

TEST_CASE("utility estimate and SINR accessors are consistent") {
  const FeedbackGame game(small_config(2, 100));
  const RateProfile r(std::vector<double>{1.0, 4.0});
  const auto est = game.utility_estimate(1, r);
  CHECK(est.mean == doctest::Approx(game.expected_utility(1, r)).epsilon(1e-12));
  CHECK(est.std_error > 0.0);
  const auto samples = game.sinr_samples(0, r);
  CHECK(samples.size() == 100);
  double mean = 0.0;
  for (double s : samples) mean += s;
  CHECK(game.mean_sinr(r)[0] == doctest::Approx(mean / 100.0).epsilon(1e-12));
}

TEST_CASE("priced utility") {
  GameConfig cfg = small_config(2);
  cfg.alpha_price = 0.025;
  const FeedbackGame game(cfg);
  const RateProfile r(std::vector<double>{4.0, 0.0});
  CHECK(game.priced_utility(0, r) == doctest::Approx(game.expected_utility(0, r) - 0.1));
  CHECK(game.priced_utility(1, r) == game.expected_utility(1, r));
  const auto free = game.with_price(0.0);
  CHECK(free.priced_utility(0, r) == free.expected_utility(0, r));
  CHECK(free.shared_bank() == game.shared_bank());
  CHECK(priced_utility(0, r, cfg) == game.priced_utility(0, r));
  CHECK(expected_utility(0, r, cfg) == game.expected_utility(0, r));
}

TEST_CASE("infeasible profiles are rejected") {
  GameConfig cfg = small_config(2);
  cfg.beta = 5.0;
  const FeedbackGame game(cfg);
  CHECK_THROWS_AS(game.expected_utility(0, RateProfile(std::vector<double>{2.0, 2.0})),
                  InfeasibleProfile);
  CHECK_THROWS_AS(game.expected_utility(0, RateProfile(std::vector<double>{-1.0, 0.0})),
                  InvalidArgument);
  CHECK_THROWS_AS(game.expected_utility(0, RateProfile(std::vector<double>{17.0, 0.0})),
                  InvalidArgument);
  CHECK_THROWS_AS(game.expected_utility(0, RateProfile(3, 0.0)), InvalidArgument);
  CHECK_THROWS_AS(game.expected_utility(2, RateProfile(2, 0.0)), InvalidArgument);
  CHECK(game.is_feasible(RateProfile(std::vector<double>{1.0, 2.0})));
  CHECK_FALSE(game.is_feasible(RateProfile(std::vector<double>{2.0, 2.0})));
  const double bound = game.feasible_rate_bound(0, RateProfile(std::vector<double>{0.0, 1.0}));
  CHECK(bound < 3.0);
  CHECK(bound > 3.0 - 1e-6);
}

TEST_CASE("config validation") {
  GameConfig cfg;
  cfg.n_t = 3;
  cfg.n_s = 4;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = GameConfig{};
  cfg.mc_trials = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = GameConfig{};
  cfg.br_tolerance = 0.0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = GameConfig{};
  cfg.alpha_price = -1.0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  CHECK_THROWS_AS(FeedbackGame(small_config()).with_price(-0.5), InvalidArgument);
  CHECK(protocol_from_string("csma") == Protocol::Csma);
  CHECK(to_string(Protocol::Fdma) == "FDMA");
  CHECK_THROWS_AS(protocol_from_string("aloha"), InvalidArgument);
}

TEST_CASE("rank one row update agrees with the full pipeline") {
  for (double psi : {10.0, 0.01}) {
    GameConfig cfg = small_config(4, 60);
    cfg.n_t = 5;
    cfg.psi = psi;
    const FeedbackGame game(cfg);
    const RateProfile base(std::vector<double>{2.0, 5.0, 0.0, 9.0});
    for (std::size_t k = 0; k < 4; ++k) {
      const auto sweep = game.unilateral(k, base);
      CHECK(sweep.uses_row_update());
      for (double r : {0.0, 0.7, 3.0, 12.0}) {
        RateProfile p = base;
        p[k] = r;
        CHECK(sweep.utility(r) == doctest::Approx(game.expected_utility(k, p)).epsilon(1e-9));
        CHECK(sweep.sum_utility(r) == doctest::Approx(game.sum_utility(p)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("row update SINR per trial") {
  CrnBank bank(3, 4, 5, 9);
  const std::vector<double> a{0.9, 0.0, 0.6}, b{std::sqrt(1 - 0.81), 1.0, 0.8};
  RowUpdateSinr row(bank, a, b, 1, 3.0, 1.0);
  CHECK(row.trials() == 5);
  CHECK(row.swept_user() == 1);
  SinrWorkspace ws;
  std::vector<double> gamma;
  for (std::size_t t = 0; t < 5; ++t) {
    const std::vector<double> ta{0.9, std::sqrt(0.75), 0.6}, nb{std::sqrt(0.19), 0.5, 0.8};
    CMatrix hq;
    quantize_channel_into(bank[t], ta, nb, hq);
    sinr_into(bank[t].h, hq, 3.0, 1.0, ws, gamma);
    for (std::size_t u = 0; u < 3; ++u) {
      CHECK(row.gamma(t, u, std::sqrt(0.75), 0.5) == doctest::Approx(gamma[u]).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(RowUpdateSinr(bank, a, b, 1, 0.0, 1.0), InvalidArgument);
}

TEST_CASE("zero forcing and csma games take the direct path") {
  GameConfig cfg = small_config(2, 20);
  cfg.psi = 0.0;
  const RateProfile r(std::vector<double>{1.0, 1.0});
  CHECK_FALSE(FeedbackGame(cfg).unilateral(0, r).uses_row_update());
  cfg.psi.reset();
  cfg.protocol = Protocol::Csma;
  CHECK_FALSE(FeedbackGame(cfg).unilateral(0, RateProfile(2, 0.1)).uses_row_update());
}

TEST_CASE("best response matches a dense grid") {
  GameConfig cfg = small_config(2, 200);
  for (double alpha : {0.0, 0.1}) {
    cfg.alpha_price = alpha;
    const FeedbackGame game(cfg);
    for (double other : {1.0, 6.0}) {
      const RateProfile r(std::vector<double>{0.0, other});
      const double br = game.best_response(0, r);
      const auto sweep = game.unilateral(0, r);
      double best_x = 0.0, best_v = -INFINITY;
      for (int i = 0; i <= 10000; ++i) {
        const double x = sweep.upper_bound() * i / 10000.0;
        const double v = sweep.priced_utility(x);
        if (v > best_v) {
          best_v = v;
          best_x = x;
        }
      }
      CHECK(std::abs(br - best_x) <= 2.0 * cfg.br_tolerance);
      CHECK(br == game.best_response(0, r));
      CHECK(best_response(0, r, cfg) == br);
    }
  }
}

TEST_CASE("prohibitive prices push the best response to zero") {
  // sqrt(1 - 2^-r) has infinite slope at r = 0, so any finite price leaves a
  // small positive optimum; it shrinks like 1 / alpha^2.
  GameConfig cfg = small_config(2, 50);
  cfg.alpha_price = cfg.b_total;
  const FeedbackGame game(cfg);
  const double at_b = game.best_response(0, RateProfile(2, 3.0));
  CHECK(at_b < 0.01);
  const auto steep = game.with_price(10.0 * cfg.b_total);
  CHECK(steep.best_response(0, RateProfile(2, 3.0)) < cfg.br_tolerance);
  CHECK(steep.best_response(1, RateProfile(2, 0.0)) < cfg.br_tolerance);
  CHECK(steep.best_response(0, RateProfile(2, 3.0)) < at_b);
}

TEST_CASE("dynamics on a symmetric game") {
  GameConfig cfg = small_config(3, 200);
  const FeedbackGame game(cfg);
  auto rep = game.run_dynamics();
  REQUIRE(rep.converged);
  CHECK(rep.rounds <= cfg.max_rounds);
  CHECK(rep.trace.size() == rep.rounds);
  double mean = rep.rates.sum() / 3.0;
  for (std::size_t k = 0; k < 3; ++k) {
    // finite CRN banks break exchangeability, so allow sampling asymmetry
    CHECK(std::abs(rep.rates[k] - mean) < 1.0);
    CHECK(rep.priced_utilities[k] == rep.utilities[k]);
  }
  for (const auto& step : rep.trace) CHECK(game.is_feasible(step));
  CHECK(game.verify_nash(rep));
  CHECK(rep.nash_verified);

  SUBCASE("restarting at the equilibrium is a fixed point") {
    const auto again = game.run_dynamics(rep.rates);
    CHECK(again.converged);
    CHECK(again.rounds == 1);
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(std::abs(again.rates[k] - rep.rates[k]) < cfg.br_tolerance);
    }
  }
  SUBCASE("repeat runs are bit identical") {
    const auto again = game.run_dynamics();
    CHECK(again.rates == rep.rates);
    CHECK(again.utilities == rep.utilities);
    CHECK(again.trace == rep.trace);
    CHECK(run_dynamics(cfg, RateProfile(3, 1.0)).rates == rep.rates);
  }
  SUBCASE("price zero equals the unpriced game") {
    const auto nfcp = game.with_price(0.0).run_dynamics();
    CHECK(nfcp.rates == rep.rates);
  }
}

TEST_CASE("verify_nash rejects a perturbed profile") {
  GameConfig cfg = small_config(2, 200);
  const FeedbackGame game(cfg);
  auto rep = game.run_dynamics();
  REQUIRE(rep.converged);
  REQUIRE(game.verify_nash(rep));
  EquilibriumReport bad = rep;
  bad.rates[0] = rep.rates[0] > 1.0 ? rep.rates[0] - 1.0 : rep.rates[0] + 1.0;
  CHECK_FALSE(game.verify_nash(bad));
  CHECK_FALSE(bad.nash_verified);
  EquilibriumReport unconverged = rep;
  unconverged.converged = false;
  CHECK_THROWS_AS(game.verify_nash(unconverged), InvalidArgument);
  CHECK(verify_nash(rep, cfg, 65));
}

TEST_CASE("single user equilibrium is the global argmax") {
  GameConfig cfg = small_config(1, 300);
  cfg.n_t = 2;
  cfg.alpha_price = 0.05;
  const FeedbackGame game(cfg);
  auto rep = game.run_dynamics();
  REQUIRE(rep.converged);
  CHECK(game.verify_nash(rep, 401));
  double best_x = 0.0, best_v = -INFINITY;
  for (int i = 0; i <= 1600; ++i) {
    const double x = i / 100.0;
    const double v = game.priced_utility(0, RateProfile(1, x));
    if (v > best_v) {
      best_v = v;
      best_x = x;
    }
  }
  CHECK(std::abs(rep.rates[0] - best_x) < 0.02);
}

TEST_CASE("mean SINR rises with own rate and saturates") {
  GameConfig cfg = small_config(2, 2000);
  cfg.r_max = 64.0;
  const FeedbackGame game(cfg);
  double prev = 0.0;
  for (int r = 0; r <= 16; ++r) {
    const double g = game.mean_sinr(RateProfile(std::vector<double>{double(r), 2.0}))[0];
    CHECK(g >= prev);
    prev = g;
  }
  const double g30 = game.mean_sinr(RateProfile(std::vector<double>{30.0, 2.0}))[0];
  const double g60 = game.mean_sinr(RateProfile(std::vector<double>{60.0, 2.0}))[0];
  CHECK(std::abs(g30 - g60) < 0.005 * g60);
}
