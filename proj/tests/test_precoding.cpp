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

#include <cmath>
#include <vector>

#include "fbgame/channel_model.hpp"
#include "fbgame/errors.hpp"
#include "fbgame/game_config.hpp"
#include "fbgame/precoding.hpp"

using namespace fbgame;

TEST_CASE("regularization parameter") {
  GameConfig cfg;
  CHECK(regularization_param(cfg) == 10.0);
  cfg.n_s = 4;
  cfg.n0 = 0.5;
  CHECK(regularization_param(cfg) == 2.0);
  cfg.psi = 0.0;
  CHECK(regularization_param(cfg) == 0.0);
}

TEST_CASE("identity channel under zero forcing") {
  const CMatrix eye = CMatrix::Identity(2, 2);
  const auto pre = build_precoder(eye, 0.0);
  // T = I, so W = I / sqrt(2) and K = 1 / ||T||_F = 1 / sqrt(2).
  CHECK((pre.w - eye / std::sqrt(2.0)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(pre.k_norm == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(pre.psi == 0.0);
}

TEST_CASE("scalar channel") {
  CMatrix h(1, 1);
  h(0, 0) = 2.0;
  const auto pre = build_precoder(h, 0.0);
  CHECK(std::abs(pre.w(0, 0) - Complex(1.0, 0.0)) < 1e-15);
  CHECK(pre.k_norm == doctest::Approx(2.0).epsilon(1e-15));
  // with psi = 1: T = 2 / 5, normalization is unchanged in direction
  const auto reg = build_precoder(h, 1.0);
  CHECK(reg.k_norm == doctest::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("precoder has unit Frobenius norm") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto r = draw_channel(3, 5, s);
    for (double psi : {0.0, 0.01, 3.0, 100.0}) {
      const auto pre = build_precoder(r.h, psi);
      CHECK(std::abs(pre.w.norm() - 1.0) < 1e-10);
      CHECK(pre.w.rows() == 5);
      CHECK(pre.w.cols() == 3);
    }
  }
}

TEST_CASE("zero forcing rejects singular channels") {
  CMatrix h(2, 2);
  h << 1.0, 2.0, 2.0, 4.0;
  CHECK_THROWS_AS(build_precoder(h, 0.0), SingularMatrix);
  CHECK_NOTHROW(build_precoder(h, 0.1));
  CHECK_THROWS_AS(build_precoder(h, -1.0), InvalidArgument);
  // N_s > N_t makes H H^H rank deficient
  const auto wide = draw_channel(3, 2, 4);
  CHECK_THROWS_AS(build_precoder(wide.h, 0.0), SingularMatrix);
}

TEST_CASE("link metrics match a term by term recomputation") {
  CMatrix h(2, 2), hq(2, 2);
  h << Complex(0.3, -1.1), Complex(0.7, 0.2), Complex(-0.4, 0.5), Complex(1.2, 0.9);
  hq << Complex(0.2, -1.0), Complex(0.9, 0.1), Complex(-0.5, 0.3), Complex(1.0, 1.1);
  const auto pre = build_precoder(hq, 0.5);
  const auto m = link_metrics(h, pre, 0.8);
  for (int k = 0; k < 2; ++k) {
    Complex g[2];
    for (int i = 0; i < 2; ++i) g[i] = h(k, 0) * pre.w(0, i) + h(k, 1) * pre.w(1, i);
    const double sig = std::norm(g[k]);
    const double intf = std::norm(g[1 - k]);
    CHECK(m.signal_power[k] == doctest::Approx(sig).epsilon(1e-13));
    CHECK(m.interference_power[k] == doctest::Approx(intf).epsilon(1e-13));
    CHECK(m.gamma[k] == doctest::Approx(sig / (intf + 0.8)).epsilon(1e-13));
    CHECK(std::abs(m.gamma[k] - m.signal_power[k] / (m.interference_power[k] + m.n0)) < 1e-12);
  }
  CHECK_THROWS_AS(link_metrics(h, pre, 0.0), InvalidArgument);
}

TEST_CASE("perfect CSI zero forcing nulls interference") {
  for (std::size_t n : {2u, 4u}) {
    for (std::uint64_t s = 0; s < 100; ++s) {
      const auto r = draw_channel(n, n, 1000 + s);
      const auto m = link_metrics(r.h, build_precoder(r.h, 0.0), 1.0);
      for (std::size_t k = 0; k < n; ++k) {
        CHECK(m.interference_power[k] < 1e-18 * m.signal_power[k]);
      }
    }
  }
}

TEST_CASE("large noise drives SINR to zero") {
  const auto r = draw_channel(2, 3, 3);
  const auto pre = build_precoder(r.h, 1.0);
  const auto m = link_metrics(r.h, pre, 1e12);
  for (double g : m.gamma) CHECK(g < 1e-10);
}

TEST_CASE("sinr_into agrees with build_precoder plus link_metrics") {
  SinrWorkspace ws;
  std::vector<double> gamma;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto r = draw_channel(4, 6, s);
    const std::vector<double> rates{0.0, 1.5, 4.0, 9.0};
    const auto hq = quantize_channel(r, rates);
    for (double psi : {0.0, 0.2, 4.0}) {
      sinr_into(r.h, hq, psi, 1.0, ws, gamma);
      const auto m = link_metrics(r.h, build_precoder(hq, psi), 1.0);
      for (std::size_t k = 0; k < 4; ++k) {
        CHECK(gamma[k] == doctest::Approx(m.gamma[k]).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("throughput") {
  CHECK(throughput(0.0, 5.0) == 0.0);
  CHECK(throughput(1.0, 1.0) == 1.0);
  CHECK(throughput(3.0, 19.0) == 38.0);
}
