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

#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace fbgame {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

/// Per-user CSI feedback rates in bits; the strategy profile of the game.
class RateProfile {
 public:
  RateProfile() = default;
  explicit RateProfile(std::vector<double> rates) : rates_(std::move(rates)) {}
  RateProfile(std::size_t users, double rate) : rates_(users, rate) {}

  std::size_t size() const { return rates_.size(); }
  bool empty() const { return rates_.empty(); }

  double operator[](std::size_t k) const { return rates_[k]; }
  double& operator[](std::size_t k) { return rates_[k]; }

  std::span<const double> values() const { return rates_; }
  const std::vector<double>& vector() const { return rates_; }

  double sum() const { return std::accumulate(rates_.begin(), rates_.end(), 0.0); }

  /// Sum over every user except `k`.
  double sum_except(std::size_t k) const {
    double total = 0.0;
    for (std::size_t j = 0; j < rates_.size(); ++j) {
      if (j != k) total += rates_[j];
    }
    return total;
  }

  bool operator==(const RateProfile&) const = default;

 private:
  std::vector<double> rates_;
};

}  // namespace fbgame
