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
#include "fbgame/access_models.hpp"

#include <cmath>
#include <string>

#include "fbgame/errors.hpp"
#include "fbgame/scalar_search.hpp"

namespace fbgame {

namespace {

// Sums term(k) for k = first, first + 1, ... until a term falls below
// eps * partial sum.
template <typename Term>
double sum_series(Term&& term, std::size_t first, double eps) {
  double total = 0.0;
  for (std::size_t k = first; k < first + kCsmaMaxTerms; ++k) {
    const double t = term(k);
    total += t;
    if (t <= eps * total) return total;
  }
  throw SeriesDivergence("csma_throughput: series did not converge within " +
                         std::to_string(kCsmaMaxTerms) + " terms");
}

// p = 1: both series are geometric in q = exp(-a G).
double one_persistent_throughput(double g, double a) {
  const double one_minus_q = -std::expm1(-a * g);
  const double decay = std::exp(-g * (1.0 + a));
  const double num = (1.0 + a) * one_minus_q + a * (1.0 - one_minus_q);
  const double den = (1.0 + a) * one_minus_q + a * decay;
  return g * decay * num / den;
}

// General p. Every exponent is shifted by -G(1 + a) so that large loads do
// not overflow; the shift cancels between numerator and denominator.
double p_persistent_throughput(double g, const CsmaModel& m) {
  const double p = m.p;
  const double a = m.a_ratio;
  const double q = 1.0 - p;
  const double shift = g * (1.0 + a);
  auto num_term = [&](std::size_t k) {
    const double kk = static_cast<double>(k);
    const double weight = p * std::pow(q, kk) + a * (1.0 - std::pow(q, kk + 1.0));
    const double expo = g * std::pow(q, kk + 1.0) +
                        a * g * (-(kk + 1.0) + (1.0 - std::pow(q, kk + 2.0)) / p);
    return weight * std::exp(expo - shift);
  };
  auto den_term = [&](std::size_t k) {
    const double kk = static_cast<double>(k);
    const double expo = g * std::pow(q, kk) + a * g * (-kk + (1.0 - std::pow(q, kk + 1.0)) / p);
    return std::exp(expo - shift);
  };
  const double num = sum_series(num_term, 0, m.truncation_eps);
  const double den = (1.0 + a) + a * sum_series(den_term, 1, m.truncation_eps);
  return g * num / den;
}

}  // namespace

void CsmaModel::validate() const {
  if (!(p > 0.0 && p <= 1.0)) throw InvalidArgument("CSMA persistence p must lie in (0, 1]");
  if (!(a_ratio > 0.0)) throw InvalidArgument("CSMA a_ratio must be positive");
  if (!(g0 > 0.0)) throw InvalidArgument("CSMA g0 must be positive");
  if (!(truncation_eps > 0.0)) throw InvalidArgument("CSMA truncation_eps must be positive");
}

BandwidthSplit fdma_split(double b_total, double beta, const RateProfile& rates) {
  if (!(b_total > 0.0)) throw InvalidArgument("fdma_split: total bandwidth must be positive");
  if (!(beta > 0.0)) throw InvalidArgument("fdma_split: beta must be positive");
  for (double r : rates.values()) {
    if (!(r >= 0.0)) throw InvalidArgument("fdma_split: rates must be non-negative");
  }
  const double uplink = beta * rates.sum();
  if (uplink >= b_total) {
    throw InfeasibleProfile("feedback needs uplink bandwidth " + std::to_string(uplink) +
                            " >= total bandwidth " + std::to_string(b_total));
  }
  BandwidthSplit split;
  split.b_total = b_total;
  split.b_dl = b_total - uplink;
  // Recovering b_ul from b_dl is exact, so b_ul + b_dl == b_total holds bit for bit.
  split.b_ul = b_total - split.b_dl;
  return split;
}

double csma_throughput(double g, const CsmaModel& model) {
  if (!(g >= 0.0)) throw InvalidArgument("csma_throughput: offered load must be non-negative");
  if (g == 0.0) return 0.0;
  if (model.p == 1.0) return one_persistent_throughput(g, model.a_ratio);
  return p_persistent_throughput(g, model);
}

double calibrate_g0(double p, double a_ratio, double truncation_eps) {
  CsmaModel model{p, a_ratio, 1.0, truncation_eps};
  model.validate();
  auto s = [&](double g) { return csma_throughput(g, model); };
  // The grid starts one step above zero; S(0) = 0 is never the maximum.
  constexpr std::size_t kGrid = 1001;
  const double step = kCsmaLoadSearchMax / static_cast<double>(kGrid);
  const auto best = maximize_on_interval(s, step, kCsmaLoadSearchMax, 1e-10, kGrid);
  return best.x;
}

CsmaModel make_csma_model(double p, double a_ratio, double truncation_eps) {
  return CsmaModel{p, a_ratio, calibrate_g0(p, a_ratio, truncation_eps), truncation_eps};
}

RateProfile csma_effective_rates(const RateProfile& rates, const CsmaModel& model) {
  for (double r : rates.values()) {
    if (!(r >= 0.0)) throw InvalidArgument("csma_effective_rates: rates must be non-negative");
  }
  const double load = rates.sum();
  RateProfile z(rates.size(), 0.0);
  if (load == 0.0 || load > model.g0) return z;
  const double share = csma_throughput(load, model) / load;
  for (std::size_t k = 0; k < rates.size(); ++k) z[k] = rates[k] * share;
  return z;
}

}  // namespace fbgame
