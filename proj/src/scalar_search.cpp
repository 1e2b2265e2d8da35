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
#include "fbgame/scalar_search.hpp"

#include <algorithm>
#include <cmath>

#include "fbgame/errors.hpp"

namespace fbgame {

namespace {

struct Tracker {
  double x;
  double value;
  std::size_t evaluations = 0;

  void offer(double cx, double cv) {
    if (cv > value || (cv == value && cx < x)) {
      x = cx;
      value = cv;
    }
  }
};

}  // namespace

ScalarMaximum maximize_on_interval(const std::function<double(double)>& f, double lo, double hi,
                                   double tol, std::size_t grid_points) {
  if (!(tol > 0.0)) throw InvalidArgument("maximize_on_interval: tolerance must be positive");
  if (hi < lo) throw InvalidArgument("maximize_on_interval: empty interval");
  if (hi == lo || grid_points < 2) {
    return {lo, f(lo), 1};
  }

  const double step = (hi - lo) / static_cast<double>(grid_points - 1);
  auto grid_x = [&](std::size_t i) {
    return i + 1 == grid_points ? hi : lo + step * static_cast<double>(i);
  };

  Tracker best{lo, f(lo), 1};
  std::size_t best_index = 0;
  for (std::size_t i = 1; i < grid_points; ++i) {
    const double x = grid_x(i);
    const double v = f(x);
    ++best.evaluations;
    if (v > best.value) {
      best.x = x;
      best.value = v;
      best_index = i;
    }
  }

  double a = grid_x(best_index == 0 ? 0 : best_index - 1);
  double b = grid_x(std::min(best_index + 1, grid_points - 1));
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  best.evaluations += 2;
  best.offer(c, fc);
  best.offer(d, fd);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
      best.offer(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
      best.offer(d, fd);
    }
    ++best.evaluations;
  }
  return {best.x, best.value, best.evaluations};
}

}  // namespace fbgame
