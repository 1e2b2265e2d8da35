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

namespace fbgame {

struct ScalarMaximum {
  double x = 0.0;
  double value = 0.0;
  std::size_t evaluations = 0;
};

/// Maximizes `f` over [lo, hi]. A uniform grid of `grid_points` points
/// brackets the best cell, then golden-section search shrinks the bracket
/// below `tol`. The best point evaluated anywhere is returned; ties go to the
/// smaller abscissa. Does not assume continuity, but only finds the global
/// maximum when the grid resolves it.
ScalarMaximum maximize_on_interval(const std::function<double(double)>& f, double lo, double hi,
                                   double tol, std::size_t grid_points = 65);

}  // namespace fbgame
