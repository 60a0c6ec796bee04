/*
 * Copyright 2026 The cdeforest Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CDEFOREST_LOSS_H_
#define CDEFOREST_LOSS_H_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "cdeforest/density.h"
#include "cdeforest/lattice.h"
#include "cdeforest/matrix.h"

namespace cdeforest {

// Empirical CDE loss up to the constant that does not depend on the
// estimate: mean integral of fhat^2 minus twice the mean of fhat(z_i | x_i).
struct LossReport {
  double loss = 0.0;      // term_sq - 2 term_lik
  double term_sq = 0.0;
  double term_lik = 0.0;
  double se = 0.0;        // standard error over test points
  std::size_t n_test = 0;
  std::size_t outside_hull = 0;  // test responses outside the grid
  std::vector<double> integral_sq;  // per test point
  std::vector<double> density_at_z; // per test point
};

// Values of fhat(. | x) on the evaluation lattice for test row `row`.
using DensityFn =
    std::function<std::vector<double>(std::size_t row, std::span<const double> x)>;

LossReport CdeLoss(const DensityFn& estimator, const Matrix& x_test,
                   const Matrix& z_test, const Lattice& grid, int threads = 1);

struct Interpolated {
  double value = 0.0;
  bool inside = false;
};

// Multilinear interpolation of lattice values at z; zero outside the hull.
Interpolated InterpolateOnLattice(const Lattice& grid, std::span<const double> values,
                                  std::span<const double> z);
Interpolated InterpolateDensity(const DensityEstimate& estimate,
                                std::span<const double> z);

}  // namespace cdeforest

#endif  // CDEFOREST_LOSS_H_
