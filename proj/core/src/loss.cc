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

#include "cdeforest/loss.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "cdeforest/error.h"
#include "cdeforest/parallel.h"

namespace cdeforest {

namespace {

// Neumaier compensated sum; the serial order is fixed, so results do not
// depend on how per-point work was scheduled.
double CompensatedSum(std::span<const double> values) {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  return sum + carry;
}

}  // namespace

Interpolated InterpolateOnLattice(const Lattice& grid, std::span<const double> values,
                                  std::span<const double> z) {
  if (z.size() != grid.dim()) {
    throw InvalidArgument("interpolation point has " + std::to_string(z.size()) +
                          " coordinates for a " + std::to_string(grid.dim()) + "-D grid");
  }
  if (values.size() != grid.size()) throw InvalidArgument("grid and values differ in size");
  if (!grid.Contains(z)) return {0.0, false};

  const std::size_t d = grid.dim();
  std::vector<std::size_t> base(d);
  std::vector<double> frac(d);
  std::vector<std::size_t> stride(d);
  std::size_t s = 1;
  for (std::size_t k = d; k-- > 0;) {
    stride[k] = s;
    s *= grid.axis(k).size();
  }
  for (std::size_t k = 0; k < d; ++k) {
    const auto& axis = grid.axis(k);
    if (axis.size() == 1) {
      base[k] = 0;
      frac[k] = 0.0;
      continue;
    }
    const auto upper = std::upper_bound(axis.begin(), axis.end(), z[k]);
    std::size_t i = static_cast<std::size_t>(upper - axis.begin());
    i = std::clamp<std::size_t>(i, 1, axis.size() - 1) - 1;
    base[k] = i;
    frac[k] = (z[k] - axis[i]) / (axis[i + 1] - axis[i]);
  }

  double result = 0.0;
  for (std::size_t corner = 0; corner < (std::size_t{1} << d); ++corner) {
    double weight = 1.0;
    std::size_t index = 0;
    bool valid = true;
    for (std::size_t k = 0; k < d; ++k) {
      const bool upper = (corner >> (d - 1 - k)) & 1U;
      if (upper && grid.axis(k).size() == 1) {
        valid = false;
        break;
      }
      weight *= upper ? frac[k] : 1.0 - frac[k];
      index += (base[k] + (upper ? 1 : 0)) * stride[k];
    }
    if (valid && weight != 0.0) result += weight * values[index];
  }
  return {result, true};
}

Interpolated InterpolateDensity(const DensityEstimate& estimate, std::span<const double> z) {
  return InterpolateOnLattice(Lattice::FromPoints(estimate.grid), estimate.values, z);
}

LossReport CdeLoss(const DensityFn& estimator, const Matrix& x_test, const Matrix& z_test,
                   const Lattice& grid, int threads) {
  const std::size_t m = x_test.rows();
  if (m == 0) throw InvalidArgument("CDE loss needs a nonempty test set");
  if (z_test.rows() != m) throw InvalidArgument("test covariates and responses differ in rows");
  if (z_test.cols() != grid.dim()) {
    throw InvalidArgument("test responses and evaluation grid differ in dimension");
  }

  const std::vector<double> quad = grid.TrapezoidWeights();
  LossReport report;
  report.n_test = m;
  report.integral_sq.assign(m, 0.0);
  report.density_at_z.assign(m, 0.0);
  std::vector<char> inside(m, 0);

  ParallelFor(m, threads, [&](std::size_t i) {
    const std::vector<double> values = estimator(i, x_test.row(i));
    if (values.size() != grid.size()) {
      throw InvalidArgument("estimator returned " + std::to_string(values.size()) +
                            " values for a grid of " + std::to_string(grid.size()));
    }
    std::vector<double> sq_terms(values.size());
    for (std::size_t g = 0; g < values.size(); ++g) sq_terms[g] = quad[g] * values[g] * values[g];
    const double sq = CompensatedSum(sq_terms);
    const Interpolated at_z = InterpolateOnLattice(grid, values, z_test.row(i));
    report.integral_sq[i] = sq;
    report.density_at_z[i] = at_z.value;
    inside[i] = at_z.inside ? 1 : 0;
  });

  report.outside_hull =
      static_cast<std::size_t>(std::count(inside.begin(), inside.end(), 0));
  const double count = static_cast<double>(m);
  report.term_sq = CompensatedSum(report.integral_sq) / count;
  report.term_lik = CompensatedSum(report.density_at_z) / count;
  report.loss = report.term_sq - 2.0 * report.term_lik;

  if (m > 1) {
    std::vector<double> sq_dev(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double c = report.integral_sq[i] - 2.0 * report.density_at_z[i];
      sq_dev[i] = (c - report.loss) * (c - report.loss);
    }
    const double var = CompensatedSum(sq_dev) / static_cast<double>(m - 1);
    report.se = std::sqrt(var / count);
  }
  return report;
}

}  // namespace cdeforest
