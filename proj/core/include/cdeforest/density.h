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

#ifndef CDEFOREST_DENSITY_H_
#define CDEFOREST_DENSITY_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cdeforest/lattice.h"
#include "cdeforest/matrix.h"

namespace cdeforest {

struct BandwidthSpec {
  enum class Mode { kFixed, kAdaptive };

  Mode mode = Mode::kFixed;
  // Response units. A single value applies to every dimension.
  std::vector<double> value;

  static BandwidthSpec Fixed(double h) { return {Mode::kFixed, {h}}; }
  static BandwidthSpec Fixed(std::vector<double> h) { return {Mode::kFixed, std::move(h)}; }
  static BandwidthSpec Adaptive() { return {Mode::kAdaptive, {}}; }

  // Parses "adaptive", a number, or a comma-separated per-dimension list.
  static BandwidthSpec Parse(const std::string& text);
};

struct DensityEstimate {
  Matrix grid;                     // G x d
  std::vector<double> values;      // G, nonnegative
  std::vector<double> bandwidth;   // per dimension
  bool bandwidth_fallback = false; // adaptive rule used its range fallback
};

// Gaussian density N(x; mean, sd).
double GaussianPdf(double x, double mean, double sd);

// Weighted product-Gaussian KDE:
//   values[g] = sum_i w_i prod_k N(grid[g,k]; z[i,k], h_k).
// Zero weights are skipped. Throws InvalidArgument on shape mismatch or h <= 0.
DensityEstimate WeightedKde(const Matrix& z, std::span<const double> w,
                            const Matrix& grid, std::span<const double> h);

// Same estimate on a lattice, factorised per axis.
std::vector<double> WeightedKdeOnLattice(const Matrix& z, std::span<const double> w,
                                         const Lattice& grid,
                                         std::span<const double> h);

struct AdaptiveBandwidth {
  std::vector<double> h;
  double n_eff = 0.0;
  bool fallback = false;
};

// Weighted Silverman rule: h_k = 1.06 sigma_k n_eff^(-1/5), where sigma_k is
// the w-weighted standard deviation of column k and n_eff = 1 / sum w_i^2.
// When n_eff < 2 or sigma_k == 0 the column range replaces 4 sigma_k and the
// result is flagged.
AdaptiveBandwidth SelectAdaptiveBandwidth(const Matrix& z, std::span<const double> w);

// Fixed values broadcast to `dim`, or the adaptive rule applied to (z, w).
AdaptiveBandwidth ResolveBandwidth(const BandwidthSpec& spec, const Matrix& z,
                                   std::span<const double> w);

// Trapezoid quadrature of grid values (iterated over dimensions for
// lattices). Throws InvalidArgument if the grid is not a lattice.
double GridIntegral(std::span<const double> values, const Matrix& grid);
double GridIntegral(std::span<const double> values, const Lattice& grid);

}  // namespace cdeforest

#endif  // CDEFOREST_DENSITY_H_
