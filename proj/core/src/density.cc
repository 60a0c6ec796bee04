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

#include "cdeforest/density.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include "cdeforest/error.h"

namespace cdeforest {

namespace {

// exp(-0.5 u^2) is exactly zero in double precision beyond this |u|.
constexpr double kKernelCutoff = 38.7;

std::vector<std::string> SplitOn(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = text.find(sep, start);
    parts.push_back(text.substr(start, end - start));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return parts;
}

void CheckBandwidth(std::span<const double> h, std::size_t dim) {
  if (h.size() != dim) {
    throw InvalidArgument("bandwidth has " + std::to_string(h.size()) +
                          " entries for a " + std::to_string(dim) + "-D response");
  }
  for (double v : h) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidArgument("bandwidth must be positive and finite, got " +
                            std::to_string(v));
    }
  }
}

void CheckWeights(const Matrix& z, std::span<const double> w) {
  if (w.size() != z.rows()) {
    throw InvalidArgument("weight vector has " + std::to_string(w.size()) +
                          " entries for " + std::to_string(z.rows()) + " responses");
  }
}

}  // namespace

BandwidthSpec BandwidthSpec::Parse(const std::string& text) {
  if (text == "adaptive") return Adaptive();
  std::vector<double> values;
  for (const std::string& part : SplitOn(text, ',')) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size() || !(v > 0.0)) {
      throw InvalidArgument("bandwidth '" + text +
                            "' is not 'adaptive' or a list of positive numbers");
    }
    values.push_back(v);
  }
  return Fixed(std::move(values));
}

double GaussianPdf(double x, double mean, double sd) {
  const double u = (x - mean) / sd;
  return std::exp(-0.5 * u * u) / (sd * std::sqrt(2.0 * std::numbers::pi));
}

DensityEstimate WeightedKde(const Matrix& z, std::span<const double> w,
                            const Matrix& grid, std::span<const double> h) {
  CheckWeights(z, w);
  CheckBandwidth(h, z.cols());
  if (grid.cols() != z.cols()) throw InvalidArgument("grid and responses differ in dimension");
  DensityEstimate estimate;
  estimate.grid = grid;
  estimate.bandwidth.assign(h.begin(), h.end());
  estimate.values.assign(grid.rows(), 0.0);
  for (std::size_t g = 0; g < grid.rows(); ++g) {
    double sum = 0.0;
    for (std::size_t i = 0; i < z.rows(); ++i) {
      if (w[i] == 0.0) continue;
      double kernel = w[i];
      for (std::size_t k = 0; k < z.cols(); ++k) {
        kernel *= GaussianPdf(grid(g, k), z(i, k), h[k]);
      }
      sum += kernel;
    }
    estimate.values[g] = sum;
  }
  return estimate;
}

std::vector<double> WeightedKdeOnLattice(const Matrix& z, std::span<const double> w,
                                         const Lattice& grid,
                                         std::span<const double> h) {
  CheckWeights(z, w);
  CheckBandwidth(h, z.cols());
  const std::size_t d = z.cols();
  if (grid.dim() != d) throw InvalidArgument("grid and responses differ in dimension");

  std::vector<double> values(grid.size(), 0.0);
  std::vector<std::vector<double>> kernels(d);
  std::vector<double> partial;
  std::vector<double> next;
  for (std::size_t i = 0; i < z.rows(); ++i) {
    if (w[i] == 0.0) continue;
    for (std::size_t k = 0; k < d; ++k) {
      const auto& axis = grid.axis(k);
      const double norm = 1.0 / (h[k] * std::sqrt(2.0 * std::numbers::pi));
      auto& kern = kernels[k];
      kern.resize(axis.size());
      for (std::size_t a = 0; a < axis.size(); ++a) {
        const double u = (axis[a] - z(i, k)) / h[k];
        kern[a] = std::abs(u) > kKernelCutoff ? 0.0 : std::exp(-0.5 * u * u) * norm;
      }
    }
    if (d == 1) {
      const auto& kern = kernels[0];
      for (std::size_t a = 0; a < kern.size(); ++a) values[a] += w[i] * kern[a];
      continue;
    }
    // Outer product of the per-axis kernels, last axis fastest.
    partial.assign(1, w[i]);
    for (std::size_t k = 0; k < d; ++k) {
      next.clear();
      for (double p : partial) {
        for (double kv : kernels[k]) next.push_back(p * kv);
      }
      std::swap(partial, next);
    }
    for (std::size_t g = 0; g < values.size(); ++g) values[g] += partial[g];
  }
  return values;
}

AdaptiveBandwidth SelectAdaptiveBandwidth(const Matrix& z, std::span<const double> w) {
  CheckWeights(z, w);
  if (z.rows() == 0) throw InvalidArgument("adaptive bandwidth needs responses");
  double total = 0.0;
  double total_sq = 0.0;
  for (double wi : w) {
    if (wi < 0.0) throw InvalidArgument("weights must be nonnegative");
    total += wi;
  }
  if (!(total > 0.0)) throw InvalidArgument("weights sum to zero");
  for (double wi : w) total_sq += (wi / total) * (wi / total);

  AdaptiveBandwidth result;
  result.n_eff = 1.0 / total_sq;
  const double shrink = 1.06 * std::pow(result.n_eff, -0.2);
  for (std::size_t k = 0; k < z.cols(); ++k) {
    double mean = 0.0;
    double lo = z(0, k);
    double hi = z(0, k);
    for (std::size_t i = 0; i < z.rows(); ++i) {
      mean += (w[i] / total) * z(i, k);
      lo = std::min(lo, z(i, k));
      hi = std::max(hi, z(i, k));
    }
    double var = 0.0;
    for (std::size_t i = 0; i < z.rows(); ++i) {
      const double dev = z(i, k) - mean;
      var += (w[i] / total) * dev * dev;
    }
    const double sd = std::sqrt(var);
    if (result.n_eff < 2.0 || !(sd > 0.0)) {
      result.fallback = true;
      result.h.push_back(shrink * (hi - lo) / 4.0);
    } else {
      result.h.push_back(shrink * sd);
    }
  }
  return result;
}

AdaptiveBandwidth ResolveBandwidth(const BandwidthSpec& spec, const Matrix& z,
                                   std::span<const double> w) {
  if (spec.mode == BandwidthSpec::Mode::kAdaptive) return SelectAdaptiveBandwidth(z, w);
  AdaptiveBandwidth result;
  if (spec.value.size() == 1) {
    result.h.assign(z.cols(), spec.value[0]);
  } else {
    result.h = spec.value;
  }
  CheckBandwidth(result.h, z.cols());
  return result;
}

double GridIntegral(std::span<const double> values, const Lattice& grid) {
  if (values.size() != grid.size()) {
    throw InvalidArgument("grid has " + std::to_string(grid.size()) + " points but " +
                          std::to_string(values.size()) + " values were given");
  }
  const std::vector<double> weights = grid.TrapezoidWeights();
  double sum = 0.0;
  for (std::size_t g = 0; g < values.size(); ++g) sum += weights[g] * values[g];
  return sum;
}

double GridIntegral(std::span<const double> values, const Matrix& grid) {
  if (values.size() != grid.rows()) {
    throw InvalidArgument("grid and values differ in length");
  }
  if (grid.cols() == 1) {
    double sum = 0.0;
    for (std::size_t g = 1; g < grid.rows(); ++g) {
      const double step = grid(g, 0) - grid(g - 1, 0);
      if (!(step > 0.0)) throw InvalidArgument("1-D grid is not strictly increasing");
      sum += step * (values[g] + values[g - 1]) / 2.0;
    }
    return sum;
  }
  return GridIntegral(values, Lattice::FromPoints(grid));
}

}  // namespace cdeforest
