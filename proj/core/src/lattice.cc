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

#include "cdeforest/lattice.h"

#include <algorithm>
#include <string>
#include <utility>

#include "cdeforest/error.h"

namespace cdeforest {

Lattice::Lattice(std::vector<std::vector<double>> axes) : axes_(std::move(axes)) {
  if (axes_.empty()) throw InvalidArgument("lattice needs at least one axis");
  size_ = 1;
  for (std::size_t k = 0; k < axes_.size(); ++k) {
    const auto& axis = axes_[k];
    if (axis.empty()) throw InvalidArgument("lattice axis " + std::to_string(k) + " is empty");
    for (std::size_t i = 1; i < axis.size(); ++i) {
      if (!(axis[i - 1] < axis[i])) {
        throw InvalidArgument("lattice axis " + std::to_string(k) +
                              " is not strictly increasing");
      }
    }
    size_ *= axis.size();
  }
}

Lattice Lattice::Regular(std::span<const double> lo, std::span<const double> hi,
                         std::span<const std::size_t> steps) {
  if (lo.size() != hi.size() || lo.size() != steps.size()) {
    throw InvalidArgument("grid bounds and step counts differ in dimension");
  }
  std::vector<std::vector<double>> axes;
  for (std::size_t k = 0; k < lo.size(); ++k) {
    if (steps[k] < 2) throw InvalidArgument("grid needs at least 2 steps per dimension");
    if (!(lo[k] < hi[k])) throw InvalidArgument("grid minimum must be below its maximum");
    std::vector<double> axis(steps[k]);
    const double span = hi[k] - lo[k];
    const double last = static_cast<double>(steps[k] - 1);
    for (std::size_t i = 0; i < steps[k]; ++i) {
      axis[i] = lo[k] + span * (static_cast<double>(i) / last);
    }
    axis.back() = hi[k];
    axes.push_back(std::move(axis));
  }
  return Lattice(std::move(axes));
}

Lattice Lattice::FromPoints(const Matrix& points) {
  if (points.empty()) throw InvalidArgument("grid is empty");
  const std::size_t d = points.cols();
  std::vector<std::vector<double>> axes(d);
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<double> values = points.column(k);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    axes[k] = std::move(values);
  }
  if (d == 1) {
    for (std::size_t g = 1; g < points.rows(); ++g) {
      if (!(points(g - 1, 0) < points(g, 0))) {
        throw InvalidArgument("1-D grid is not strictly increasing");
      }
    }
    return Lattice(std::move(axes));
  }
  Lattice lattice(std::move(axes));
  if (lattice.size() != points.rows()) {
    throw InvalidArgument("grid is not a regular lattice");
  }
  for (std::size_t g = 0; g < points.rows(); ++g) {
    const std::vector<double> expected = lattice.Point(g);
    for (std::size_t k = 0; k < d; ++k) {
      if (expected[k] != points(g, k)) {
        throw InvalidArgument("grid is not a lattice in last-dimension-fastest order");
      }
    }
  }
  return lattice;
}

std::vector<double> Lattice::Point(std::size_t g) const {
  std::vector<double> point(axes_.size());
  for (std::size_t k = axes_.size(); k-- > 0;) {
    const std::size_t len = axes_[k].size();
    point[k] = axes_[k][g % len];
    g /= len;
  }
  return point;
}

Matrix Lattice::Points() const {
  Matrix points(size_, axes_.size());
  for (std::size_t g = 0; g < size_; ++g) {
    const std::vector<double> p = Point(g);
    std::copy(p.begin(), p.end(), points.row(g).begin());
  }
  return points;
}

std::vector<double> Lattice::TrapezoidWeights() const {
  std::vector<double> weights{1.0};
  for (const auto& axis : axes_) {
    const std::size_t n = axis.size();
    std::vector<double> axis_w(n, 0.0);
    if (n > 1) {
      axis_w.front() = (axis[1] - axis[0]) / 2.0;
      axis_w.back() = (axis[n - 1] - axis[n - 2]) / 2.0;
      for (std::size_t i = 1; i + 1 < n; ++i) axis_w[i] = (axis[i + 1] - axis[i - 1]) / 2.0;
    }
    std::vector<double> next;
    next.reserve(weights.size() * axis_w.size());
    for (double w : weights) {
      for (double a : axis_w) next.push_back(w * a);
    }
    weights = std::move(next);
  }
  return weights;
}

bool Lattice::Contains(std::span<const double> z) const {
  if (z.size() != axes_.size()) return false;
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (!(z[k] >= axes_[k].front() && z[k] <= axes_[k].back())) return false;
  }
  return true;
}

double Lattice::Volume() const {
  double v = 1.0;
  for (const auto& axis : axes_) v *= axis.back() - axis.front();
  return v;
}

}  // namespace cdeforest
