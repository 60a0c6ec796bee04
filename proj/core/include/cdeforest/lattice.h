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

#ifndef CDEFOREST_LATTICE_H_
#define CDEFOREST_LATTICE_H_

#include <cstddef>
#include <span>
#include <vector>

#include "cdeforest/matrix.h"

namespace cdeforest {

// Regular product grid over the response space: the outer product of one
// strictly increasing axis per dimension. Points are enumerated with the last
// dimension varying fastest.
class Lattice {
 public:
  Lattice() = default;
  // Throws InvalidArgument if any axis is empty or not strictly increasing.
  explicit Lattice(std::vector<std::vector<double>> axes);

  // `steps` evenly spaced points from lo to hi (inclusive) per dimension.
  static Lattice Regular(std::span<const double> lo, std::span<const double> hi,
                         std::span<const std::size_t> steps);

  // Recovers the axes of a G x d point matrix. Throws InvalidArgument when
  // the points are not a lattice in the canonical enumeration order (for
  // d == 1: when they are not strictly increasing).
  static Lattice FromPoints(const Matrix& points);

  std::size_t dim() const { return axes_.size(); }
  std::size_t size() const { return size_; }
  const std::vector<double>& axis(std::size_t k) const { return axes_[k]; }
  const std::vector<std::vector<double>>& axes() const { return axes_; }

  Matrix Points() const;
  // Coordinates of point g.
  std::vector<double> Point(std::size_t g) const;

  // Per-dimension trapezoid weights; the weight of point g is the product over
  // dimensions.
  std::vector<double> TrapezoidWeights() const;

  bool Contains(std::span<const double> z) const;
  // Product of per-axis spans (hi - lo).
  double Volume() const;

 private:
  std::vector<std::vector<double>> axes_;
  std::size_t size_ = 0;
};

}  // namespace cdeforest

#endif  // CDEFOREST_LATTICE_H_
