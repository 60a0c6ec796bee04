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

#include "cdeforest/basis.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cdeforest/error.h"

namespace cdeforest {

void BasisSpec::Validate() const {
  if (n_basis < 2) {
    throw InvalidArgument("n_basis must be at least 2, got " + std::to_string(n_basis));
  }
  if (dim < 1 || dim > 3) {
    throw InvalidArgument("response dimension must be 1, 2 or 3, got " +
                          std::to_string(dim));
  }
}

std::size_t BasisSpec::size() const {
  std::size_t total = 1;
  for (int k = 0; k < dim; ++k) total *= static_cast<std::size_t>(n_basis);
  return total;
}

void CosineBasisInto(double z, std::span<double> out) {
  if (out.empty()) return;
  out[0] = 1.0;
  const double angle = std::numbers::pi * z;
  for (std::size_t j = 1; j < out.size(); ++j) {
    out[j] = std::numbers::sqrt2 * std::cos(angle * static_cast<double>(j));
  }
}

std::vector<double> CosineBasis(double z, int n_basis) {
  if (n_basis < 1) throw InvalidArgument("n_basis must be positive");
  if (!(z >= 0.0 && z <= 1.0)) {
    throw DomainError("cosine basis argument " + std::to_string(z) +
                      " outside [0,1]; responses must be rescaled first");
  }
  std::vector<double> out(static_cast<std::size_t>(n_basis));
  CosineBasisInto(z, out);
  return out;
}

std::vector<double> TensorBasis(std::span<const double> z, const BasisSpec& spec) {
  if (spec.n_basis < 1 || spec.dim < 1) throw InvalidArgument("invalid basis spec");
  if (z.size() != static_cast<std::size_t>(spec.dim)) {
    throw InvalidArgument("tensor basis expects " + std::to_string(spec.dim) +
                          " coordinates, got " + std::to_string(z.size()));
  }
  // Builds the product one dimension at a time; appending dimension k as the
  // fastest-varying index keeps lexicographic order.
  std::vector<double> out{1.0};
  for (double zk : z) {
    const std::vector<double> phi = CosineBasis(zk, spec.n_basis);
    std::vector<double> next;
    next.reserve(out.size() * phi.size());
    for (double prefix : out) {
      for (double p : phi) next.push_back(prefix * p);
    }
    out = std::move(next);
  }
  return out;
}

RescaledResponse RescaleResponse(const Matrix& z) {
  if (z.rows() < 2) throw InvalidArgument("rescaling needs at least two responses");
  ResponseBounds bounds;
  for (std::size_t k = 0; k < z.cols(); ++k) {
    double lo = z(0, k);
    double hi = z(0, k);
    for (std::size_t i = 1; i < z.rows(); ++i) {
      lo = std::min(lo, z(i, k));
      hi = std::max(hi, z(i, k));
    }
    if (!(hi > lo)) {
      throw DegenerateData("response column " + std::to_string(k) +
                           " is constant; its density cannot be estimated");
    }
    bounds.lo.push_back(lo);
    bounds.hi.push_back(hi);
  }
  Matrix values = RescaleResponse(z, bounds);
  return {std::move(values), std::move(bounds)};
}

Matrix RescaleResponse(const Matrix& z, const ResponseBounds& bounds) {
  if (bounds.dim() != z.cols()) {
    throw InvalidArgument("bounds have " + std::to_string(bounds.dim()) +
                          " dimensions but responses have " + std::to_string(z.cols()));
  }
  Matrix out(z.rows(), z.cols());
  for (std::size_t i = 0; i < z.rows(); ++i) {
    for (std::size_t k = 0; k < z.cols(); ++k) {
      const double scaled = (z(i, k) - bounds.lo[k]) / (bounds.hi[k] - bounds.lo[k]);
      out(i, k) = std::clamp(scaled, 0.0, 1.0);
    }
  }
  return out;
}

Matrix NonConstantBasisMatrix(const Matrix& rescaled, const BasisSpec& spec) {
  spec.Validate();
  const std::size_t width = spec.size() - 1;
  Matrix out(rescaled.rows(), width);
  for (std::size_t i = 0; i < rescaled.rows(); ++i) {
    const std::vector<double> row = TensorBasis(rescaled.row(i), spec);
    std::copy(row.begin() + 1, row.end(), out.row(i).begin());
  }
  return out;
}

}  // namespace cdeforest
