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

#ifndef CDEFOREST_BASIS_H_
#define CDEFOREST_BASIS_H_

#include <cstddef>
#include <span>
#include <vector>

#include "cdeforest/matrix.h"

namespace cdeforest {

// Orthonormal cosine basis on [0,1]:
//   phi_0(z) = 1,  phi_j(z) = sqrt(2) cos(pi j z)  for j >= 1.
// Multivariate responses use the tensor product of the univariate basis.
struct BasisSpec {
  int n_basis = 15;  // functions per response dimension, phi_0 included
  int dim = 1;       // response dimensionality, 1..3

  // Throws InvalidArgument unless n_basis >= 2 and dim in {1, 2, 3}.
  void Validate() const;
  // n_basis^dim.
  std::size_t size() const;
};

// Returns [phi_0(z), ..., phi_{n_basis-1}(z)]. Throws DomainError when z is
// outside [0,1] and InvalidArgument when n_basis < 1.
std::vector<double> CosineBasis(double z, int n_basis);

// Writes phi_0(z)..phi_{out.size()-1}(z) into `out` without range checks.
void CosineBasisInto(double z, std::span<double> out);

// Tensor-product basis, flattened lexicographically with the last response
// dimension varying fastest. Output length is spec.size().
std::vector<double> TensorBasis(std::span<const double> z, const BasisSpec& spec);

// Per-dimension (min, max) of the training responses.
struct ResponseBounds {
  std::vector<double> lo;
  std::vector<double> hi;

  std::size_t dim() const { return lo.size(); }
  bool operator==(const ResponseBounds&) const = default;
};

struct RescaledResponse {
  Matrix values;  // in [0,1]
  ResponseBounds bounds;
};

// Min-max rescales each response column to [0,1]. Throws DegenerateData when
// a column is constant and InvalidArgument when fewer than two rows are given.
RescaledResponse RescaleResponse(const Matrix& z);

// Applies stored bounds; results are clamped to [0,1].
Matrix RescaleResponse(const Matrix& z, const ResponseBounds& bounds);

// Evaluates the tensor basis on every row of `rescaled` and drops the constant
// function: the result is n x (spec.size() - 1).
Matrix NonConstantBasisMatrix(const Matrix& rescaled, const BasisSpec& spec);

}  // namespace cdeforest

#endif  // CDEFOREST_BASIS_H_
