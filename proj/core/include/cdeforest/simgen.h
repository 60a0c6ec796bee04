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

#ifndef CDEFOREST_SIMGEN_H_
#define CDEFOREST_SIMGEN_H_

#include <cstddef>
#include <cstdint>
#include <span>

#include "cdeforest/matrix.h"

namespace cdeforest {

struct SimData {
  Matrix x;
  Matrix z;
};

// Ten relevant and ten irrelevant U(0,1) covariates; the response is a fair
// mixture of N(+m, sigma) and N(-m, sigma) with m = floor(x_1 + ... + x_10).
struct UnivariateSimConfig {
  std::size_t n = 1000;
  double sigma = 1.0;
  std::uint64_t seed = 0;
};

inline constexpr std::size_t kUnivariateRelevant = 10;
inline constexpr std::size_t kUnivariateCovariates = 20;

SimData GenerateUnivariate(const UnivariateSimConfig& config);

// Mixture density of the univariate design at (x, z). Only the first ten
// covariates matter.
double TrueDensityUnivariate(std::span<const double> x, double z, double sigma);

// Law of the second response in the joint design.
enum class JointZ2Law {
  kBetweenZ1AndX,  // z2 ~ U(z1, x)
  kXToOne,         // z2 ~ U(x, 1)
};

// x ~ U(0,1), z1 ~ U(0,x), z2 drawn per `law`.
SimData GenerateJoint(std::size_t n, std::uint64_t seed,
                      JointZ2Law law = JointZ2Law::kBetweenZ1AndX);

}  // namespace cdeforest

#endif  // CDEFOREST_SIMGEN_H_
