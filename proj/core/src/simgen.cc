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

#include "cdeforest/simgen.h"

#include <algorithm>
#include <cmath>

#include "cdeforest/density.h"
#include "cdeforest/error.h"
#include "cdeforest/rng.h"

namespace cdeforest {

namespace {

double RelevantMode(std::span<const double> x) {
  double sum = 0.0;
  for (std::size_t i = 0; i < kUnivariateRelevant; ++i) sum += x[i];
  return std::floor(sum);
}

}  // namespace

SimData GenerateUnivariate(const UnivariateSimConfig& config) {
  if (!(config.sigma > 0.0)) throw InvalidArgument("sigma must be positive");
  Rng rng = StreamFor(config.seed, 0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  std::normal_distribution<double> noise(0.0, config.sigma);

  SimData data{Matrix(config.n, kUnivariateCovariates), Matrix(config.n, 1)};
  for (std::size_t i = 0; i < config.n; ++i) {
    auto x = data.x.row(i);
    for (double& v : x) v = unit(rng);
    const double mode = RelevantMode(x);
    const double sign = coin(rng) ? 1.0 : -1.0;
    data.z(i, 0) = sign * mode + noise(rng);
  }
  return data;
}

double TrueDensityUnivariate(std::span<const double> x, double z, double sigma) {
  if (x.size() < kUnivariateRelevant) {
    throw InvalidArgument("univariate design needs at least 10 covariates");
  }
  const double mode = RelevantMode(x);
  return 0.5 * GaussianPdf(z, mode, sigma) + 0.5 * GaussianPdf(z, -mode, sigma);
}

SimData GenerateJoint(std::size_t n, std::uint64_t seed, JointZ2Law law) {
  Rng rng = StreamFor(seed, 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SimData data{Matrix(n, 1), Matrix(n, 2)};
  for (std::size_t i = 0; i < n; ++i) {
    const double x = unit(rng);
    const double z1 = x * unit(rng);
    const double u = unit(rng);
    const double z2 = law == JointZ2Law::kBetweenZ1AndX ? z1 + (x - z1) * u
                                                        : x + (1.0 - x) * u;
    data.x(i, 0) = x;
    data.z(i, 0) = z1;
    data.z(i, 1) = std::min(std::max(z2, z1), law == JointZ2Law::kBetweenZ1AndX ? x : 1.0);
  }
  return data;
}

}  // namespace cdeforest
