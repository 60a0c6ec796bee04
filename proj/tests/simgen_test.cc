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

#include <cmath>

#include "cdeforest/density.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace cdeforest {
namespace {

TEST(GenerateUnivariate, ShapeAndDeterminism) {
  const SimData a = GenerateUnivariate({50, 1.0, 7});
  EXPECT_EQ(a.x.rows(), 50);
  EXPECT_EQ(a.x.cols(), 20);
  EXPECT_EQ(a.z.cols(), 1);
  const SimData b = GenerateUnivariate({50, 1.0, 7});
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.z, b.z);
  EXPECT_NE(a.z, GenerateUnivariate({50, 1.0, 8}).z);
}

TEST(GenerateUnivariate, LargeSampleMoments) {
  const std::size_t n = 100000;
  const SimData data = GenerateUnivariate({n, 1.0, 1});
  double mean = 0.0;
  for (double z : data.z.data()) mean += z;
  mean /= n;
  EXPECT_NEAR(mean, 0.0, 0.03);

  // For modes >= 4 the sign of z identifies the mixture component.
  std::size_t nonzero = 0;
  std::size_t positive = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t k = 0; k < 10; ++k) sum += data.x(i, k);
    const double mode = std::floor(sum);
    EXPECT_GE(mode, 0.0);
    EXPECT_LE(mode, 10.0);
    if (mode >= 4) {
      ++nonzero;
      positive += data.z(i, 0) > 0 ? 1 : 0;
    }
  }
  EXPECT_NEAR(static_cast<double>(positive) / nonzero, 0.5, 0.006);

  for (std::size_t k = 10; k < 20; ++k) {
    double mx = 0.0, mz = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      mx += data.x(i, k);
      mz += data.z(i, 0);
    }
    mx /= n;
    mz /= n;
    double sxz = 0.0, sxx = 0.0, szz = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double dx = data.x(i, k) - mx;
      const double dz = data.z(i, 0) - mz;
      sxz += dx * dz;
      sxx += dx * dx;
      szz += dz * dz;
    }
    EXPECT_LT(std::abs(sxz / std::sqrt(sxx * szz)), 0.02) << "column " << k;
  }
}

TEST(TrueDensityUnivariate, Examples) {
  std::vector<double> x(20, 0.05);  // sum 0.5 -> mode 0
  for (double z : {-1.0, 0.0, 0.3}) {
    EXPECT_DOUBLE_EQ(TrueDensityUnivariate(x, z, 0.7), GaussianPdf(z, 0.0, 0.7));
  }
  std::fill(x.begin(), x.begin() + 10, 0.55);  // sum 5.5 -> mode 5
  EXPECT_NEAR(TrueDensityUnivariate(x, 0.0, 1.0), 1.4867195147342979e-06, 1e-20);
  const double integral = oracle::Trapezoid(
      [&](double z) { return TrueDensityUnivariate(x, z, 1.0); }, -5 - 6, 5 + 6, 10001);
  EXPECT_NEAR(integral, 1.0, 1e-6);
}

TEST(GenerateJoint, SupportAndMoments) {
  const std::size_t n = 100000;
  const SimData data = GenerateJoint(n, 5);
  double mean_z1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = data.x(i, 0), z1 = data.z(i, 0), z2 = data.z(i, 1);
    ASSERT_LE(0.0, z1);
    ASSERT_LE(z1, z2);
    ASSERT_LE(z2, x);
    ASSERT_LE(x, 1.0);
    mean_z1 += z1;
  }
  EXPECT_NEAR(mean_z1 / n, 0.25, 0.01);
  EXPECT_EQ(GenerateJoint(100, 5).z, GenerateJoint(100, 5).z);
}

TEST(GenerateJoint, AlternativeLaw) {
  const SimData data = GenerateJoint(2000, 6, JointZ2Law::kXToOne);
  for (std::size_t i = 0; i < data.x.rows(); ++i) {
    EXPECT_LE(data.z(i, 0), data.x(i, 0));
    EXPECT_LE(data.x(i, 0), data.z(i, 1));
    EXPECT_LE(data.z(i, 1), 1.0);
  }
}

}  // namespace
}  // namespace cdeforest
