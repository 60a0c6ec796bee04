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

#include "cdeforest/forest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "cdeforest/error.h"
#include "cdeforest/forest_io.h"
#include "cdeforest/simgen.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace cdeforest {
namespace {

constexpr double kPeak02 = 1.9947114020071635;  // 1 / (0.2 sqrt(2 pi))

SimData SmallData(std::size_t n, std::uint64_t seed) {
  return GenerateUnivariate({n, 1.0, seed});
}

Lattice Axis(double lo, double hi, std::size_t steps) {
  const double l[] = {lo};
  const double h[] = {hi};
  const std::size_t s[] = {steps};
  return Lattice::Regular(l, h, s);
}

TEST(Fit, NodeSizeAtLeastNGivesSingleLeafTrees) {
  const SimData data = SmallData(50, 1);
  ForestParams params;
  params.n_trees = 7;
  params.node_size = 50;
  params.mtry = 4;
  const Forest forest = Forest::Fit(data.x, data.z, params);
  ASSERT_EQ(forest.trees().size(), 7);
  for (const Tree& tree : forest.trees()) EXPECT_EQ(tree.nodes().size(), 1);
}

TEST(Fit, DeterministicAcrossRunsAndThreads) {
  const SimData data = SmallData(300, 2);
  ForestParams params;
  params.n_trees = 12;
  params.mtry = 4;
  params.seed = 1234;
  const std::string a = SaveForest(Forest::Fit(data.x, data.z, params, {1}));
  const std::string b = SaveForest(Forest::Fit(data.x, data.z, params, {1}));
  const std::string c = SaveForest(Forest::Fit(data.x, data.z, params, {4}));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  params.seed = 1235;
  EXPECT_NE(a, SaveForest(Forest::Fit(data.x, data.z, params)));
}

TEST(Fit, RejectsInvalidInput) {
  const SimData data = SmallData(40, 3);
  ForestParams params;
  params.mtry = 4;
  EXPECT_THROW(Forest::Fit(data.x, Matrix(39, 1, 0.0), params), InvalidArgument);

  ForestParams bad = params;
  bad.mtry = 21;
  EXPECT_THROW(Forest::Fit(data.x, data.z, bad), InvalidArgument);
  bad = params;
  bad.n_trees = 0;
  EXPECT_THROW(Forest::Fit(data.x, data.z, bad), InvalidArgument);
  bad = params;
  bad.node_size = 0;
  EXPECT_THROW(Forest::Fit(data.x, data.z, bad), InvalidArgument);
  bad = params;
  bad.n_basis = 1;
  EXPECT_THROW(Forest::Fit(data.x, data.z, bad), InvalidArgument);

  EXPECT_THROW(Forest::Fit(data.x, Matrix(40, 1, 2.5), params), DegenerateData);

  Matrix two(40, 2);
  for (std::size_t i = 0; i < 40; ++i) two(i, 0) = two(i, 1) = static_cast<double>(i);
  bad = params;
  bad.criterion = SplitCriterion::kMse;
  EXPECT_THROW(Forest::Fit(data.x, two, bad), Unsupported);
  EXPECT_THROW(Forest::Fit(data.x, Matrix(40, 4, 1.0), params), InvalidArgument);

  Matrix x = data.x;
  x(3, 3) = std::nan("");
  EXPECT_THROW(Forest::Fit(x, data.z, params), InvalidArgument);
}

TEST(Weights, SingleLeafWithoutBootstrapIsUniform) {
  const SimData data = SmallData(25, 4);
  ForestParams params;
  params.n_trees = 1;
  params.node_size = 25;
  params.bootstrap = false;
  const Forest forest = Forest::Fit(data.x, data.z, params);
  const auto w = forest.Weights(data.x.row(3));
  for (double wi : w) EXPECT_DOUBLE_EQ(wi, 1.0 / 25);
}

TEST(Weights, TwoTreeAverage) {
  // Tree A: singleton leaf {0}. Tree B: one leaf holding {0, 1}.
  ForestParams params;
  params.n_trees = 2;
  params.node_size = 1;
  params.mtry = 1;
  std::vector<Tree> trees;
  trees.emplace_back(std::vector<TreeNode>{{{}, -1, -1, 0, 1, 1}},
                     std::vector<LeafEntry>{{0, 1}});
  trees.emplace_back(std::vector<TreeNode>{{{}, -1, -1, 0, 2, 2}},
                     std::vector<LeafEntry>{{0, 1}, {1, 1}});
  const Forest forest(params, 1, Matrix::FromRows({{0.0}, {1.0}}),
                      ResponseBounds{{0.0}, {1.0}}, std::move(trees));
  const std::vector<double> q{0.3};
  const auto w = forest.Weights(q);
  EXPECT_DOUBLE_EQ(w[0], 0.75);
  EXPECT_DOUBLE_EQ(w[1], 0.25);
}

TEST(Weights, MatchCoMembershipOracle) {
  const SimData data = SmallData(100, 5);
  ForestParams params;
  params.n_trees = 25;
  params.mtry = 4;
  params.node_size = 3;
  params.seed = 77;
  const Forest forest = Forest::Fit(data.x, data.z, params);
  std::mt19937_64 rng(6);
  const Matrix queries = oracle::RandomMatrix(20, 20, rng);
  for (std::size_t q = 0; q < queries.rows(); ++q) {
    const auto w = forest.Weights(queries.row(q));
    const auto expected = oracle::CoMembershipWeights(forest, data.x, queries.row(q));
    double total = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      EXPECT_NEAR(w[i], expected[i], 1e-12);
      EXPECT_GE(w[i], 0.0);
      total += w[i];
    }
    EXPECT_NEAR(total, 1.0, 1e-10);
  }
}

TEST(Weights, InvariantToMonotoneCovariateTransform) {
  const SimData data = SmallData(200, 8);
  Matrix transformed = data.x;
  for (double& v : transformed.data()) v = std::exp(3.0 * v) + v * v * v;
  ForestParams params;
  params.n_trees = 10;
  params.mtry = 4;
  params.seed = 9;
  params.bootstrap = false;
  const Forest a = Forest::Fit(data.x, data.z, params);
  const Forest b = Forest::Fit(transformed, data.z, params);
  for (std::size_t t = 0; t < a.trees().size(); ++t) {
    EXPECT_EQ(a.trees()[t].entries(), b.trees()[t].entries());
  }
  for (std::size_t q = 0; q < 40; ++q) {
    EXPECT_EQ(a.Weights(data.x.row(q)), b.Weights(transformed.row(q)));
  }
}

TEST(Weights, RowPermutationPreservesLeafPatterns) {
  const SimData data = SmallData(60, 10);
  std::vector<std::size_t> perm(60);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), std::mt19937_64(3));
  Matrix px(60, data.x.cols());
  Matrix pz(60, 1);
  for (std::size_t i = 0; i < 60; ++i) {
    std::copy(data.x.row(perm[i]).begin(), data.x.row(perm[i]).end(), px.row(i).begin());
    pz(i, 0) = data.z(perm[i], 0);
  }
  ForestParams params;
  params.n_trees = 5;
  params.mtry = 20;
  params.node_size = 2;
  params.bootstrap = false;
  const Forest a = Forest::Fit(data.x, data.z, params);
  const Forest b = Forest::Fit(px, pz, params);
  auto patterns = [](const Forest& f, auto to_original) {
    std::multiset<std::set<std::size_t>> out;
    for (const Tree& tree : f.trees()) {
      for (std::size_t id = 0; id < tree.nodes().size(); ++id) {
        if (!tree.nodes()[id].is_leaf()) continue;
        std::set<std::size_t> members;
        for (const LeafEntry& e : tree.LeafMembers(id)) members.insert(to_original(e.row));
        out.insert(members);
      }
    }
    return out;
  };
  EXPECT_EQ(patterns(a, [](std::size_t r) { return r; }),
            patterns(b, [&](std::size_t r) { return perm[r]; }));
}

TEST(PredictDensity, ConcentratedWeightGivesKernelPeak) {
  ForestParams params;
  params.n_trees = 1;
  params.node_size = 1;
  std::vector<Tree> trees;
  trees.emplace_back(std::vector<TreeNode>{{{}, -1, -1, 0, 1, 1}},
                     std::vector<LeafEntry>{{0, 1}});
  const Forest forest(params, 1, Matrix::FromRows({{0.7}, {3.0}}),
                      ResponseBounds{{0.7}, {3.0}}, std::move(trees));
  const std::vector<std::vector<double>> axes{{0.3, 0.7, 1.1}};
  const std::vector<double> q{0.0};
  const DensityEstimate est = forest.PredictDensity(q, Lattice(axes), BandwidthSpec::Fixed(0.2));
  EXPECT_NEAR(est.values[1], kPeak02, 1e-12);
  EXPECT_EQ(est.bandwidth, std::vector<double>{0.2});
  EXPECT_THROW(forest.PredictDensity(q, Lattice(axes), BandwidthSpec::Fixed(0.0)),
               InvalidArgument);
  EXPECT_THROW(forest.PredictDensity(q, Lattice(axes), BandwidthSpec::Fixed(-1.0)),
               InvalidArgument);
}

TEST(PredictDensity, UniformWeightsReduceToPlainKde) {
  const SimData data = SmallData(30, 11);
  ForestParams params;
  params.n_trees = 3;
  params.node_size = 30;
  params.bootstrap = false;
  const Forest forest = Forest::Fit(data.x, data.z, params);
  const Lattice grid = Axis(-8, 8, 101);
  const auto values = forest.PredictDensityValues(data.x.row(0), grid, BandwidthSpec::Fixed(0.5));
  for (std::size_t g = 0; g < grid.size(); ++g) {
    double plain = 0.0;
    for (std::size_t i = 0; i < 30; ++i) {
      const double u = (grid.axis(0)[g] - data.z(i, 0)) / 0.5;
      plain += std::exp(-0.5 * u * u) / (0.5 * std::sqrt(2 * M_PI));
    }
    EXPECT_NEAR(values[g], plain / 30, 1e-12);
  }
}

TEST(PredictDensity, IntegratesToOneOnWideGrid) {
  const SimData data = SmallData(300, 12);
  ForestParams params;
  params.n_trees = 20;
  params.mtry = 4;
  const Forest forest = Forest::Fit(data.x, data.z, params);
  const double h = 0.2;
  const auto zcol = data.z.column(0);
  const auto [lo, hi] = std::minmax_element(zcol.begin(), zcol.end());
  const Lattice grid = Axis(*lo - 4 * h, *hi + 4 * h, 1000);
  for (std::size_t q = 0; q < 10; ++q) {
    const auto values = forest.PredictDensityValues(data.x.row(q), grid, BandwidthSpec::Fixed(h));
    double integral = 0.0;
    for (std::size_t g = 1; g < grid.size(); ++g) {
      integral += (grid.axis(0)[g] - grid.axis(0)[g - 1]) * (values[g] + values[g - 1]) / 2;
    }
    EXPECT_GE(integral, 0.99);
    EXPECT_LE(integral, 1.01);
    for (double v : values) EXPECT_GE(v, 0.0);
  }
}

TEST(PredictDensity, InvariantToTreeOrder) {
  const SimData data = SmallData(150, 13);
  ForestParams params;
  params.n_trees = 15;
  params.mtry = 4;
  const Forest forest = Forest::Fit(data.x, data.z, params);
  std::vector<Tree> reversed(forest.trees().rbegin(), forest.trees().rend());
  const Forest flipped(forest.params(), forest.n_covariates(), forest.z_train(),
                       forest.bounds(), std::move(reversed));
  const Lattice grid = Axis(-10, 10, 200);
  for (std::size_t q = 0; q < 10; ++q) {
    const auto a = forest.PredictDensityValues(data.x.row(q), grid, BandwidthSpec::Fixed(0.3));
    const auto b = flipped.PredictDensityValues(data.x.row(q), grid, BandwidthSpec::Fixed(0.3));
    for (std::size_t g = 0; g < a.size(); ++g) EXPECT_NEAR(a[g], b[g], 1e-12);
  }
}

TEST(PredictDensity, JointResponseWithAdaptiveBandwidth) {
  const SimData data = GenerateJoint(400, 3);
  ForestParams params;
  params.n_trees = 10;
  params.node_size = 20;
  params.mtry = 1;
  const Forest forest = Forest::Fit(data.x, data.z, params);
  EXPECT_EQ(forest.response_dim(), 2);
  const std::vector<std::vector<double>> axes{{-0.5, 0.0, 0.5, 1.0, 1.5}, {-0.5, 0.0, 0.5, 1.0, 1.5}};
  const std::vector<double> q{0.5};
  const DensityEstimate est = forest.PredictDensity(q, Lattice(axes), BandwidthSpec::Adaptive());
  EXPECT_EQ(est.grid.rows(), 25);
  EXPECT_EQ(est.bandwidth.size(), 2);
  EXPECT_FALSE(est.bandwidth_fallback);
  for (double h : est.bandwidth) EXPECT_GT(h, 0.0);
}

TEST(Weights, RejectsWrongQueryWidth) {
  const SimData data = SmallData(30, 14);
  ForestParams params;
  params.n_trees = 2;
  const Forest forest = Forest::Fit(data.x, data.z, params);
  const std::vector<double> q(19, 0.5);
  EXPECT_THROW(forest.Weights(q), InvalidArgument);
}

}  // namespace
}  // namespace cdeforest
