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

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "cdeforest/error.h"
#include "cdeforest/parallel.h"

namespace cdeforest {

namespace {

void Require(bool ok, const std::string& message) {
  if (!ok) throw InvalidArgument(message);
}

void ValidateParams(const ForestParams& params, std::size_t p, std::size_t d) {
  Require(params.n_trees >= 1, "n_trees must be at least 1, got " +
                                   std::to_string(params.n_trees));
  Require(params.node_size >= 1, "node_size must be at least 1, got " +
                                     std::to_string(params.node_size));
  Require(params.mtry >= 1 && static_cast<std::size_t>(params.mtry) <= p,
          "mtry must lie in 1.." + std::to_string(p) + ", got " +
              std::to_string(params.mtry));
  Require(params.n_basis >= 2, "n_basis must be at least 2, got " +
                                   std::to_string(params.n_basis));
  if (params.criterion == SplitCriterion::kMse && d != 1) {
    throw Unsupported("criterion mse requires a univariate response, got " +
                      std::to_string(d) + " response columns");
  }
  BasisSpec{params.n_basis, static_cast<int>(d)}.Validate();
}

void RequireFinite(const Matrix& m, const std::string& name) {
  for (double v : m.data()) {
    Require(std::isfinite(v), name + " contains a non-finite value");
  }
}

}  // namespace

std::vector<std::uint32_t> DrawInBag(Rng& rng, std::size_t n, bool bootstrap) {
  std::vector<std::uint32_t> rows(n);
  if (!bootstrap) {
    for (std::size_t i = 0; i < n; ++i) rows[i] = static_cast<std::uint32_t>(i);
    return rows;
  }
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(n - 1));
  for (auto& r : rows) r = pick(rng);
  return rows;
}

Forest Forest::Fit(const Matrix& x, const Matrix& z, const ForestParams& params,
                   const FitOptions& options) {
  Require(x.rows() == z.rows(), "x has " + std::to_string(x.rows()) + " rows but z has " +
                                    std::to_string(z.rows()));
  Require(x.rows() >= 2, "training set needs at least 2 rows");
  Require(x.rows() < std::numeric_limits<std::uint32_t>::max(), "training set too large");
  Require(x.cols() >= 1, "x has no covariate columns");
  Require(z.cols() >= 1, "z has no response columns");
  ValidateParams(params, x.cols(), z.cols());
  RequireFinite(x, "x");
  RequireFinite(z, "z");

  RescaledResponse rescaled = RescaleResponse(z);
  const Matrix targets = SplitTargets(rescaled.values, params.criterion, params.n_basis);
  const TreeParams tree_params = params.tree_params();

  Forest forest;
  forest.params_ = params;
  forest.n_covariates_ = x.cols();
  forest.z_train_ = z;
  forest.bounds_ = std::move(rescaled.bounds);
  forest.trees_.resize(static_cast<std::size_t>(params.n_trees));
  ParallelFor(forest.trees_.size(), options.threads, [&](std::size_t t) {
    Rng rng = StreamFor(params.seed, t);
    std::vector<std::uint32_t> in_bag = DrawInBag(rng, x.rows(), params.bootstrap);
    forest.trees_[t] = BuildTree(x, targets, std::move(in_bag), tree_params, rng);
  });
  return forest;
}

Forest::Forest(ForestParams params, std::size_t n_covariates, Matrix z_train,
               ResponseBounds bounds, std::vector<Tree> trees, ColumnNames names)
    : params_(params),
      n_covariates_(n_covariates),
      z_train_(std::move(z_train)),
      bounds_(std::move(bounds)),
      trees_(std::move(trees)) {
  Require(n_covariates_ >= 1, "n_covariates must be positive");
  Require(z_train_.rows() >= 1 && z_train_.cols() >= 1, "z_train is empty");
  ValidateParams(params_, n_covariates_, z_train_.cols());
  Require(trees_.size() == static_cast<std::size_t>(params_.n_trees),
          "forest holds " + std::to_string(trees_.size()) + " trees but n_trees is " +
              std::to_string(params_.n_trees));
  Require(bounds_.lo.size() == z_train_.cols() && bounds_.hi.size() == z_train_.cols(),
          "rescale bounds do not match the response dimension");
  for (std::size_t k = 0; k < bounds_.dim(); ++k) {
    Require(bounds_.lo[k] < bounds_.hi[k], "rescale bounds are not increasing");
  }
  for (const Tree& tree : trees_) {
    for (const TreeNode& node : tree.nodes()) {
      Require(node.is_leaf() ||
                  static_cast<std::size_t>(node.rule.feature) < n_covariates_,
              "split feature out of range");
    }
    for (const LeafEntry& e : tree.entries()) {
      Require(e.row < z_train_.rows(), "leaf member row out of range");
    }
  }
  set_column_names(std::move(names));
}

void Forest::set_column_names(ColumnNames names) {
  Require(names.covariates.empty() || names.covariates.size() == n_covariates_,
          "covariate name count does not match the covariate count");
  Require(names.responses.empty() || names.responses.size() == z_train_.cols(),
          "response name count does not match the response dimension");
  names_ = std::move(names);
}

void Forest::CheckQuery(std::span<const double> x) const {
  Require(x.size() == n_covariates_, "query has " + std::to_string(x.size()) +
                                         " covariates, model expects " +
                                         std::to_string(n_covariates_));
}

std::vector<double> Forest::Weights(std::span<const double> x) const {
  CheckQuery(x);
  std::vector<double> w(z_train_.rows(), 0.0);
  for (const Tree& tree : trees_) {
    const std::size_t leaf = tree.LeafOf(x);
    const double inv_size = 1.0 / static_cast<double>(tree.nodes()[leaf].leaf_size);
    for (const LeafEntry& e : tree.LeafMembers(leaf)) {
      w[e.row] += static_cast<double>(e.count) * inv_size;
    }
  }
  const double inv_trees = 1.0 / static_cast<double>(trees_.size());
  double total = 0.0;
  for (double& wi : w) {
    wi *= inv_trees;
    total += wi;
  }
  if (total > 0.0) {
    for (double& wi : w) wi /= total;
  }
  return w;
}

std::vector<double> Forest::PredictDensityValues(std::span<const double> x,
                                                 const Lattice& grid,
                                                 const BandwidthSpec& bandwidth) const {
  const std::vector<double> w = Weights(x);
  const AdaptiveBandwidth h = ResolveBandwidth(bandwidth, z_train_, w);
  return WeightedKdeOnLattice(z_train_, w, grid, h.h);
}

DensityEstimate Forest::PredictDensity(std::span<const double> x, const Lattice& grid,
                                       const BandwidthSpec& bandwidth) const {
  const std::vector<double> w = Weights(x);
  const AdaptiveBandwidth h = ResolveBandwidth(bandwidth, z_train_, w);
  DensityEstimate estimate;
  estimate.grid = grid.Points();
  estimate.values = WeightedKdeOnLattice(z_train_, w, grid, h.h);
  estimate.bandwidth = h.h;
  estimate.bandwidth_fallback = h.fallback;
  return estimate;
}

}  // namespace cdeforest
