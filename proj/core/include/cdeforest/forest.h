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

#ifndef CDEFOREST_FOREST_H_
#define CDEFOREST_FOREST_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cdeforest/basis.h"
#include "cdeforest/density.h"
#include "cdeforest/lattice.h"
#include "cdeforest/matrix.h"
#include "cdeforest/rng.h"
#include "cdeforest/tree.h"

namespace cdeforest {

struct ForestParams {
  int n_trees = 100;
  int node_size = 5;
  int mtry = 1;
  int n_basis = 15;
  SplitCriterion criterion = SplitCriterion::kCde;
  bool bootstrap = true;
  std::uint64_t seed = 0;

  TreeParams tree_params() const { return {node_size, mtry, criterion, n_basis}; }
  bool operator==(const ForestParams&) const = default;
};

struct FitOptions {
  int threads = 1;
};

// Draws the in-bag rows of one tree: n draws with replacement, or 0..n-1 when
// bootstrapping is off. Advances `rng`.
std::vector<std::uint32_t> DrawInBag(Rng& rng, std::size_t n, bool bootstrap);

// Optional covariate and response column names stored with a model.
struct ColumnNames {
  std::vector<std::string> covariates;
  std::vector<std::string> responses;
  bool operator==(const ColumnNames&) const = default;
};

class Forest {
 public:
  // Trains n_trees trees. Tree t draws from StreamFor(seed, t): first its
  // in-bag sample, then its per-node feature subsets.
  static Forest Fit(const Matrix& x, const Matrix& z, const ForestParams& params,
                    const FitOptions& options = {});

  // Reassembles a forest from persisted parts; validates consistency.
  Forest(ForestParams params, std::size_t n_covariates, Matrix z_train,
         ResponseBounds bounds, std::vector<Tree> trees, ColumnNames names = {});

  // Per-training-row weights for query `x`: the tree average of
  // (multiplicity in the query's leaf) / (leaf size), normalised to sum to 1.
  std::vector<double> Weights(std::span<const double> x) const;

  // Weighted KDE of the training responses on `grid`, in response units.
  DensityEstimate PredictDensity(std::span<const double> x, const Lattice& grid,
                                 const BandwidthSpec& bandwidth) const;
  // Values only; skips materialising the grid points.
  std::vector<double> PredictDensityValues(std::span<const double> x,
                                           const Lattice& grid,
                                           const BandwidthSpec& bandwidth) const;

  const ForestParams& params() const { return params_; }
  std::size_t n_covariates() const { return n_covariates_; }
  std::size_t n_train() const { return z_train_.rows(); }
  std::size_t response_dim() const { return z_train_.cols(); }
  const Matrix& z_train() const { return z_train_; }
  const ResponseBounds& bounds() const { return bounds_; }
  const std::vector<Tree>& trees() const { return trees_; }
  const ColumnNames& column_names() const { return names_; }
  void set_column_names(ColumnNames names);

 private:
  Forest() = default;
  void CheckQuery(std::span<const double> x) const;

  ForestParams params_;
  std::size_t n_covariates_ = 0;
  Matrix z_train_;
  ResponseBounds bounds_;
  std::vector<Tree> trees_;
  ColumnNames names_;
};

}  // namespace cdeforest

#endif  // CDEFOREST_FOREST_H_
