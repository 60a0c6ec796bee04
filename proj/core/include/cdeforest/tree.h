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

#ifndef CDEFOREST_TREE_H_
#define CDEFOREST_TREE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cdeforest/matrix.h"
#include "cdeforest/rng.h"

namespace cdeforest {

enum class SplitCriterion {
  kCde,  // orthogonal-series CDE loss
  kMse,  // within-child squared error (regression baseline)
};

std::string_view CriterionName(SplitCriterion criterion);
// Accepts "cde" or "mse"; throws InvalidArgument otherwise.
SplitCriterion ParseCriterion(std::string_view name);

struct TreeParams {
  int node_size = 5;  // minimum leaf membership, counted with multiplicity
  int mtry = 1;       // covariates sampled per node
  SplitCriterion criterion = SplitCriterion::kCde;
  int n_basis = 15;
};

// Rows with x[feature] <= threshold go left, the rest go right.
struct SplitRule {
  int feature = 0;
  double threshold = 0.0;

  bool GoesLeft(std::span<const double> x) const { return x[feature] <= threshold; }
  bool operator==(const SplitRule&) const = default;
};

struct SplitCandidate {
  SplitRule rule;
  double score = 0.0;
};

// One in-bag training row stored in a leaf, with its bootstrap multiplicity.
struct LeafEntry {
  std::uint32_t row = 0;
  std::uint32_t count = 0;
  bool operator==(const LeafEntry&) const = default;
};

struct TreeNode {
  SplitRule rule;           // meaningful for internal nodes only
  std::int32_t left = -1;   // child node ids; -1 on leaves
  std::int32_t right = -1;
  std::uint32_t entries_begin = 0;  // leaf members are entries()[begin, end)
  std::uint32_t entries_end = 0;
  std::uint32_t leaf_size = 0;      // sum of member counts

  bool is_leaf() const { return left < 0; }
  bool operator==(const TreeNode&) const = default;
};

// A grown tree. Node 0 is the root; nodes are stored in pre-order.
class Tree {
 public:
  Tree() = default;

  // Assembles a tree from raw parts, validating child links, entry ranges and
  // leaf sizes. Throws InvalidArgument on any inconsistency.
  Tree(std::vector<TreeNode> nodes, std::vector<LeafEntry> entries);

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const std::vector<LeafEntry>& entries() const { return entries_; }

  // Node id of the leaf whose region contains `x`.
  std::size_t LeafOf(std::span<const double> x) const;
  std::span<const LeafEntry> LeafMembers(std::size_t node) const;

  std::size_t num_leaves() const;
  std::size_t depth() const;

  bool operator==(const Tree&) const = default;

 private:
  std::vector<TreeNode> nodes_;
  std::vector<LeafEntry> entries_;
};

// Split score of the orthogonal-series criterion for a node whose rows are
// sorted by the candidate covariate, splitting after the first k rows:
//   sum_j S_Lj^2 / k + sum_j S_Rj^2 / (n - k)
// with S the per-child column sums of the non-constant basis values. Larger is
// better. Evaluated directly in O(n m).
double SplitScoreCde(const Matrix& sorted_basis_rows, std::size_t k);

// Scores for every k in 1..n-1 via running sums, O(n m) in total. Entry k-1
// holds the score for splitting after k rows.
std::vector<double> SplitScoresCde(const Matrix& sorted_basis_rows);

// n_L zbar_L^2 + n_R zbar_R^2 for a univariate response sorted by covariate.
double SplitScoreMse(std::span<const double> sorted_z, std::size_t k);
std::vector<double> SplitScoresMse(std::span<const double> sorted_z);

// Columns the split search sums over: the non-constant tensor basis for kCde,
// the rescaled response for kMse. Throws Unsupported for kMse with d > 1.
Matrix SplitTargets(const Matrix& rescaled_z, SplitCriterion criterion, int n_basis);

// Best split of the node holding `members` (training rows, repeated for
// bootstrap multiplicity). Samples params.mtry distinct covariates, scans
// midpoints between consecutive distinct values, and keeps candidates whose
// children both hold at least node_size members. Ties (scores equal to a
// relative 1e-12) go to the lowest feature index, then the lowest threshold.
std::optional<SplitCandidate> BestSplit(const Matrix& x, const Matrix& targets,
                                        std::span<const std::uint32_t> members,
                                        const TreeParams& params, Rng& rng);

// Grows a tree on the in-bag multiset. Nodes with fewer than 2 * node_size
// members become leaves.
Tree BuildTree(const Matrix& x, const Matrix& targets,
               std::vector<std::uint32_t> in_bag, const TreeParams& params,
               Rng& rng);

}  // namespace cdeforest

#endif  // CDEFOREST_TREE_H_
