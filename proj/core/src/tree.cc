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

#include "cdeforest/tree.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "cdeforest/basis.h"
#include "cdeforest/error.h"

namespace cdeforest {

std::string_view CriterionName(SplitCriterion criterion) {
  return criterion == SplitCriterion::kCde ? "cde" : "mse";
}

SplitCriterion ParseCriterion(std::string_view name) {
  if (name == "cde") return SplitCriterion::kCde;
  if (name == "mse") return SplitCriterion::kMse;
  throw InvalidArgument("unknown split criterion '" + std::string(name) +
                        "' (expected cde or mse)");
}

Tree::Tree(std::vector<TreeNode> nodes, std::vector<LeafEntry> entries)
    : nodes_(std::move(nodes)), entries_(std::move(entries)) {
  if (nodes_.empty()) throw InvalidArgument("tree has no nodes");
  std::vector<bool> referenced(nodes_.size(), false);
  for (std::size_t id = 0; id < nodes_.size(); ++id) {
    const TreeNode& node = nodes_[id];
    const std::string where = "tree node " + std::to_string(id);
    if (node.is_leaf()) {
      if (node.right >= 0) throw InvalidArgument(where + ": leaf with a right child");
      if (node.entries_begin > node.entries_end || node.entries_end > entries_.size()) {
        throw InvalidArgument(where + ": leaf entry range out of bounds");
      }
      std::uint64_t size = 0;
      for (std::uint32_t e = node.entries_begin; e < node.entries_end; ++e) {
        size += entries_[e].count;
      }
      if (size == 0 || size != node.leaf_size) {
        throw InvalidArgument(where + ": leaf size does not match its members");
      }
      continue;
    }
    if (node.rule.feature < 0) throw InvalidArgument(where + ": negative feature index");
    for (std::int32_t child : {node.left, node.right}) {
      if (child <= static_cast<std::int32_t>(id) ||
          static_cast<std::size_t>(child) >= nodes_.size() || referenced[child]) {
        throw InvalidArgument(where + ": invalid child link");
      }
      referenced[child] = true;
    }
  }
}

std::size_t Tree::LeafOf(std::span<const double> x) const {
  std::size_t id = 0;
  while (!nodes_[id].is_leaf()) {
    const TreeNode& node = nodes_[id];
    id = static_cast<std::size_t>(node.rule.GoesLeft(x) ? node.left : node.right);
  }
  return id;
}

std::span<const LeafEntry> Tree::LeafMembers(std::size_t node) const {
  const TreeNode& leaf = nodes_[node];
  return std::span<const LeafEntry>(entries_).subspan(
      leaf.entries_begin, leaf.entries_end - leaf.entries_begin);
}

std::size_t Tree::num_leaves() const {
  return static_cast<std::size_t>(std::count_if(
      nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

std::size_t Tree::depth() const {
  std::vector<std::size_t> level(nodes_.size(), 0);
  std::size_t deepest = 0;
  for (std::size_t id = 0; id < nodes_.size(); ++id) {
    deepest = std::max(deepest, level[id]);
    if (!nodes_[id].is_leaf()) {
      level[nodes_[id].left] = level[id] + 1;
      level[nodes_[id].right] = level[id] + 1;
    }
  }
  return deepest;
}

namespace {

double SquaredNorm(std::span<const double> v, double scale) {
  double s = 0.0;
  for (double e : v) s += e * e;
  return s * scale;
}

// sum_j left_j^2 / n_left + sum_j (total_j - left_j)^2 / n_right
double ChildScore(std::span<const double> left, std::span<const double> total,
                  std::size_t n_left, std::size_t n_right) {
  double left_sq = 0.0;
  double right_sq = 0.0;
  for (std::size_t j = 0; j < left.size(); ++j) {
    const double r = total[j] - left[j];
    left_sq += left[j] * left[j];
    right_sq += r * r;
  }
  return left_sq / static_cast<double>(n_left) + right_sq / static_cast<double>(n_right);
}

void CheckSplitPosition(std::size_t n, std::size_t k) {
  if (k < 1 || k >= n) {
    throw InvalidArgument("split position " + std::to_string(k) + " outside 1.." +
                          std::to_string(n > 0 ? n - 1 : 0));
  }
}

}  // namespace

double SplitScoreCde(const Matrix& sorted_basis_rows, std::size_t k) {
  const std::size_t n = sorted_basis_rows.rows();
  const std::size_t m = sorted_basis_rows.cols();
  CheckSplitPosition(n, k);
  std::vector<double> left(m, 0.0);
  std::vector<double> right(m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    auto& side = i < k ? left : right;
    for (std::size_t j = 0; j < m; ++j) side[j] += sorted_basis_rows(i, j);
  }
  return SquaredNorm(left, 1.0 / static_cast<double>(k)) +
         SquaredNorm(right, 1.0 / static_cast<double>(n - k));
}

std::vector<double> SplitScoresCde(const Matrix& sorted_basis_rows) {
  const std::size_t n = sorted_basis_rows.rows();
  const std::size_t m = sorted_basis_rows.cols();
  if (n < 2) return {};
  std::vector<double> total(m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) total[j] += sorted_basis_rows(i, j);
  }
  std::vector<double> left(m, 0.0);
  std::vector<double> scores(n - 1);
  for (std::size_t k = 1; k < n; ++k) {
    const auto row = sorted_basis_rows.row(k - 1);
    for (std::size_t j = 0; j < m; ++j) left[j] += row[j];
    scores[k - 1] = ChildScore(left, total, k, n - k);
  }
  return scores;
}

double SplitScoreMse(std::span<const double> sorted_z, std::size_t k) {
  return SplitScoreCde(Matrix::Column(sorted_z), k);
}

std::vector<double> SplitScoresMse(std::span<const double> sorted_z) {
  return SplitScoresCde(Matrix::Column(sorted_z));
}

Matrix SplitTargets(const Matrix& rescaled_z, SplitCriterion criterion, int n_basis) {
  if (criterion == SplitCriterion::kMse) {
    if (rescaled_z.cols() != 1) {
      throw Unsupported("the mse criterion supports univariate responses only, got " +
                        std::to_string(rescaled_z.cols()) + " response columns");
    }
    return rescaled_z;
  }
  return NonConstantBasisMatrix(
      rescaled_z, BasisSpec{n_basis, static_cast<int>(rescaled_z.cols())});
}

namespace {

// Relative score difference below which candidates count as tied.
constexpr double kTieTolerance = 1e-12;

struct SortedValue {
  double value;
  std::uint32_t row;
};

// Reused per-node buffers.
struct SplitWorkspace {
  std::vector<SortedValue> sorted;
  std::vector<double> total;
  std::vector<double> left;
  std::vector<int> features;
};

std::optional<SplitCandidate> FindBestSplit(const Matrix& x, const Matrix& targets,
                                            std::span<const std::uint32_t> members,
                                            const TreeParams& params, Rng& rng,
                                            SplitWorkspace& ws) {
  const std::size_t n = members.size();
  const std::size_t node_size = static_cast<std::size_t>(params.node_size);
  if (n < 2 * node_size || n < 2) return std::nullopt;

  const int p = static_cast<int>(x.cols());
  const int mtry = std::min(params.mtry, p);
  ws.features.resize(p);
  std::iota(ws.features.begin(), ws.features.end(), 0);
  for (int i = 0; i < mtry; ++i) {
    std::uniform_int_distribution<int> pick(i, p - 1);
    std::swap(ws.features[i], ws.features[pick(rng)]);
  }
  std::sort(ws.features.begin(), ws.features.begin() + mtry);

  const std::size_t m = targets.cols();
  ws.total.assign(m, 0.0);
  for (std::uint32_t row : members) {
    const auto t = targets.row(row);
    for (std::size_t j = 0; j < m; ++j) ws.total[j] += t[j];
  }

  std::optional<SplitCandidate> best;
  ws.sorted.resize(n);
  for (int f = 0; f < mtry; ++f) {
    const int feature = ws.features[f];
    for (std::size_t i = 0; i < n; ++i) ws.sorted[i] = {x(members[i], feature), members[i]};
    std::sort(ws.sorted.begin(), ws.sorted.end(),
              [](const SortedValue& a, const SortedValue& b) {
                return a.value < b.value || (a.value == b.value && a.row < b.row);
              });
    if (ws.sorted.front().value == ws.sorted.back().value) continue;

    ws.left.assign(m, 0.0);
    for (std::size_t k = 1; k + node_size <= n; ++k) {
      const auto t = targets.row(ws.sorted[k - 1].row);
      for (std::size_t j = 0; j < m; ++j) ws.left[j] += t[j];
      if (k < node_size) continue;
      const double lo = ws.sorted[k - 1].value;
      const double hi = ws.sorted[k].value;
      if (!(lo < hi)) continue;
      const double score = ChildScore(ws.left, ws.total, k, n - k);
      if (!best || score > best->score + kTieTolerance * std::abs(best->score)) {
        double threshold = lo + (hi - lo) / 2.0;
        if (!(threshold < hi)) threshold = lo;
        best = SplitCandidate{{feature, threshold}, score};
      }
    }
  }
  return best;
}

class TreeGrower {
 public:
  TreeGrower(const Matrix& x, const Matrix& targets, const TreeParams& params, Rng& rng)
      : x_(x), targets_(targets), params_(params), rng_(rng) {}

  std::int32_t Grow(std::span<std::uint32_t> members) {
    const auto id = static_cast<std::int32_t>(nodes_.size());
    nodes_.emplace_back();
    std::optional<SplitCandidate> split =
        FindBestSplit(x_, targets_, members, params_, rng_, workspace_);
    if (!split) {
      MakeLeaf(id, members);
      return id;
    }
    const SplitRule rule = split->rule;
    auto middle = std::stable_partition(
        members.begin(), members.end(),
        [&](std::uint32_t row) { return x_(row, rule.feature) <= rule.threshold; });
    const auto n_left = static_cast<std::size_t>(middle - members.begin());
    const std::int32_t left = Grow(members.subspan(0, n_left));
    const std::int32_t right = Grow(members.subspan(n_left));
    nodes_[id].rule = rule;
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
  }

  Tree Finish() { return Tree(std::move(nodes_), std::move(entries_)); }

 private:
  void MakeLeaf(std::int32_t id, std::span<std::uint32_t> members) {
    std::sort(members.begin(), members.end());
    TreeNode& leaf = nodes_[id];
    leaf.entries_begin = static_cast<std::uint32_t>(entries_.size());
    for (std::uint32_t row : members) {
      if (entries_.size() > leaf.entries_begin && entries_.back().row == row) {
        ++entries_.back().count;
      } else {
        entries_.push_back({row, 1});
      }
    }
    leaf.entries_end = static_cast<std::uint32_t>(entries_.size());
    leaf.leaf_size = static_cast<std::uint32_t>(members.size());
  }

  const Matrix& x_;
  const Matrix& targets_;
  const TreeParams& params_;
  Rng& rng_;
  SplitWorkspace workspace_;
  std::vector<TreeNode> nodes_;
  std::vector<LeafEntry> entries_;
};

}  // namespace

std::optional<SplitCandidate> BestSplit(const Matrix& x, const Matrix& targets,
                                        std::span<const std::uint32_t> members,
                                        const TreeParams& params, Rng& rng) {
  SplitWorkspace ws;
  return FindBestSplit(x, targets, members, params, rng, ws);
}

Tree BuildTree(const Matrix& x, const Matrix& targets, std::vector<std::uint32_t> in_bag,
               const TreeParams& params, Rng& rng) {
  if (in_bag.empty()) throw InvalidArgument("tree needs a nonempty in-bag sample");
  if (params.node_size < 1) throw InvalidArgument("node_size must be positive");
  if (params.mtry < 1) throw InvalidArgument("mtry must be positive");
  if (x.rows() != targets.rows()) {
    throw InvalidArgument("covariate and target row counts differ");
  }
  TreeGrower grower(x, targets, params, rng);
  grower.Grow(in_bag);
  return grower.Finish();
}

}  // namespace cdeforest
