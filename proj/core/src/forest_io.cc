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

#include "cdeforest/forest_io.h"

#include <fstream>
#include <sstream>
#include <utility>

#include "cdeforest/error.h"
#include "json.hpp"

namespace cdeforest {

namespace {

using Json = nlohmann::ordered_json;

Json NodeToJson(const Tree& tree, std::size_t id) {
  const TreeNode& node = tree.nodes()[id];
  Json out;
  if (node.is_leaf()) {
    Json members = Json::array();
    for (const LeafEntry& e : tree.LeafMembers(id)) members.push_back({e.row, e.count});
    out["leaf"] = std::move(members);
    return out;
  }
  out["feature"] = node.rule.feature;
  out["threshold"] = node.rule.threshold;
  out["left"] = NodeToJson(tree, static_cast<std::size_t>(node.left));
  out["right"] = NodeToJson(tree, static_cast<std::size_t>(node.right));
  return out;
}

const Json& Member(const Json& obj, const char* name, const std::string& path) {
  if (!obj.is_object() || !obj.contains(name)) {
    throw LoadError("model field '" + path + name + "' is missing");
  }
  return obj.at(name);
}

template <typename T>
T Get(const Json& value, const std::string& path) {
  try {
    return value.get<T>();
  } catch (const Json::exception&) {
    throw LoadError("model field '" + path + "' has the wrong type");
  }
}

template <typename T>
T Field(const Json& obj, const char* name, const std::string& path) {
  return Get<T>(Member(obj, name, path), path + name);
}

class TreeReader {
 public:
  explicit TreeReader(std::string path) : path_(std::move(path)) {}

  void Read(const Json& node, const std::string& path) {
    const auto id = nodes_.size();
    nodes_.emplace_back();
    if (node.is_object() && node.contains("leaf")) {
      const Json& members = Member(node, "leaf", path + ".");
      if (!members.is_array() || members.empty()) {
        throw LoadError("model field '" + path + ".leaf' must be a nonempty array");
      }
      TreeNode leaf;
      leaf.entries_begin = static_cast<std::uint32_t>(entries_.size());
      for (const Json& m : members) {
        const auto pair = Get<std::vector<std::uint32_t>>(m, path + ".leaf[]");
        if (pair.size() != 2 || pair[1] == 0) {
          throw LoadError("model field '" + path + ".leaf[]' must be [row, count>0]");
        }
        entries_.push_back({pair[0], pair[1]});
        leaf.leaf_size += pair[1];
      }
      leaf.entries_end = static_cast<std::uint32_t>(entries_.size());
      nodes_[id] = leaf;
      return;
    }
    TreeNode split;
    split.rule.feature = Field<int>(node, "feature", path + ".");
    split.rule.threshold = Field<double>(node, "threshold", path + ".");
    split.left = static_cast<std::int32_t>(nodes_.size());
    Read(Member(node, "left", path + "."), path + ".left");
    split.right = static_cast<std::int32_t>(nodes_.size());
    Read(Member(node, "right", path + "."), path + ".right");
    nodes_[id] = split;
  }

  Tree Finish() {
    try {
      return Tree(std::move(nodes_), std::move(entries_));
    } catch (const InvalidArgument& e) {
      throw LoadError("model field '" + path_ + "': " + e.what());
    }
  }

 private:
  std::string path_;
  std::vector<TreeNode> nodes_;
  std::vector<LeafEntry> entries_;
};

}  // namespace

std::string SaveForest(const Forest& forest) {
  const ForestParams& p = forest.params();
  Json doc;
  doc["format_version"] = kModelFormatVersion;
  doc["params"] = {
      {"n_trees", p.n_trees},
      {"node_size", p.node_size},
      {"mtry", p.mtry},
      {"n_basis", p.n_basis},
      {"criterion", std::string(CriterionName(p.criterion))},
      {"bootstrap", p.bootstrap},
      {"seed", p.seed},
  };
  doc["n_covariates"] = forest.n_covariates();
  Json bounds = Json::array();
  for (std::size_t k = 0; k < forest.bounds().dim(); ++k) {
    bounds.push_back({forest.bounds().lo[k], forest.bounds().hi[k]});
  }
  doc["rescale_bounds"] = std::move(bounds);
  doc["columns"] = {{"covariates", forest.column_names().covariates},
                    {"responses", forest.column_names().responses}};
  Json z = Json::array();
  for (std::size_t i = 0; i < forest.z_train().rows(); ++i) {
    const auto row = forest.z_train().row(i);
    z.push_back(std::vector<double>(row.begin(), row.end()));
  }
  doc["z_train"] = std::move(z);
  Json trees = Json::array();
  for (const Tree& tree : forest.trees()) trees.push_back(NodeToJson(tree, 0));
  doc["trees"] = std::move(trees);
  return doc.dump();
}

Forest LoadForest(std::string_view document) {
  Json doc;
  try {
    doc = Json::parse(document);
  } catch (const Json::parse_error& e) {
    throw LoadError(std::string("model document is not valid JSON (truncated?): ") + e.what());
  }
  const int version = Field<int>(doc, "format_version", "");
  if (version != kModelFormatVersion) {
    throw LoadError("model field 'format_version' is " + std::to_string(version) +
                    ", this build reads version " + std::to_string(kModelFormatVersion));
  }

  const Json& jp = Member(doc, "params", "");
  ForestParams params;
  params.n_trees = Field<int>(jp, "n_trees", "params.");
  params.node_size = Field<int>(jp, "node_size", "params.");
  params.mtry = Field<int>(jp, "mtry", "params.");
  params.n_basis = Field<int>(jp, "n_basis", "params.");
  try {
    params.criterion = ParseCriterion(Field<std::string>(jp, "criterion", "params."));
  } catch (const InvalidArgument& e) {
    throw LoadError(std::string("model field 'params.criterion': ") + e.what());
  }
  params.bootstrap = Field<bool>(jp, "bootstrap", "params.");
  params.seed = Field<std::uint64_t>(jp, "seed", "params.");

  const auto n_covariates = Field<std::size_t>(doc, "n_covariates", "");

  const auto raw_bounds = Field<std::vector<std::vector<double>>>(doc, "rescale_bounds", "");
  ResponseBounds bounds;
  for (const auto& b : raw_bounds) {
    if (b.size() != 2) throw LoadError("model field 'rescale_bounds' entries must be [lo, hi]");
    bounds.lo.push_back(b[0]);
    bounds.hi.push_back(b[1]);
  }

  const auto rows = Field<std::vector<std::vector<double>>>(doc, "z_train", "");
  if (rows.empty()) throw LoadError("model field 'z_train' is empty");
  Matrix z_train(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != z_train.cols()) throw LoadError("model field 'z_train' is ragged");
    std::copy(rows[i].begin(), rows[i].end(), z_train.row(i).begin());
  }

  ColumnNames names;
  if (doc.contains("columns")) {
    const Json& cols = doc.at("columns");
    names.covariates = Field<std::vector<std::string>>(cols, "covariates", "columns.");
    names.responses = Field<std::vector<std::string>>(cols, "responses", "columns.");
  }

  const Json& jtrees = Member(doc, "trees", "");
  if (!jtrees.is_array()) throw LoadError("model field 'trees' must be an array");
  std::vector<Tree> trees;
  trees.reserve(jtrees.size());
  for (std::size_t t = 0; t < jtrees.size(); ++t) {
    const std::string path = "trees[" + std::to_string(t) + "]";
    TreeReader reader(path);
    reader.Read(jtrees[t], path);
    trees.push_back(reader.Finish());
  }

  try {
    return Forest(params, n_covariates, std::move(z_train), std::move(bounds),
                  std::move(trees), std::move(names));
  } catch (const Error& e) {
    throw LoadError(std::string("inconsistent model: ") + e.what());
  }
}

void SaveForestFile(const Forest& forest, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot open '" + path + "' for writing");
  out << SaveForest(forest) << '\n';
  if (!out) throw InvalidArgument("failed writing model to '" + path + "'");
}

Forest LoadForestFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open model file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return LoadForest(buffer.str());
}

}  // namespace cdeforest
