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

#include <cstdio>
#include <filesystem>

#include "cdeforest/error.h"
#include "cdeforest/simgen.h"
#include "gtest/gtest.h"
#include "json.hpp"

namespace cdeforest {
namespace {

Forest SmallForest(std::size_t d = 1) {
  ForestParams params;
  params.n_trees = 6;
  params.mtry = d == 1 ? 4 : 1;
  params.node_size = 4;
  params.seed = 42;
  if (d == 1) {
    const SimData data = GenerateUnivariate({120, 1.0, 3});
    Forest f = Forest::Fit(data.x, data.z, params);
    return f;
  }
  const SimData data = GenerateJoint(120, 3);
  return Forest::Fit(data.x, data.z, params);
}

TEST(ForestIo, RoundTripPredictsIdentically) {
  for (std::size_t d : {1, 2}) {
    const Forest forest = SmallForest(d);
    const Forest loaded = LoadForest(SaveForest(forest));
    EXPECT_EQ(loaded.params(), forest.params());
    EXPECT_EQ(loaded.z_train(), forest.z_train());
    EXPECT_EQ(loaded.bounds(), forest.bounds());
    EXPECT_EQ(loaded.trees(), forest.trees());
    EXPECT_EQ(SaveForest(loaded), SaveForest(forest));

    std::vector<std::vector<double>> axes(d, std::vector<double>{-1, 0, 0.25, 0.5, 1, 2});
    const Lattice grid(axes);
    const Matrix queries = d == 1 ? GenerateUnivariate({10, 1.0, 9}).x : GenerateJoint(10, 9).x;
    for (std::size_t q = 0; q < queries.rows(); ++q) {
      for (const auto& bw : {BandwidthSpec::Fixed(0.2), BandwidthSpec::Adaptive()}) {
        EXPECT_EQ(forest.PredictDensityValues(queries.row(q), grid, bw),
                  loaded.PredictDensityValues(queries.row(q), grid, bw));
      }
    }
  }
}

TEST(ForestIo, CarriesVersionAndColumnNames) {
  Forest forest = SmallForest();
  std::vector<std::string> covariates;
  for (int i = 0; i < 20; ++i) covariates.push_back("c" + std::to_string(i));
  forest.set_column_names({covariates, {"z"}});
  const std::string doc = SaveForest(forest);
  const auto json = nlohmann::json::parse(doc);
  EXPECT_EQ(json.at("format_version"), 1);
  EXPECT_EQ(json.at("params").at("criterion"), "cde");
  EXPECT_EQ(LoadForest(doc).column_names(), forest.column_names());
}

TEST(ForestIo, RejectsVersionMismatch) {
  auto json = nlohmann::json::parse(SaveForest(SmallForest()));
  json["format_version"] = 2;
  try {
    LoadForest(json.dump());
    FAIL() << "expected LoadError";
  } catch (const LoadError& e) {
    EXPECT_NE(std::string(e.what()).find("format_version"), std::string::npos);
  }
}

TEST(ForestIo, RejectsTruncationAndCorruption) {
  const std::string doc = SaveForest(SmallForest());
  EXPECT_THROW(LoadForest(doc.substr(0, doc.size() / 2)), LoadError);
  EXPECT_THROW(LoadForest(""), LoadError);

  auto json = nlohmann::json::parse(doc);
  json["params"].erase("mtry");
  try {
    LoadForest(json.dump());
    FAIL() << "expected LoadError";
  } catch (const LoadError& e) {
    EXPECT_NE(std::string(e.what()).find("params.mtry"), std::string::npos);
  }

  json = nlohmann::json::parse(doc);
  json["trees"][0]["leaf"] = "oops";
  EXPECT_THROW(LoadForest(json.dump()), LoadError);

  json = nlohmann::json::parse(doc);
  json["trees"].erase(0);
  EXPECT_THROW(LoadForest(json.dump()), LoadError);

  json = nlohmann::json::parse(doc);
  json["params"]["criterion"] = "gini";
  EXPECT_THROW(LoadForest(json.dump()), LoadError);

  json = nlohmann::json::parse(doc);
  json["z_train"][0] = nlohmann::json::array({1.0, 2.0});
  EXPECT_THROW(LoadForest(json.dump()), LoadError);
}

TEST(ForestIo, FileRoundTrip) {
  const Forest forest = SmallForest();
  const auto path = std::filesystem::temp_directory_path() / "cdeforest_io_test.json";
  SaveForestFile(forest, path.string());
  EXPECT_EQ(LoadForestFile(path.string()).trees(), forest.trees());
  std::filesystem::remove(path);
  EXPECT_THROW(LoadForestFile(path.string()), LoadError);
}

}  // namespace
}  // namespace cdeforest
