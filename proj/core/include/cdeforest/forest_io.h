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

#ifndef CDEFOREST_FOREST_IO_H_
#define CDEFOREST_FOREST_IO_H_

#include <string>
#include <string_view>

#include "cdeforest/forest.h"

namespace cdeforest {

inline constexpr int kModelFormatVersion = 1;

// JSON model document:
//   {"format_version": 1, "params": {...}, "n_covariates": p,
//    "rescale_bounds": [[lo, hi], ...], "z_train": [[...], ...],
//    "columns": {"covariates": [...], "responses": [...]},
//    "trees": [node, ...]}
// where node is {"feature": f, "threshold": t, "left": node, "right": node}
// or {"leaf": [[row, count], ...]}.
// Output is byte-identical for identical forests.
std::string SaveForest(const Forest& forest);

// Throws LoadError naming the offending field; never returns a partial forest.
Forest LoadForest(std::string_view document);

void SaveForestFile(const Forest& forest, const std::string& path);
Forest LoadForestFile(const std::string& path);

}  // namespace cdeforest

#endif  // CDEFOREST_FOREST_IO_H_
