/*
 * Copyright 2026 The fairaudit Authors.
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

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fairaudit/dataset.hpp"
#include "fairaudit/simulate.hpp"

namespace fairaudit::testing {

// Schema with one attribute "g" (groups A, B, ...) and classes x, y, ...
AttributeSchema simple_schema(std::size_t groups, std::size_t classes);

// Dataset whose (class, group) cell counts are counts[class][group] for the
// single attribute of simple_schema. Rows are interleaved across cells.
LabeledDataset dataset_from_cells(
    const std::vector<std::vector<std::uint64_t>>& counts);

// 8 emotion classes x 7 race groups x 2 gender groups, shaped after the
// published class frequencies of a large facial-expression dataset: a white
// majority near 64% and a male share near 50% overall but skewed per class
// (about 72% male for "angry").
PopulationSpec expression_shaped_spec(std::uint64_t total, std::uint64_t seed);

// Random count table with entries in [0, max_count] and some zero cells.
std::vector<std::vector<std::uint64_t>> random_counts(std::mt19937_64& rng,
                                                      std::size_t groups,
                                                      std::size_t classes,
                                                      std::uint64_t max_count);

}  // namespace fairaudit::testing
