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
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fairaudit/dataset.hpp"

namespace fairaudit {

// Subset construction. All constructions sample without replacement, are
// deterministic in (dataset, parameters, seed), and return rows in their
// original order.

struct BalancedSpec {
  std::string attribute;
};

struct StratifiedSpec {
  double fraction = 1.0;
  // Attributes whose group combinations define the strata within each class.
  // Empty means every schema attribute.
  std::vector<std::string> attributes;
};

struct SingleGroupSpec {
  std::string attribute;
  std::string group;
  bool match_balanced_totals = false;
};

struct SubsetSpec {
  std::variant<BalancedSpec, StratifiedSpec, SingleGroupSpec> kind;
  std::uint64_t seed = 0;
};

// Keeps k_c = min_g count(c, g) records in every (class c, group g) cell.
// Throws kEmptyCell when some cell is empty.
LabeledDataset balanced_subset(const LabeledDataset& dataset,
                               std::string_view attribute, std::uint64_t seed);

// Keeps `fraction` of every (class x group-combination) cell, rounded by
// largest remainder within each class so that class totals equal
// round(fraction * class total). Throws kInvalidFraction outside (0, 1].
LabeledDataset stratified_subset(const LabeledDataset& dataset,
                                 double fraction, std::uint64_t seed,
                                 const std::vector<std::string>& attributes);

// Keeps only records of one group. With match_balanced_totals, takes exactly
// the per-class totals balanced_subset would produce on the same input and
// throws kInsufficientSamples when the group cannot supply them.
LabeledDataset single_group_subset(const LabeledDataset& dataset,
                                   std::string_view attribute,
                                   std::string_view group, std::uint64_t seed,
                                   bool match_balanced_totals);

LabeledDataset make_subset(const LabeledDataset& dataset,
                           const SubsetSpec& spec);

// Per-cell quotas: largest-remainder apportionment of `total` proportional to
// `weights`, ties broken toward the lower index. Exposed for reuse by the
// population generator.
std::vector<std::uint64_t> apportion(const std::vector<double>& weights,
                                     std::uint64_t total);

}  // namespace fairaudit
