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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fairaudit/dataset.hpp"
#include "fairaudit/matrix.hpp"
#include "fairaudit/metrics.hpp"

namespace fairaudit {

// One (class, group-combination) cell of a synthetic population.
struct PopulationCell {
  std::uint32_t class_index = 0;
  std::vector<std::uint32_t> group_indices;  // one per schema attribute
  double weight = 0.0;
};

struct PopulationSpec {
  AttributeSchema schema;
  std::uint64_t total_count = 0;
  std::vector<PopulationCell> cells;
  std::uint64_t seed = 0;
};

// P(predicted | true class, group) for one attribute.
class ClassifierProfile {
 public:
  using Row = std::vector<double>;  // distribution over predicted classes

  ClassifierProfile(AttributeSchema schema, std::string attribute);

  // Recall r on the diagonal, the remaining mass spread evenly over the other
  // classes.
  static ClassifierProfile from_recalls(AttributeSchema schema,
                                        std::string attribute,
                                        const Matrix<double>& recalls);

  const AttributeSchema& schema() const { return schema_; }
  const std::string& attribute() const { return attribute_; }
  std::size_t attribute_index() const { return attribute_index_; }

  // Throws kInvalidSpec unless the row is a distribution within 1e-9.
  void set_row(std::size_t true_class, std::size_t group, Row row);
  const std::optional<Row>& row(std::size_t true_class,
                                std::size_t group) const {
    return rows_(true_class, group);
  }

  // Diagonal entries; nullopt where no row was set.
  Matrix<std::optional<double>> recalls() const;

 private:
  AttributeSchema schema_;
  std::string attribute_;
  std::size_t attribute_index_ = 0;
  Matrix<std::optional<Row>> rows_;  // classes x groups
};

struct MetricSummary {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation, 0 for a single run
};

struct RunAggregate {
  std::size_t runs = 0;
  std::map<std::string, MetricSummary> metrics;
};

LabeledDataset generate_population(const PopulationSpec& spec);

// Each record's prediction is drawn from profile[true class][group] with a
// uniform keyed by (seed, row index), so results do not depend on evaluation
// order. Throws kMissingProfileRow.
EvaluationSet simulate_classifier(const LabeledDataset& dataset,
                                  const ClassifierProfile& profile,
                                  std::uint64_t seed);

// Disparity computed from the profile's exact recalls.
DisparityReport analytic_od(const ClassifierProfile& profile);

// Throws kMismatchedKeys when runs disagree on metric names, kInvalidSpec
// when there are no runs.
RunAggregate aggregate_runs(const std::vector<std::map<std::string, double>>& runs);

}  // namespace fairaudit
