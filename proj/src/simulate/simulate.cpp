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

#include "fairaudit/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fairaudit/core.hpp"
#include "fairaudit/error.hpp"
#include "fairaudit/random.hpp"
#include "fairaudit/resample.hpp"

namespace fairaudit {
namespace {

std::string padded_id(std::uint64_t index, std::size_t width) {
  std::string digits = std::to_string(index);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return "s" + digits;
}

}  // namespace

ClassifierProfile::ClassifierProfile(AttributeSchema schema,
                                     std::string attribute)
    : schema_(std::move(schema)), attribute_(std::move(attribute)) {
  attribute_index_ = schema_.attribute_index(attribute_);
  rows_ = Matrix<std::optional<Row>>(
      schema_.class_count(), schema_.attribute(attribute_index_).groups.size());
}

ClassifierProfile ClassifierProfile::from_recalls(AttributeSchema schema,
                                                  std::string attribute,
                                                  const Matrix<double>& recalls) {
  ClassifierProfile profile(std::move(schema), std::move(attribute));
  const std::size_t classes = profile.schema_.class_count();
  if (recalls.rows() != classes ||
      recalls.cols() != profile.rows_.cols()) {
    fail(ErrorCode::kInvalidSpec, "recall matrix shape mismatch");
  }
  for (std::size_t c = 0; c < classes; ++c) {
    for (std::size_t g = 0; g < recalls.cols(); ++g) {
      const double r = recalls(c, g);
      Row row(classes, classes > 1 ? (1.0 - r) / static_cast<double>(classes - 1)
                                   : 0.0);
      row[c] = r;
      profile.set_row(c, g, std::move(row));
    }
  }
  return profile;
}

void ClassifierProfile::set_row(std::size_t true_class, std::size_t group,
                                Row row) {
  if (true_class >= rows_.rows() || group >= rows_.cols()) {
    fail(ErrorCode::kInvalidSpec, "profile row index out of range");
  }
  if (row.size() != schema_.class_count()) {
    fail(ErrorCode::kInvalidSpec, "profile row must cover every class");
  }
  double sum = 0.0;
  for (double p : row) {
    if (!(p >= 0.0 && p <= 1.0)) {
      fail(ErrorCode::kInvalidSpec, "profile probability outside [0, 1]");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    fail(ErrorCode::kInvalidSpec,
         "profile row for class '" + schema_.classes()[true_class] +
             "', group '" +
             schema_.attribute(attribute_index_).groups[group] +
             "' does not sum to 1");
  }
  rows_(true_class, group) = std::move(row);
}

Matrix<std::optional<double>> ClassifierProfile::recalls() const {
  Matrix<std::optional<double>> out(rows_.rows(), rows_.cols());
  for (std::size_t c = 0; c < rows_.rows(); ++c)
    for (std::size_t g = 0; g < rows_.cols(); ++g)
      if (const auto& row = rows_(c, g)) out(c, g) = (*row)[c];
  return out;
}

LabeledDataset generate_population(const PopulationSpec& spec) {
  const auto& schema = spec.schema;
  if (spec.total_count < 1) fail(ErrorCode::kInvalidSpec, "total_count < 1");
  if (spec.cells.empty()) fail(ErrorCode::kInvalidSpec, "no cells");
  std::vector<double> weights;
  for (const auto& cell : spec.cells) {
    if (cell.class_index >= schema.class_count() ||
        cell.group_indices.size() != schema.attribute_count()) {
      fail(ErrorCode::kInvalidSpec, "cell does not match the schema");
    }
    for (std::size_t a = 0; a < schema.attribute_count(); ++a) {
      if (cell.group_indices[a] >= schema.attribute(a).groups.size()) {
        fail(ErrorCode::kInvalidSpec, "cell group out of range");
      }
    }
    weights.push_back(cell.weight);
  }
  const auto counts = apportion(weights, spec.total_count);

  // Cell label per record, shuffled so row order carries no structure.
  std::vector<std::uint32_t> layout;
  layout.reserve(spec.total_count);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    layout.insert(layout.end(), counts[i], static_cast<std::uint32_t>(i));
  }
  Rng rng(spec.seed, 0);
  for (std::size_t i = layout.size(); i > 1; --i) {
    std::swap(layout[i - 1], layout[rng.below(i)]);
  }

  const std::size_t width = std::to_string(spec.total_count).size();
  LabeledDataset dataset(schema);
  dataset.reserve(layout.size());
  for (std::size_t row = 0; row < layout.size(); ++row) {
    const auto& cell = spec.cells[layout[row]];
    dataset.add_indexed(padded_id(row + 1, width), cell.class_index,
                        cell.group_indices);
  }
  return dataset;
}

EvaluationSet simulate_classifier(const LabeledDataset& dataset,
                                  const ClassifierProfile& profile,
                                  std::uint64_t seed) {
  if (!(dataset.schema() == profile.schema())) {
    fail(ErrorCode::kInvalidSpec, "profile schema differs from dataset schema");
  }
  const auto& schema = dataset.schema();
  const std::size_t a = profile.attribute_index();
  const auto classes = dataset.class_column();
  const auto groups = dataset.group_column(a);

  EvaluationSet evals(schema);
  evals.reserve(dataset.size());
  std::vector<std::uint32_t> record_groups(schema.attribute_count());
  const std::uint64_t key = mix64(seed);
  for (std::size_t row = 0; row < dataset.size(); ++row) {
    const auto& dist = profile.row(classes[row], groups[row]);
    if (!dist) {
      fail(ErrorCode::kMissingProfileRow,
           "class '" + schema.classes()[classes[row]] + "', group '" +
               schema.attribute(a).groups[groups[row]] + "'");
    }
    // Inverse-CDF draw from a counter-based uniform.
    const double u = to_unit_interval(mix64(key ^ mix64(row)));
    std::uint32_t predicted = 0;
    double cumulative = 0.0;
    std::uint32_t last_positive = 0;
    bool found = false;
    for (std::uint32_t k = 0; k < dist->size(); ++k) {
      if ((*dist)[k] > 0.0) last_positive = k;
      cumulative += (*dist)[k];
      if (!found && u < cumulative) {
        predicted = k;
        found = true;
      }
    }
    if (!found) predicted = last_positive;  // u beyond a sum slightly below 1

    for (std::size_t b = 0; b < schema.attribute_count(); ++b) {
      record_groups[b] = dataset.group_column(b)[row];
    }
    evals.add_indexed(dataset.id(row), classes[row], predicted, record_groups);
  }
  return evals;
}

DisparityReport analytic_od(const ClassifierProfile& profile) {
  const auto& schema = profile.schema();
  const auto table = RecallTable::from_values(
      profile.attribute(), schema.attribute(profile.attribute_index()).groups,
      schema.classes(), profile.recalls());
  return overall_disparity(table, SupportPolicy{});
}

RunAggregate aggregate_runs(
    const std::vector<std::map<std::string, double>>& runs) {
  if (runs.empty()) fail(ErrorCode::kInvalidSpec, "no runs to aggregate");
  for (const auto& run : runs) {
    if (run.size() != runs.front().size() ||
        !std::equal(run.begin(), run.end(), runs.front().begin(),
                    [](const auto& x, const auto& y) {
                      return x.first == y.first;
                    })) {
      fail(ErrorCode::kMismatchedKeys, "runs report different metric names");
    }
  }
  RunAggregate out;
  out.runs = runs.size();
  const double k = static_cast<double>(runs.size());
  for (const auto& [name, unused] : runs.front()) {
    double sum = 0.0;
    for (const auto& run : runs) sum += run.at(name);
    const double mean = sum / k;
    double squares = 0.0;
    for (const auto& run : runs) {
      const double d = run.at(name) - mean;
      squares += d * d;
    }
    out.metrics[name] = {mean, runs.size() > 1 ? std::sqrt(squares / (k - 1.0))
                                               : 0.0};
  }
  return out;
}

}  // namespace fairaudit
