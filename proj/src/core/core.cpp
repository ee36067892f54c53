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

#include "fairaudit/core.hpp"

#include <cmath>

#include "fairaudit/error.hpp"
#include "fairaudit/kernels.hpp"

namespace fairaudit {
namespace {

std::size_t require_attribute(const AttributeSchema& schema,
                              std::string_view attribute) {
  return schema.attribute_index(attribute);
}

// counts over (group * class_count + class) for one attribute.
std::vector<std::uint32_t> cell_indices(std::span<const std::uint32_t> groups,
                                        std::span<const std::uint32_t> classes,
                                        std::uint32_t class_count) {
  std::vector<std::uint32_t> cells(groups.size());
  kernels::active_kernels().combine_index(groups, classes, class_count, cells);
  return cells;
}

}  // namespace

ContingencyTable::ContingencyTable(std::string attribute,
                                   std::vector<std::string> groups,
                                   std::vector<std::string> classes,
                                   Matrix<std::uint64_t> counts)
    : attribute_(std::move(attribute)),
      groups_(std::move(groups)),
      classes_(std::move(classes)),
      counts_(std::move(counts)) {
  if (counts_.rows() != groups_.size() || counts_.cols() != classes_.size()) {
    fail(ErrorCode::kInvalidSpec, "contingency table shape mismatch");
  }
}

std::uint64_t ContingencyTable::total() const {
  std::uint64_t sum = 0;
  for (auto v : counts_.flat()) sum += v;
  return sum;
}

std::vector<std::uint64_t> ContingencyTable::group_totals() const {
  std::vector<std::uint64_t> out(counts_.rows(), 0);
  for (std::size_t g = 0; g < counts_.rows(); ++g)
    for (auto v : counts_.row(g)) out[g] += v;
  return out;
}

std::vector<std::uint64_t> ContingencyTable::class_totals() const {
  std::vector<std::uint64_t> out(counts_.cols(), 0);
  for (std::size_t g = 0; g < counts_.rows(); ++g)
    for (std::size_t c = 0; c < counts_.cols(); ++c) out[c] += counts_(g, c);
  return out;
}

JointDistribution::JointDistribution(std::string attribute,
                                     std::vector<std::string> groups,
                                     std::vector<std::string> classes,
                                     Matrix<double> cells)
    : attribute_(std::move(attribute)),
      groups_(std::move(groups)),
      classes_(std::move(classes)),
      cells_(std::move(cells)),
      group_marginal_(cells_.rows(), 0.0),
      class_marginal_(cells_.cols(), 0.0) {
  if (cells_.rows() != groups_.size() || cells_.cols() != classes_.size()) {
    fail(ErrorCode::kInvalidSpec, "joint distribution shape mismatch");
  }
  double total = 0.0;
  for (std::size_t g = 0; g < cells_.rows(); ++g) {
    for (std::size_t c = 0; c < cells_.cols(); ++c) {
      const double p = cells_(g, c);
      if (!(p >= 0.0)) {
        fail(ErrorCode::kInvalidSpec, "negative or NaN probability");
      }
      group_marginal_[g] += p;
      class_marginal_[c] += p;
      total += p;
    }
  }
  if (std::abs(total - 1.0) > 1e-12) {
    fail(ErrorCode::kInvalidSpec, "joint probabilities do not sum to 1");
  }
}

JointDistribution JointDistribution::transposed() const {
  return JointDistribution(attribute_, classes_, groups_, cells_.transposed());
}

RecallTable::RecallTable(std::string attribute, std::vector<std::string> groups,
                         std::vector<std::string> classes,
                         Matrix<std::uint64_t> correct,
                         Matrix<std::uint64_t> support)
    : attribute_(std::move(attribute)),
      groups_(std::move(groups)),
      classes_(std::move(classes)),
      recall_(classes_.size(), groups_.size()),
      support_(std::move(support)) {
  if (correct.rows() != classes_.size() || correct.cols() != groups_.size() ||
      support_.rows() != classes_.size() || support_.cols() != groups_.size()) {
    fail(ErrorCode::kInvalidSpec, "recall table shape mismatch");
  }
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      const auto n = support_(c, g);
      if (correct(c, g) > n) {
        fail(ErrorCode::kInvalidSpec, "correct count exceeds support");
      }
      if (n > 0) {
        recall_(c, g) =
            static_cast<double>(correct(c, g)) / static_cast<double>(n);
      }
    }
  }
}

RecallTable RecallTable::from_values(std::string attribute,
                                     std::vector<std::string> groups,
                                     std::vector<std::string> classes,
                                     const Matrix<std::optional<double>>& recall) {
  if (recall.rows() != classes.size() || recall.cols() != groups.size()) {
    fail(ErrorCode::kInvalidSpec, "recall table shape mismatch");
  }
  RecallTable table;
  table.attribute_ = std::move(attribute);
  table.groups_ = std::move(groups);
  table.classes_ = std::move(classes);
  table.recall_ = recall;
  table.support_ = Matrix<std::uint64_t>(recall.rows(), recall.cols(), 0);
  for (std::size_t c = 0; c < recall.rows(); ++c) {
    for (std::size_t g = 0; g < recall.cols(); ++g) {
      if (const auto& r = recall(c, g)) {
        if (!(*r >= 0.0 && *r <= 1.0)) {
          fail(ErrorCode::kInvalidSpec, "recall outside [0, 1]");
        }
        table.support_(c, g) = 1;
      }
    }
  }
  return table;
}

ContingencyTable build_contingency(const LabeledDataset& dataset,
                                   std::string_view attribute) {
  const auto& schema = dataset.schema();
  const std::size_t a = require_attribute(schema, attribute);
  if (dataset.empty()) fail(ErrorCode::kEmptyDataset, "no records");
  const auto& groups = schema.attribute(a).groups;
  const auto class_count = static_cast<std::uint32_t>(schema.class_count());

  Matrix<std::uint64_t> counts(groups.size(), class_count, 0);
  const auto cells =
      cell_indices(dataset.group_column(a), dataset.class_column(), class_count);
  kernels::active_kernels().tally(cells, counts.flat());
  return ContingencyTable(schema.attribute(a).name, groups, schema.classes(),
                          std::move(counts));
}

JointDistribution normalize(const ContingencyTable& table) {
  const std::uint64_t total = table.total();
  if (total == 0) fail(ErrorCode::kEmptyTable, "table total is zero");
  const auto& counts = table.counts();
  Matrix<double> cells(counts.rows(), counts.cols());
  const double denom = static_cast<double>(total);
  for (std::size_t g = 0; g < counts.rows(); ++g)
    for (std::size_t c = 0; c < counts.cols(); ++c)
      cells(g, c) = static_cast<double>(counts(g, c)) / denom;
  return JointDistribution(table.attribute(), table.groups(), table.classes(),
                           std::move(cells));
}

std::vector<double> group_distribution(const LabeledDataset& dataset,
                                       std::string_view attribute) {
  const auto& schema = dataset.schema();
  const std::size_t a = require_attribute(schema, attribute);
  if (dataset.empty()) fail(ErrorCode::kEmptyDataset, "no records");
  std::vector<std::uint64_t> counts(schema.attribute(a).groups.size(), 0);
  kernels::active_kernels().tally(dataset.group_column(a), counts);
  std::vector<double> out(counts.size());
  const double denom = static_cast<double>(dataset.size());
  for (std::size_t g = 0; g < counts.size(); ++g) {
    out[g] = static_cast<double>(counts[g]) / denom;
  }
  return out;
}

RecallTable recall_table(const EvaluationSet& evals,
                         std::string_view attribute) {
  const auto& schema = evals.schema();
  const std::size_t a = require_attribute(schema, attribute);
  if (evals.empty()) fail(ErrorCode::kEmptyEvaluationSet, "no records");
  const auto& groups = schema.attribute(a).groups;
  const auto group_count = static_cast<std::uint32_t>(groups.size());

  // Rows are classes here, so the cell index is class * |groups| + group.
  std::vector<std::uint32_t> cells(evals.size());
  const auto& k = kernels::active_kernels();
  k.combine_index(evals.true_column(), evals.group_column(a), group_count,
                  cells);
  Matrix<std::uint64_t> support(schema.class_count(), group_count, 0);
  Matrix<std::uint64_t> correct(schema.class_count(), group_count, 0);
  k.tally(cells, support.flat());
  k.tally_where_equal(cells, evals.true_column(), evals.predicted_column(),
                      correct.flat());
  return RecallTable(schema.attribute(a).name, groups, schema.classes(),
                     std::move(correct), std::move(support));
}

double overall_accuracy(const EvaluationSet& evals) {
  if (evals.empty()) fail(ErrorCode::kEmptyEvaluationSet, "no records");
  const auto hits = kernels::active_kernels().count_equal(
      evals.true_column(), evals.predicted_column());
  return static_cast<double>(hits) / static_cast<double>(evals.size());
}

}  // namespace fairaudit
