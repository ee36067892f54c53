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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairaudit/dataset.hpp"
#include "fairaudit/matrix.hpp"

namespace fairaudit {

// Integer counts over (group x class) for one attribute. Rows follow the
// attribute's group order, columns the schema's class order.
class ContingencyTable {
 public:
  ContingencyTable(std::string attribute, std::vector<std::string> groups,
                   std::vector<std::string> classes,
                   Matrix<std::uint64_t> counts);

  const std::string& attribute() const { return attribute_; }
  const std::vector<std::string>& groups() const { return groups_; }
  const std::vector<std::string>& classes() const { return classes_; }
  const Matrix<std::uint64_t>& counts() const { return counts_; }
  std::uint64_t count(std::size_t group, std::size_t cls) const {
    return counts_(group, cls);
  }

  std::uint64_t total() const;
  std::vector<std::uint64_t> group_totals() const;
  std::vector<std::uint64_t> class_totals() const;

  bool operator==(const ContingencyTable&) const = default;

 private:
  std::string attribute_;
  std::vector<std::string> groups_;
  std::vector<std::string> classes_;
  Matrix<std::uint64_t> counts_;
};

// Maximum-likelihood estimate of P(s, y) with cached marginals.
class JointDistribution {
 public:
  // Throws kInvalidSpec unless entries are non-negative and sum to 1
  // within 1e-12.
  JointDistribution(std::string attribute, std::vector<std::string> groups,
                    std::vector<std::string> classes, Matrix<double> cells);

  const std::string& attribute() const { return attribute_; }
  const std::vector<std::string>& groups() const { return groups_; }
  const std::vector<std::string>& classes() const { return classes_; }
  const Matrix<double>& cells() const { return cells_; }
  double p(std::size_t group, std::size_t cls) const {
    return cells_(group, cls);
  }
  const std::vector<double>& group_marginal() const { return group_marginal_; }
  const std::vector<double>& class_marginal() const { return class_marginal_; }

  // Same distribution with groups and classes swapped.
  JointDistribution transposed() const;

 private:
  std::string attribute_;
  std::vector<std::string> groups_;
  std::vector<std::string> classes_;
  Matrix<double> cells_;
  std::vector<double> group_marginal_;
  std::vector<double> class_marginal_;
};

// R(y, s) = P(predicted = y | true = y, group = s). Rows are classes,
// columns are groups. A cell with zero support has no recall.
class RecallTable {
 public:
  RecallTable(std::string attribute, std::vector<std::string> groups,
              std::vector<std::string> classes, Matrix<std::uint64_t> correct,
              Matrix<std::uint64_t> support);

  // Recall values given directly (no counts), e.g. from a classifier profile.
  // Supplied cells get support 1 so that every support policy keeps them.
  static RecallTable from_values(std::string attribute,
                                 std::vector<std::string> groups,
                                 std::vector<std::string> classes,
                                 const Matrix<std::optional<double>>& recall);

  const std::string& attribute() const { return attribute_; }
  const std::vector<std::string>& groups() const { return groups_; }
  const std::vector<std::string>& classes() const { return classes_; }
  std::size_t class_count() const { return classes_.size(); }
  std::size_t group_count() const { return groups_.size(); }

  std::optional<double> recall(std::size_t cls, std::size_t group) const {
    return recall_(cls, group);
  }
  std::uint64_t support(std::size_t cls, std::size_t group) const {
    return support_(cls, group);
  }
  const Matrix<std::optional<double>>& recall_matrix() const { return recall_; }
  const Matrix<std::uint64_t>& support_matrix() const { return support_; }

 private:
  RecallTable() = default;

  std::string attribute_;
  std::vector<std::string> groups_;
  std::vector<std::string> classes_;
  Matrix<std::optional<double>> recall_;
  Matrix<std::uint64_t> support_;
};

ContingencyTable build_contingency(const LabeledDataset& dataset,
                                   std::string_view attribute);

JointDistribution normalize(const ContingencyTable& table);

// Fraction of records in each group of the attribute.
std::vector<double> group_distribution(const LabeledDataset& dataset,
                                       std::string_view attribute);

RecallTable recall_table(const EvaluationSet& evals,
                         std::string_view attribute);

double overall_accuracy(const EvaluationSet& evals);

}  // namespace fairaudit
