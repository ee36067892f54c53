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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fairaudit/core.hpp"
#include "fairaudit/dataset.hpp"
#include "fairaudit/matrix.hpp"

namespace fairaudit {

// NPMI per (group, class). std::nullopt marks an undefined entry (a zero
// marginal).
struct NpmiMatrix {
  std::string attribute;
  std::vector<std::string> groups;
  std::vector<std::string> classes;
  Matrix<std::optional<double>> values;  // groups x classes
};

// Which groups of a class row take part in the disparity computation.
struct SupportPolicy {
  std::uint64_t min_support = 1;
};

struct IntraclassDisparity {
  double value = 0.0;
  std::vector<std::size_t> excluded_groups;  // support below the policy
  bool single_group = false;  // only one group survived; value forced to 0
};

struct ClassDisparity {
  std::string class_label;
  double value = 0.0;
  std::vector<std::string> excluded_groups;
  bool single_group = false;
};

struct DisparityReport {
  std::string attribute;
  std::uint64_t min_support = 1;
  std::vector<ClassDisparity> per_class;
  double overall = 0.0;
};

// Representational bias of a normalized distribution over n >= 2 groups.
// 0 for uniform, 1 when one group holds all mass.
double nsd(std::span<const double> distribution);

NpmiMatrix npmi_matrix(const JointDistribution& joint);

// Normalized mutual information: MI divided by the joint entropy. Throws
// kDegenerateJoint when one cell carries all the mass.
double nmi(const JointDistribution& joint);

// Mutual information in nats.
double mutual_information(const JointDistribution& joint);

// Average shortfall of each group's recall relative to the best group.
// Groups with support < policy.min_support are dropped first. Throws
// kNoSupportedGroups if nothing survives.
IntraclassDisparity intraclass_disparity(
    std::span<const std::optional<double>> recalls,
    std::span<const std::uint64_t> support, const SupportPolicy& policy);

// Unfiltered form over plain recall values.
double intraclass_disparity(std::span<const double> recalls);

DisparityReport overall_disparity(const RecallTable& table,
                                  const SupportPolicy& policy = {});

// P(pred = positive | group != privileged) / P(pred = positive | group = privileged)
double disparate_impact(const EvaluationSet& evals, std::string_view attribute,
                        std::string_view privileged_group,
                        std::string_view positive_class);

// |accuracy(privileged) - accuracy(rest)|
double overall_accuracy_equality(const EvaluationSet& evals,
                                 std::string_view attribute,
                                 std::string_view privileged_group);

}  // namespace fairaudit
