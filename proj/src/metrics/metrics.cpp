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

#include "fairaudit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fairaudit/error.hpp"
#include "fairaudit/kernels.hpp"

namespace fairaudit {
namespace {

double clamp_unit(double v) { return std::clamp(v, 0.0, 1.0); }

// Shared core of the two intraclass disparity entry points; `recalls` holds
// only the surviving groups.
double disparity_of(std::span<const double> recalls) {
  const std::size_t n = recalls.size();
  if (n < 2) return 0.0;
  const double best = *std::max_element(recalls.begin(), recalls.end());
  if (best == 0.0) return 0.0;
  double shortfall = 0.0;
  for (double r : recalls) shortfall += 1.0 - r / best;
  return clamp_unit(shortfall / static_cast<double>(n - 1));
}

struct GroupSplit {
  std::size_t attribute;
  std::size_t privileged;
  std::vector<std::uint64_t> group_counts;
};

GroupSplit split_groups(const EvaluationSet& evals, std::string_view attribute,
                        std::string_view privileged_group) {
  const auto& schema = evals.schema();
  GroupSplit split;
  split.attribute = schema.attribute_index(attribute);
  split.privileged = schema.group_index(split.attribute, privileged_group);
  split.group_counts.assign(schema.attribute(split.attribute).groups.size(), 0);
  kernels::active_kernels().tally(evals.group_column(split.attribute),
                                  split.group_counts);
  const auto privileged = split.group_counts[split.privileged];
  if (privileged == 0) {
    fail(ErrorCode::kNoPrivilegedSamples,
         "no records in group '" + std::string(privileged_group) + "'");
  }
  if (privileged == evals.size()) {
    fail(ErrorCode::kNoUnprivilegedSamples,
         "every record is in group '" + std::string(privileged_group) + "'");
  }
  return split;
}

}  // namespace

double nsd(std::span<const double> distribution) {
  const std::size_t n = distribution.size();
  if (n < 2) fail(ErrorCode::kTooFewGroups, "need at least two groups");
  double sum = 0.0;
  for (double x : distribution) {
    if (!(x >= 0.0)) fail(ErrorCode::kNotNormalized, "negative entry");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    fail(ErrorCode::kNotNormalized, "entries do not sum to 1");
  }
  const double dn = static_cast<double>(n);
  const double mean = sum / dn;
  double squares = 0.0;
  for (double x : distribution) squares += (x - mean) * (x - mean);
  return clamp_unit(dn / std::sqrt(dn - 1.0) * std::sqrt(squares / dn));
}

NpmiMatrix npmi_matrix(const JointDistribution& joint) {
  const auto& cells = joint.cells();
  const auto& pg = joint.group_marginal();
  const auto& pc = joint.class_marginal();
  NpmiMatrix out{joint.attribute(), joint.groups(), joint.classes(),
                 Matrix<std::optional<double>>(cells.rows(), cells.cols())};
  for (std::size_t g = 0; g < cells.rows(); ++g) {
    for (std::size_t c = 0; c < cells.cols(); ++c) {
      if (pg[g] == 0.0 || pc[c] == 0.0) continue;  // undefined
      const double p = cells(g, c);
      double value;
      if (p == 0.0) {
        value = -1.0;  // limit as P(s,y) -> 0 with fixed marginals
      } else if (p >= 1.0) {
        value = 1.0;  // P(s,y) = P(s) = P(y) = 1
      } else {
        value = -std::log(p / (pg[g] * pc[c])) / std::log(p);
      }
      out.values(g, c) = std::clamp(value, -1.0, 1.0);
    }
  }
  return out;
}

double mutual_information(const JointDistribution& joint) {
  const auto& cells = joint.cells();
  const auto& pg = joint.group_marginal();
  const auto& pc = joint.class_marginal();
  double mi = 0.0;
  for (std::size_t g = 0; g < cells.rows(); ++g) {
    for (std::size_t c = 0; c < cells.cols(); ++c) {
      const double p = cells(g, c);
      if (p > 0.0) mi += p * std::log(p / (pg[g] * pc[c]));
    }
  }
  return std::max(mi, 0.0);
}

double nmi(const JointDistribution& joint) {
  const auto& cells = joint.cells();
  const auto positive = std::count_if(cells.flat().begin(), cells.flat().end(),
                                      [](double p) { return p > 0.0; });
  if (positive < 2) {
    fail(ErrorCode::kDegenerateJoint,
         "all probability mass in one cell for '" + joint.attribute() + "'");
  }
  const auto& pg = joint.group_marginal();
  const auto& pc = joint.class_marginal();
  double mi = 0.0;
  double plogp = 0.0;
  for (std::size_t g = 0; g < cells.rows(); ++g) {
    for (std::size_t c = 0; c < cells.cols(); ++c) {
      const double p = cells(g, c);
      if (p <= 0.0) continue;
      mi += p * std::log(p / (pg[g] * pc[c]));
      plogp += p * std::log(p);
    }
  }
  return clamp_unit(-mi / plogp);
}

IntraclassDisparity intraclass_disparity(
    std::span<const std::optional<double>> recalls,
    std::span<const std::uint64_t> support, const SupportPolicy& policy) {
  if (recalls.size() != support.size()) {
    fail(ErrorCode::kInvalidSpec, "recall/support length mismatch");
  }
  IntraclassDisparity out;
  std::vector<double> kept;
  for (std::size_t g = 0; g < recalls.size(); ++g) {
    if (recalls[g].has_value() && support[g] > 0 &&
        support[g] >= policy.min_support) {
      kept.push_back(*recalls[g]);
    } else {
      out.excluded_groups.push_back(g);
    }
  }
  if (kept.empty()) fail(ErrorCode::kNoSupportedGroups, "empty class row");
  out.single_group = kept.size() == 1;
  out.value = disparity_of(kept);
  return out;
}

double intraclass_disparity(std::span<const double> recalls) {
  if (recalls.empty()) fail(ErrorCode::kNoSupportedGroups, "empty class row");
  return disparity_of(recalls);
}

DisparityReport overall_disparity(const RecallTable& table,
                                  const SupportPolicy& policy) {
  DisparityReport report;
  report.attribute = table.attribute();
  report.min_support = policy.min_support;
  if (table.class_count() == 0) {
    fail(ErrorCode::kNoSupportedGroups, "recall table has no classes");
  }
  double sum = 0.0;
  for (std::size_t c = 0; c < table.class_count(); ++c) {
    IntraclassDisparity id;
    try {
      id = intraclass_disparity(table.recall_matrix().row(c),
                                table.support_matrix().row(c), policy);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoSupportedGroups) throw;
      fail(ErrorCode::kNoSupportedGroups,
           "class '" + table.classes()[c] + "' has no group with support >= " +
               std::to_string(policy.min_support) + " for attribute '" +
               table.attribute() + "'");
    }
    ClassDisparity entry{table.classes()[c], id.value, {}, id.single_group};
    for (std::size_t g : id.excluded_groups) {
      entry.excluded_groups.push_back(table.groups()[g]);
    }
    sum += id.value;
    report.per_class.push_back(std::move(entry));
  }
  report.overall = clamp_unit(sum / static_cast<double>(table.class_count()));
  return report;
}

double disparate_impact(const EvaluationSet& evals, std::string_view attribute,
                        std::string_view privileged_group,
                        std::string_view positive_class) {
  const auto positive =
      static_cast<std::uint32_t>(evals.schema().class_index(positive_class));
  const auto split = split_groups(evals, attribute, privileged_group);
  std::vector<std::uint64_t> positives(split.group_counts.size(), 0);
  kernels::active_kernels().tally_where_value(
      evals.group_column(split.attribute), evals.predicted_column(), positive,
      positives);

  const auto priv_n = split.group_counts[split.privileged];
  const auto priv_pos = positives[split.privileged];
  const auto rest_n = evals.size() - priv_n;
  const auto rest_pos =
      std::accumulate(positives.begin(), positives.end(), std::uint64_t{0}) -
      priv_pos;
  if (priv_pos == 0) {
    fail(ErrorCode::kZeroDenominator,
         "privileged group never receives the positive class");
  }
  const double priv_rate =
      static_cast<double>(priv_pos) / static_cast<double>(priv_n);
  const double rest_rate =
      static_cast<double>(rest_pos) / static_cast<double>(rest_n);
  return rest_rate / priv_rate;
}

double overall_accuracy_equality(const EvaluationSet& evals,
                                 std::string_view attribute,
                                 std::string_view privileged_group) {
  const auto split = split_groups(evals, attribute, privileged_group);
  std::vector<std::uint64_t> hits(split.group_counts.size(), 0);
  kernels::active_kernels().tally_where_equal(
      evals.group_column(split.attribute), evals.true_column(),
      evals.predicted_column(), hits);

  const auto priv_n = split.group_counts[split.privileged];
  const auto priv_hits = hits[split.privileged];
  const auto rest_n = evals.size() - priv_n;
  const auto rest_hits =
      std::accumulate(hits.begin(), hits.end(), std::uint64_t{0}) - priv_hits;
  const double priv_acc =
      static_cast<double>(priv_hits) / static_cast<double>(priv_n);
  const double rest_acc =
      static_cast<double>(rest_hits) / static_cast<double>(rest_n);
  return std::abs(priv_acc - rest_acc);
}

}  // namespace fairaudit
