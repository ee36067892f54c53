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
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fairaudit/core.hpp"
#include "fairaudit/metrics.hpp"
#include "fairaudit/schema.hpp"
#include "fairaudit/simulate.hpp"

namespace fairaudit {

struct DatasetIdentity {
  std::string path;
  std::uint64_t rows = 0;
  AttributeSchema schema;
};

// Dataset-side bias figures for one attribute. nsd is absent with fewer
// than two groups; nmi is absent for a degenerate joint.
struct AttributeAudit {
  std::string attribute;
  std::vector<std::string> groups;
  std::vector<std::string> classes;
  Matrix<std::uint64_t> counts;  // groups x classes
  std::vector<double> distribution;
  std::optional<double> nsd;
  std::optional<double> nmi;
  double mutual_information = 0.0;
  Matrix<std::optional<double>> npmi;  // groups x classes
};

struct ModelAttributeAudit {
  DisparityReport disparity;
  std::vector<std::string> groups;
  Matrix<std::optional<double>> recall;  // classes x groups
  Matrix<std::uint64_t> support;         // classes x groups
};

struct ModelAudit {
  std::string path;
  std::uint64_t rows = 0;
  double accuracy = 0.0;
  std::vector<ModelAttributeAudit> attributes;
};

struct Provenance {
  std::string tool = "fairaudit";
  std::string version;
  std::vector<std::pair<std::string, std::uint64_t>> seeds;
  std::string generated_at;
};

struct AuditReport {
  DatasetIdentity dataset;
  std::vector<AttributeAudit> attributes;
  std::optional<ModelAudit> model;
  Provenance provenance;
};

enum class ReportFormat { kJson, kCsvBundle };

// Empty `attributes` audits every schema attribute.
AuditReport audit_dataset(const LabeledDataset& dataset, std::string path,
                          const std::vector<std::string>& attributes = {});

AttributeAudit audit_attribute(const LabeledDataset& dataset,
                               std::string_view attribute);

ModelAudit audit_model(const EvaluationSet& evals, std::string path,
                       const SupportPolicy& policy = {},
                       const std::vector<std::string>& attributes = {});

// Evaluation-set report: the dataset section describes the evaluated rows
// (true classes) and the model section carries accuracy and disparities.
AuditReport audit_evaluations(const EvaluationSet& evals, std::string path,
                              const SupportPolicy& policy = {},
                              const std::vector<std::string>& attributes = {});

// ISO-8601 UTC time, or $FAIRAUDIT_TIMESTAMP when set.
std::string current_timestamp();
std::string tool_version();

std::string report_to_json(const AuditReport& report);
AuditReport report_from_json(const std::string& text);

// kJson writes <dir>/report.json. kCsvBundle writes one CSV per table:
//   dataset_bias.csv, <attr>_distribution.csv, <attr>_counts.csv,
//   <attr>_npmi.csv and, with a model section, model_summary.csv,
//   <attr>_disparity.csv, <attr>_recall.csv.
// Returns the written paths in write order.
std::vector<std::filesystem::path> write_report(const AuditReport& report,
                                                const std::filesystem::path& dir,
                                                ReportFormat format);

std::string npmi_to_csv(const AttributeAudit& audit);

// Side-by-side table of several reports, one row per report. Throws
// kSchemaMismatch when attribute or class sets differ.
struct ComparisonTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

ComparisonTable compare_reports(const std::vector<AuditReport>& reports);
std::string comparison_to_csv(const ComparisonTable& table);

// Simulation outputs: per-run metric rows and the mean/std aggregate.
std::string runs_to_csv(const std::vector<std::map<std::string, double>>& runs,
                        const std::vector<std::uint64_t>& seeds);
std::string aggregate_to_json(const RunAggregate& aggregate,
                              const Provenance& provenance);
std::string aggregate_to_csv(const RunAggregate& aggregate);

// %.17g rendering shared by every text emitter.
std::string format_double(double value);

}  // namespace fairaudit
