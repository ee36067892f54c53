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

#include <algorithm>
#include <unordered_map>

#include "fairaudit/error.hpp"
#include "fairaudit/io.hpp"

namespace fairaudit::io {
namespace {

// Label vocabulary in first-appearance order.
class Vocabulary {
 public:
  void see(const std::string& label) {
    if (std::find(labels_.begin(), labels_.end(), label) == labels_.end()) {
      labels_.push_back(label);
    }
  }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<std::string> labels_;
};

std::size_t require_column(const std::vector<std::string>& header,
                           const std::string& name) {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) {
    fail(ErrorCode::kMissingColumn, "required column '" + name + "' is absent");
  }
  return static_cast<std::size_t>(it - header.begin());
}

// Row before schema resolution.
struct RawRow {
  std::string id;
  std::string truth;
  std::optional<std::string> predicted;
  std::vector<std::string> groups;  // aligned with attribute names
};

struct RawRows {
  std::vector<std::string> attributes;
  std::vector<RawRow> rows;
};

// Columns named in `fixed` are structural; with a schema the attribute
// columns are the schema's, otherwise every other column.
std::vector<std::pair<std::string, std::size_t>> attribute_columns(
    const std::vector<std::string>& header,
    const std::vector<std::string>& fixed,
    const std::optional<AttributeSchema>& schema) {
  std::vector<std::pair<std::string, std::size_t>> out;
  if (schema) {
    for (const auto& attribute : schema->attributes()) {
      out.emplace_back(attribute.name, require_column(header, attribute.name));
    }
    return out;
  }
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (std::find(fixed.begin(), fixed.end(), header[i]) == fixed.end()) {
      out.emplace_back(header[i], i);
    }
  }
  return out;
}

AttributeSchema infer_schema(const RawRows& raw) {
  Vocabulary classes;
  std::vector<Vocabulary> groups(raw.attributes.size());
  for (const auto& row : raw.rows) {
    classes.see(row.truth);
    if (row.predicted) classes.see(*row.predicted);
    for (std::size_t a = 0; a < groups.size(); ++a) groups[a].see(row.groups[a]);
  }
  std::vector<Attribute> attributes;
  for (std::size_t a = 0; a < raw.attributes.size(); ++a) {
    attributes.push_back({raw.attributes[a], groups[a].labels()});
  }
  return AttributeSchema(std::move(attributes), classes.labels());
}

std::uint32_t resolve(std::optional<std::size_t> index, std::size_t row,
                      const std::string& column, const std::string& value) {
  if (!index) {
    fail(ErrorCode::kUnknownLabel, "row " + std::to_string(row + 1) +
                                       ", column '" + column + "': value '" +
                                       value + "' is not declared");
  }
  return static_cast<std::uint32_t>(*index);
}

template <typename Sink>
void resolve_rows(const RawRows& raw, const AttributeSchema& schema,
                  const std::string& truth_column, Sink&& sink) {
  std::vector<std::uint32_t> groups(schema.attribute_count());
  for (std::size_t r = 0; r < raw.rows.size(); ++r) {
    const auto& row = raw.rows[r];
    const auto truth =
        resolve(schema.find_class(row.truth), r, truth_column, row.truth);
    std::optional<std::uint32_t> predicted;
    if (row.predicted) {
      predicted = resolve(schema.find_class(*row.predicted), r,
                          "predicted_class", *row.predicted);
    }
    for (std::size_t a = 0; a < schema.attribute_count(); ++a) {
      groups[a] = resolve(schema.find_group(a, row.groups[a]), r,
                          raw.attributes[a], row.groups[a]);
    }
    try {
      sink(row.id, truth, predicted, groups);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDuplicateId) throw;
      fail(ErrorCode::kDuplicateId,
           "row " + std::to_string(r + 1) + ": id '" + row.id + "' repeats");
    }
  }
}

RawRows collect_dataset_rows(const CsvTable& table,
                             const std::optional<AttributeSchema>& schema) {
  if (table.header.empty()) fail(ErrorCode::kEmptyFile, "no header row");
  const auto id = require_column(table.header, "id");
  const auto cls = require_column(table.header, "class");
  const auto columns = attribute_columns(table.header, {"id", "class"}, schema);
  if (table.rows.empty()) fail(ErrorCode::kEmptyFile, "no data rows");
  RawRows raw;
  for (const auto& [name, unused] : columns) raw.attributes.push_back(name);
  raw.rows.reserve(table.rows.size());
  for (const auto& fields : table.rows) {
    RawRow row{fields[id], fields[cls], std::nullopt, {}};
    for (const auto& [unused, index] : columns) row.groups.push_back(fields[index]);
    raw.rows.push_back(std::move(row));
  }
  return raw;
}

EvaluationSet build_evaluations(const RawRows& raw,
                                const std::optional<AttributeSchema>& schema) {
  EvaluationSet evals(schema ? *schema : infer_schema(raw));
  evals.reserve(raw.rows.size());
  resolve_rows(raw, evals.schema(), "true_class",
               [&](const std::string& id, std::uint32_t truth,
                   std::optional<std::uint32_t> predicted,
                   std::span<const std::uint32_t> groups) {
                 evals.add_indexed(id, truth, *predicted, groups);
               });
  return evals;
}

}  // namespace

LabeledDataset parse_dataset(const CsvTable& table,
                             const std::optional<AttributeSchema>& schema) {
  const auto raw = collect_dataset_rows(table, schema);
  LabeledDataset dataset(schema ? *schema : infer_schema(raw));
  dataset.reserve(raw.rows.size());
  resolve_rows(raw, dataset.schema(), "class",
               [&](const std::string& id, std::uint32_t cls,
                   std::optional<std::uint32_t>,
                   std::span<const std::uint32_t> groups) {
                 dataset.add_indexed(id, cls, groups);
               });
  return dataset;
}

LabeledDataset read_dataset(const std::filesystem::path& path,
                            const std::optional<AttributeSchema>& schema) {
  try {
    return parse_dataset(read_csv(path), schema);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIoFailure) throw;
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string dataset_to_csv(const LabeledDataset& dataset) {
  const auto& schema = dataset.schema();
  std::string out = "id,class";
  for (const auto& attribute : schema.attributes()) {
    out += "," + csv_escape(attribute.name);
  }
  out += "\n";
  for (std::size_t row = 0; row < dataset.size(); ++row) {
    out += csv_escape(dataset.id(row));
    out += "," + csv_escape(schema.classes()[dataset.class_column()[row]]);
    for (std::size_t a = 0; a < schema.attribute_count(); ++a) {
      out += "," + csv_escape(
                       schema.attribute(a).groups[dataset.group_column(a)[row]]);
    }
    out += "\n";
  }
  return out;
}

void write_dataset(const LabeledDataset& dataset,
                   const std::filesystem::path& path) {
  write_text_atomic(path, dataset_to_csv(dataset));
}

EvaluationSet parse_evaluations(const CsvTable& table,
                                const std::optional<AttributeSchema>& schema) {
  if (table.header.empty()) fail(ErrorCode::kEmptyFile, "no header row");
  const auto id = require_column(table.header, "id");
  const auto truth = require_column(table.header, "true_class");
  const auto predicted = require_column(table.header, "predicted_class");
  const auto columns = attribute_columns(
      table.header, {"id", "true_class", "predicted_class"}, schema);
  if (table.rows.empty()) fail(ErrorCode::kEmptyFile, "no data rows");
  RawRows raw;
  for (const auto& [name, unused] : columns) raw.attributes.push_back(name);
  for (const auto& fields : table.rows) {
    RawRow row{fields[id], fields[truth], fields[predicted], {}};
    for (const auto& [unused, index] : columns) row.groups.push_back(fields[index]);
    raw.rows.push_back(std::move(row));
  }
  return build_evaluations(raw, schema);
}

EvaluationSet read_evaluations(const std::filesystem::path& path,
                               const std::optional<AttributeSchema>& schema) {
  try {
    return parse_evaluations(read_csv(path), schema);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIoFailure) throw;
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

EvaluationSet join_evaluations(const CsvTable& predictions,
                               const CsvTable& dataset,
                               const std::optional<AttributeSchema>& schema) {
  if (predictions.header.empty()) fail(ErrorCode::kEmptyFile, "no header row");
  const auto pid = require_column(predictions.header, "id");
  const auto pclass = require_column(predictions.header, "predicted_class");
  std::unordered_map<std::string, std::string> by_id;
  for (std::size_t r = 0; r < predictions.rows.size(); ++r) {
    const auto& fields = predictions.rows[r];
    if (!by_id.emplace(fields[pid], fields[pclass]).second) {
      fail(ErrorCode::kDuplicateId, "predictions row " + std::to_string(r + 1) +
                                        ": id '" + fields[pid] + "' repeats");
    }
  }

  auto raw = collect_dataset_rows(dataset, schema);
  std::size_t matched = 0;
  for (auto& row : raw.rows) {
    auto it = by_id.find(row.id);
    if (it == by_id.end()) {
      fail(ErrorCode::kUnmatchedId,
           "dataset id '" + row.id + "' has no prediction");
    }
    row.predicted = it->second;
    ++matched;
  }
  if (matched != by_id.size()) {
    std::unordered_map<std::string, bool> known;
    for (const auto& row : raw.rows) known[row.id] = true;
    for (const auto& fields : predictions.rows) {
      if (!known.count(fields[pid])) {
        fail(ErrorCode::kUnmatchedId,
             "prediction id '" + fields[pid] + "' is not in the dataset");
      }
    }
  }
  return build_evaluations(raw, schema);
}

EvaluationSet read_evaluations_joined(
    const std::filesystem::path& predictions,
    const std::filesystem::path& dataset,
    const std::optional<AttributeSchema>& schema) {
  return join_evaluations(read_csv(predictions), read_csv(dataset), schema);
}

std::string evaluations_to_csv(const EvaluationSet& evals) {
  const auto& schema = evals.schema();
  std::string out = "id,true_class,predicted_class";
  for (const auto& attribute : schema.attributes()) {
    out += "," + csv_escape(attribute.name);
  }
  out += "\n";
  for (std::size_t row = 0; row < evals.size(); ++row) {
    out += csv_escape(evals.id(row));
    out += "," + csv_escape(schema.classes()[evals.true_column()[row]]);
    out += "," + csv_escape(schema.classes()[evals.predicted_column()[row]]);
    for (std::size_t a = 0; a < schema.attribute_count(); ++a) {
      out += "," + csv_escape(
                       schema.attribute(a).groups[evals.group_column(a)[row]]);
    }
    out += "\n";
  }
  return out;
}

}  // namespace fairaudit::io
