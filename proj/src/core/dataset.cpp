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

#include "fairaudit/dataset.hpp"

#include "fairaudit/error.hpp"

namespace fairaudit {
namespace {

std::vector<std::uint32_t> resolve_groups(
    const AttributeSchema& schema,
    const std::map<std::string, std::string>& groups, const std::string& id) {
  if (groups.size() != schema.attribute_count()) {
    fail(ErrorCode::kInvalidRecord,
         "record '" + id + "' must carry exactly one group per attribute");
  }
  std::vector<std::uint32_t> indices(schema.attribute_count());
  for (std::size_t a = 0; a < schema.attribute_count(); ++a) {
    const auto& name = schema.attribute(a).name;
    auto it = groups.find(name);
    if (it == groups.end()) {
      fail(ErrorCode::kInvalidRecord,
           "record '" + id + "' lacks attribute '" + name + "'");
    }
    indices[a] = static_cast<std::uint32_t>(schema.group_index(a, it->second));
  }
  return indices;
}

void check_indexed(const AttributeSchema& schema, std::uint32_t cls,
                   std::span<const std::uint32_t> groups) {
  if (cls >= schema.class_count()) {
    fail(ErrorCode::kUnknownClass, "class index out of range");
  }
  if (groups.size() != schema.attribute_count()) {
    fail(ErrorCode::kInvalidRecord, "group index count mismatch");
  }
  for (std::size_t a = 0; a < groups.size(); ++a) {
    if (groups[a] >= schema.attribute(a).groups.size()) {
      fail(ErrorCode::kUnknownGroup, "group index out of range for '" +
                                         schema.attribute(a).name + "'");
    }
  }
}

std::map<std::string, std::string> group_labels(
    const AttributeSchema& schema,
    const std::vector<std::vector<std::uint32_t>>& columns, std::size_t row) {
  std::map<std::string, std::string> out;
  for (std::size_t a = 0; a < schema.attribute_count(); ++a) {
    out.emplace(schema.attribute(a).name,
                schema.attribute(a).groups[columns[a][row]]);
  }
  return out;
}

}  // namespace

LabeledDataset::LabeledDataset(AttributeSchema schema)
    : schema_(std::move(schema)), groups_(schema_.attribute_count()) {}

void LabeledDataset::reserve(std::size_t n) {
  ids_.reserve(n);
  classes_.reserve(n);
  for (auto& column : groups_) column.reserve(n);
  id_set_.reserve(n);
}

void LabeledDataset::add(const SampleRecord& record) {
  const auto cls =
      static_cast<std::uint32_t>(schema_.class_index(record.class_label));
  const auto groups = resolve_groups(schema_, record.groups, record.id);
  add_indexed(record.id, cls, groups);
}

void LabeledDataset::add_indexed(std::string id, std::uint32_t class_index,
                                 std::span<const std::uint32_t> group_indices) {
  check_indexed(schema_, class_index, group_indices);
  if (!id_set_.insert(id).second) {
    fail(ErrorCode::kDuplicateId, "'" + id + "'");
  }
  ids_.push_back(std::move(id));
  classes_.push_back(class_index);
  for (std::size_t a = 0; a < groups_.size(); ++a) {
    groups_[a].push_back(group_indices[a]);
  }
}

SampleRecord LabeledDataset::record(std::size_t row) const {
  return {ids_.at(row), schema_.classes()[classes_[row]],
          group_labels(schema_, groups_, row)};
}

LabeledDataset LabeledDataset::select(std::span<const std::size_t> rows) const {
  LabeledDataset out(schema_);
  out.reserve(rows.size());
  std::vector<std::uint32_t> groups(groups_.size());
  for (std::size_t row : rows) {
    for (std::size_t a = 0; a < groups_.size(); ++a) groups[a] = groups_[a][row];
    out.add_indexed(ids_.at(row), classes_[row], groups);
  }
  return out;
}

EvaluationSet::EvaluationSet(AttributeSchema schema)
    : schema_(std::move(schema)), groups_(schema_.attribute_count()) {}

void EvaluationSet::reserve(std::size_t n) {
  ids_.reserve(n);
  true_.reserve(n);
  predicted_.reserve(n);
  for (auto& column : groups_) column.reserve(n);
  id_set_.reserve(n);
}

void EvaluationSet::add(const EvaluationRecord& record) {
  const auto truth =
      static_cast<std::uint32_t>(schema_.class_index(record.true_class));
  const auto predicted =
      static_cast<std::uint32_t>(schema_.class_index(record.predicted_class));
  const auto groups = resolve_groups(schema_, record.groups, record.id);
  add_indexed(record.id, truth, predicted, groups);
}

void EvaluationSet::add_indexed(std::string id, std::uint32_t true_class,
                                std::uint32_t predicted_class,
                                std::span<const std::uint32_t> group_indices) {
  check_indexed(schema_, true_class, group_indices);
  if (predicted_class >= schema_.class_count()) {
    fail(ErrorCode::kUnknownClass, "predicted class index out of range");
  }
  if (!id_set_.insert(id).second) {
    fail(ErrorCode::kDuplicateId, "'" + id + "'");
  }
  ids_.push_back(std::move(id));
  true_.push_back(true_class);
  predicted_.push_back(predicted_class);
  for (std::size_t a = 0; a < groups_.size(); ++a) {
    groups_[a].push_back(group_indices[a]);
  }
}

EvaluationRecord EvaluationSet::record(std::size_t row) const {
  return {ids_.at(row), schema_.classes()[true_[row]],
          schema_.classes()[predicted_[row]],
          group_labels(schema_, groups_, row)};
}

}  // namespace fairaudit
