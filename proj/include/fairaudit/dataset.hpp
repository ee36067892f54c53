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
#include <map>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "fairaudit/schema.hpp"

namespace fairaudit {

// Label-level view of one dataset row.
struct SampleRecord {
  std::string id;
  std::string class_label;
  std::map<std::string, std::string> groups;  // attribute -> group label

  bool operator==(const SampleRecord&) const = default;
};

struct EvaluationRecord {
  std::string id;
  std::string true_class;
  std::string predicted_class;
  std::map<std::string, std::string> groups;

  bool operator==(const EvaluationRecord&) const = default;
};

// Labeled samples stored column-wise as schema indices. Row order is the
// insertion order.
class LabeledDataset {
 public:
  explicit LabeledDataset(AttributeSchema schema);

  const AttributeSchema& schema() const { return schema_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }

  // Validates labels against the schema; throws kUnknownClass/kUnknownGroup,
  // kInvalidRecord (attribute set mismatch) or kDuplicateId.
  void add(const SampleRecord& record);
  // Index-level insertion used by the resampling and simulation code.
  void add_indexed(std::string id, std::uint32_t class_index,
                   std::span<const std::uint32_t> group_indices);
  void reserve(std::size_t n);

  SampleRecord record(std::size_t row) const;
  const std::string& id(std::size_t row) const { return ids_[row]; }
  std::span<const std::uint32_t> class_column() const { return classes_; }
  std::span<const std::uint32_t> group_column(std::size_t attribute) const {
    return groups_[attribute];
  }

  // New dataset with the same schema holding the given rows, in the given
  // order.
  LabeledDataset select(std::span<const std::size_t> rows) const;

  bool operator==(const LabeledDataset& other) const {
    return schema_ == other.schema_ && ids_ == other.ids_ &&
           classes_ == other.classes_ && groups_ == other.groups_;
  }

 private:
  AttributeSchema schema_;
  std::vector<std::string> ids_;
  std::vector<std::uint32_t> classes_;
  std::vector<std::vector<std::uint32_t>> groups_;
  std::unordered_set<std::string> id_set_;
};

// (id, true class, predicted class, groups) rows, column-wise.
class EvaluationSet {
 public:
  explicit EvaluationSet(AttributeSchema schema);

  const AttributeSchema& schema() const { return schema_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }

  void add(const EvaluationRecord& record);
  void add_indexed(std::string id, std::uint32_t true_class,
                   std::uint32_t predicted_class,
                   std::span<const std::uint32_t> group_indices);
  void reserve(std::size_t n);

  EvaluationRecord record(std::size_t row) const;
  const std::string& id(std::size_t row) const { return ids_[row]; }
  std::span<const std::uint32_t> true_column() const { return true_; }
  std::span<const std::uint32_t> predicted_column() const { return predicted_; }
  std::span<const std::uint32_t> group_column(std::size_t attribute) const {
    return groups_[attribute];
  }

  bool operator==(const EvaluationSet& other) const {
    return schema_ == other.schema_ && ids_ == other.ids_ &&
           true_ == other.true_ && predicted_ == other.predicted_ &&
           groups_ == other.groups_;
  }

 private:
  AttributeSchema schema_;
  std::vector<std::string> ids_;
  std::vector<std::uint32_t> true_;
  std::vector<std::uint32_t> predicted_;
  std::vector<std::vector<std::uint32_t>> groups_;
  std::unordered_set<std::string> id_set_;
};

}  // namespace fairaudit
