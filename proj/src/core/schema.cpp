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

#include "fairaudit/schema.hpp"

#include <unordered_set>

#include "fairaudit/error.hpp"

namespace fairaudit {
namespace {

void require_unique(const std::vector<std::string>& labels,
                    const std::string& what) {
  std::unordered_set<std::string> seen;
  for (const auto& label : labels) {
    if (!seen.insert(label).second) {
      fail(ErrorCode::kInvalidSchema, "duplicate " + what + " '" + label + "'");
    }
  }
}

std::optional<std::size_t> index_of(const std::vector<std::string>& labels,
                                    std::string_view label) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return i;
  }
  return std::nullopt;
}

}  // namespace

AttributeSchema::AttributeSchema(std::vector<Attribute> attributes,
                                 std::vector<std::string> classes)
    : attributes_(std::move(attributes)), classes_(std::move(classes)) {
  if (classes_.empty()) fail(ErrorCode::kInvalidSchema, "no class labels");
  require_unique(classes_, "class label");
  std::vector<std::string> names;
  for (const auto& attribute : attributes_) {
    if (attribute.groups.empty()) {
      fail(ErrorCode::kInvalidSchema,
           "attribute '" + attribute.name + "' has no group labels");
    }
    require_unique(attribute.groups,
                   "group label of attribute '" + attribute.name + "'");
    names.push_back(attribute.name);
  }
  require_unique(names, "attribute name");
}

std::optional<std::size_t> AttributeSchema::find_attribute(
    std::string_view name) const {
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    if (attributes_[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> AttributeSchema::find_class(
    std::string_view label) const {
  return index_of(classes_, label);
}

std::optional<std::size_t> AttributeSchema::find_group(
    std::size_t attribute, std::string_view label) const {
  return index_of(attributes_.at(attribute).groups, label);
}

std::size_t AttributeSchema::attribute_index(std::string_view name) const {
  if (auto i = find_attribute(name)) return *i;
  fail(ErrorCode::kUnknownAttribute, "'" + std::string(name) + "'");
}

std::size_t AttributeSchema::class_index(std::string_view label) const {
  if (auto i = find_class(label)) return *i;
  fail(ErrorCode::kUnknownClass, "'" + std::string(label) + "'");
}

std::size_t AttributeSchema::group_index(std::size_t attribute,
                                         std::string_view label) const {
  if (auto i = find_group(attribute, label)) return *i;
  fail(ErrorCode::kUnknownGroup, "'" + std::string(label) +
                                     "' for attribute '" +
                                     attributes_.at(attribute).name + "'");
}

}  // namespace fairaudit
