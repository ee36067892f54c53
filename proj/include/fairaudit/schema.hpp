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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fairaudit {

// One protected attribute (e.g. "gender") and its admissible group labels in
// declaration order.
struct Attribute {
  std::string name;
  std::vector<std::string> groups;

  bool operator==(const Attribute&) const = default;
};

// Declares the attribute and class vocabularies of a dataset. The declared
// order of groups and classes fixes the layout of every matrix the library
// produces.
class AttributeSchema {
 public:
  AttributeSchema() = default;
  // Throws kInvalidSchema on duplicate names/labels or empty vocabularies.
  AttributeSchema(std::vector<Attribute> attributes,
                  std::vector<std::string> classes);

  const std::vector<Attribute>& attributes() const { return attributes_; }
  const std::vector<std::string>& classes() const { return classes_; }

  std::size_t attribute_count() const { return attributes_.size(); }
  std::size_t class_count() const { return classes_.size(); }
  const Attribute& attribute(std::size_t index) const {
    return attributes_[index];
  }

  std::optional<std::size_t> find_attribute(std::string_view name) const;
  std::optional<std::size_t> find_class(std::string_view label) const;
  std::optional<std::size_t> find_group(std::size_t attribute,
                                        std::string_view label) const;

  // Throwing variants: kUnknownAttribute / kUnknownClass / kUnknownGroup.
  std::size_t attribute_index(std::string_view name) const;
  std::size_t class_index(std::string_view label) const;
  std::size_t group_index(std::size_t attribute, std::string_view label) const;

  bool operator==(const AttributeSchema&) const = default;

 private:
  std::vector<Attribute> attributes_;
  std::vector<std::string> classes_;
};

}  // namespace fairaudit
