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

#include <json.hpp>

#include "fairaudit/error.hpp"
#include "fairaudit/io.hpp"

namespace fairaudit::io {
namespace {

using Json = nlohmann::ordered_json;

Json parse_json(const std::string& text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParseError, std::string(what) + ": " + e.what());
  }
}

const Json& member(const Json& object, const char* key, const char* what) {
  if (!object.is_object() || !object.contains(key)) {
    fail(ErrorCode::kInvalidSpec,
         std::string(what) + ": missing key '" + key + "'");
  }
  return object.at(key);
}

std::vector<std::string> string_list(const Json& value, const char* what) {
  if (!value.is_array()) {
    fail(ErrorCode::kInvalidSpec, std::string(what) + " must be an array");
  }
  std::vector<std::string> out;
  for (const auto& item : value) {
    if (!item.is_string()) {
      fail(ErrorCode::kInvalidSpec, std::string(what) + " must hold strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

AttributeSchema schema_from_json(const Json& doc) {
  const auto classes = string_list(member(doc, "classes", "schema"), "classes");
  std::vector<Attribute> attributes;
  const auto& attrs = member(doc, "attributes", "schema");
  if (attrs.is_object()) {
    for (const auto& [name, groups] : attrs.items()) {
      attributes.push_back({name, string_list(groups, "attribute groups")});
    }
  } else if (attrs.is_array()) {
    // [{"name": ..., "groups": [...]}, ...]
    for (const auto& item : attrs) {
      attributes.push_back(
          {member(item, "name", "attribute").get<std::string>(),
           string_list(member(item, "groups", "attribute"), "attribute groups")});
    }
  } else {
    fail(ErrorCode::kInvalidSpec, "schema attributes must be an object");
  }
  return AttributeSchema(std::move(attributes), classes);
}

template <typename T>
T number(const Json& value, const char* what) {
  if (!value.is_number()) {
    fail(ErrorCode::kInvalidSpec, std::string(what) + " must be a number");
  }
  if constexpr (std::is_integral_v<T>) {
    if (!value.is_number_unsigned()) {
      fail(ErrorCode::kInvalidSpec,
           std::string(what) + " must be a non-negative integer");
    }
  }
  return value.get<T>();
}

std::size_t label_index(std::optional<std::size_t> index,
                        const std::string& label, const char* what) {
  if (!index) {
    fail(ErrorCode::kInvalidSpec,
         std::string(what) + " '" + label + "' is not in the schema");
  }
  return *index;
}

}  // namespace

AttributeSchema parse_schema(const std::string& text) {
  try {
    return schema_from_json(parse_json(text, "schema"));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kInvalidSpec, std::string("schema: ") + e.what());
  }
}

AttributeSchema read_schema(const std::filesystem::path& path) {
  try {
    return parse_schema(read_text(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIoFailure) throw;
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string schema_to_json(const AttributeSchema& schema) {
  Json doc;
  doc["classes"] = schema.classes();
  doc["attributes"] = Json::object();
  for (const auto& attribute : schema.attributes()) {
    doc["attributes"][attribute.name] = attribute.groups;
  }
  return doc.dump(2) + "\n";
}

PopulationSpec parse_population_spec(const std::string& text) {
  const Json doc = parse_json(text, "population spec");
  try {
    PopulationSpec spec;
    spec.schema = schema_from_json(member(doc, "schema", "population spec"));
    spec.total_count = number<std::uint64_t>(
        member(doc, "total_count", "population spec"), "total_count");
    if (doc.contains("seed")) spec.seed = number<std::uint64_t>(doc["seed"], "seed");
    const auto& schema = spec.schema;
    for (const auto& item : member(doc, "cells", "population spec")) {
      PopulationCell cell;
      const auto cls = member(item, "class", "cell").get<std::string>();
      cell.class_index = static_cast<std::uint32_t>(
          label_index(schema.find_class(cls), cls, "class"));
      const auto& groups = member(item, "groups", "cell");
      cell.group_indices.resize(schema.attribute_count());
      for (std::size_t a = 0; a < schema.attribute_count(); ++a) {
        const auto& name = schema.attribute(a).name;
        const auto label = member(groups, name.c_str(), "cell groups")
                               .get<std::string>();
        cell.group_indices[a] = static_cast<std::uint32_t>(
            label_index(schema.find_group(a, label), label, "group"));
      }
      cell.weight = number<double>(member(item, "weight", "cell"), "weight");
      if (!(cell.weight >= 0.0)) {
        fail(ErrorCode::kInvalidSpec, "cell weight must be non-negative");
      }
      spec.cells.push_back(std::move(cell));
    }
    if (spec.total_count < 1) fail(ErrorCode::kInvalidSpec, "total_count < 1");
    return spec;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kInvalidSpec, std::string("population spec: ") + e.what());
  }
}

ClassifierProfile parse_classifier_profile(const std::string& text,
                                           const AttributeSchema& schema) {
  const Json doc = parse_json(text, "classifier profile");
  try {
    if (doc.contains("schema") && !(schema_from_json(doc["schema"]) == schema)) {
      fail(ErrorCode::kSchemaMismatch,
           "profile schema differs from the population schema");
    }
    const auto attribute =
        member(doc, "attribute", "classifier profile").get<std::string>();
    ClassifierProfile profile(schema, attribute);
    const std::size_t a = profile.attribute_index();
    for (const auto& item : member(doc, "rows", "classifier profile")) {
      const auto cls = member(item, "class", "profile row").get<std::string>();
      const auto group = member(item, "group", "profile row").get<std::string>();
      const auto c = label_index(schema.find_class(cls), cls, "class");
      const auto g = label_index(schema.find_group(a, group), group, "group");
      ClassifierProfile::Row row(schema.class_count(), 0.0);
      if (item.contains("recall")) {
        const double r = number<double>(item["recall"], "recall");
        const std::size_t others = schema.class_count() - 1;
        for (std::size_t k = 0; k < row.size(); ++k) {
          row[k] = k == c ? r
                          : (others > 0 ? (1.0 - r) / static_cast<double>(others)
                                        : 0.0);
        }
      } else {
        for (const auto& [label, p] :
             member(item, "predicted", "profile row").items()) {
          const auto k = label_index(schema.find_class(label), label, "class");
          row[k] = number<double>(p, "predicted probability");
        }
      }
      profile.set_row(c, g, std::move(row));
    }
    return profile;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kInvalidSpec, std::string("classifier profile: ") + e.what());
  }
}

}  // namespace fairaudit::io
