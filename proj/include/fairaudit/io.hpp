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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fairaudit/dataset.hpp"
#include "fairaudit/schema.hpp"
#include "fairaudit/simulate.hpp"

namespace fairaudit::io {

// Minimal RFC 4180 reader: quoted fields, doubled quotes, CRLF tolerated.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable parse_csv(const std::string& text);
CsvTable read_csv(const std::filesystem::path& path);
std::string csv_escape(const std::string& field);

std::string read_text(const std::filesystem::path& path);
// Writes to a sibling temporary file and renames it into place.
void write_text_atomic(const std::filesystem::path& path,
                       const std::string& content);

// Schema sidecar (JSON):
//   {"classes": [...], "attributes": {"gender": ["F", "M"], ...}}
// Key order in "attributes" is the declared attribute order.
AttributeSchema parse_schema(const std::string& text);
AttributeSchema read_schema(const std::filesystem::path& path);
std::string schema_to_json(const AttributeSchema& schema);

// Dataset CSV: columns `id`, `class`, then one column per attribute. Without
// a schema, every other column is an attribute and labels are ordered by
// first appearance.
LabeledDataset parse_dataset(const CsvTable& table,
                             const std::optional<AttributeSchema>& schema);
LabeledDataset read_dataset(const std::filesystem::path& path,
                            const std::optional<AttributeSchema>& schema);
std::string dataset_to_csv(const LabeledDataset& dataset);
void write_dataset(const LabeledDataset& dataset,
                   const std::filesystem::path& path);

// Inline evaluations CSV: `id`, `true_class`, `predicted_class`, attributes.
EvaluationSet parse_evaluations(const CsvTable& table,
                                const std::optional<AttributeSchema>& schema);
EvaluationSet read_evaluations(const std::filesystem::path& path,
                               const std::optional<AttributeSchema>& schema);
// Join form: a predictions CSV (`id`, `predicted_class`) matched by id to a
// dataset CSV. Output follows dataset row order. Throws kUnmatchedId when a
// prediction id is not in the dataset or a dataset id has no prediction.
EvaluationSet join_evaluations(const CsvTable& predictions,
                               const CsvTable& dataset,
                               const std::optional<AttributeSchema>& schema);
EvaluationSet read_evaluations_joined(
    const std::filesystem::path& predictions,
    const std::filesystem::path& dataset,
    const std::optional<AttributeSchema>& schema);
std::string evaluations_to_csv(const EvaluationSet& evals);

// Population spec (JSON):
//   {"schema": {...}, "total_count": N, "seed": S,
//    "cells": [{"class": "x", "groups": {"gender": "F"}, "weight": 1.5}, ...]}
PopulationSpec parse_population_spec(const std::string& text);

// Classifier profile (JSON):
//   {"attribute": "gender", "schema": {...}?,
//    "rows": [{"class": "x", "group": "F", "predicted": {"x": 0.8, "y": 0.2}},
//             {"class": "y", "group": "F", "recall": 0.7}, ...]}
// "recall" places r on the diagonal and spreads 1 - r over the other classes.
ClassifierProfile parse_classifier_profile(const std::string& text,
                                           const AttributeSchema& schema);

}  // namespace fairaudit::io
