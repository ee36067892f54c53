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

#include "fairaudit/report.hpp"

#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <set>

#include <json.hpp>

#include "fairaudit/error.hpp"
#include "fairaudit/io.hpp"

namespace fairaudit {
namespace {

using Json = nlohmann::ordered_json;

// nlohmann prints the shortest round-trip form; reports use a fixed 17
// significant digits, so the document is rendered here.
void emit(const Json& value, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (value.type()) {
    case Json::value_t::object: {
      if (value.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, item] : value.items()) {
        if (!first) out += ",\n";
        first = false;
        out += inner + Json(key).dump() + ": ";
        emit(item, out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      const bool flat = std::none_of(value.begin(), value.end(), [](const Json& v) {
        return v.is_structured();
      });
      if (value.empty()) {
        out += "[]";
      } else if (flat) {
        out += "[";
        for (std::size_t i = 0; i < value.size(); ++i) {
          if (i) out += ", ";
          emit(value[i], out, indent + 1);
        }
        out += "]";
      } else {
        out += "[\n";
        for (std::size_t i = 0; i < value.size(); ++i) {
          if (i) out += ",\n";
          out += inner;
          emit(value[i], out, indent + 1);
        }
        out += "\n" + pad + "]";
      }
      return;
    }
    case Json::value_t::number_float:
      out += format_double(value.get<double>());
      return;
    default:
      out += value.dump();
  }
}

std::string render(const Json& doc) {
  std::string out;
  emit(doc, out, 0);
  out += "\n";
  return out;
}

Json optional_number(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

std::optional<double> read_optional(const Json& v) {
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

template <typename T>
Json matrix_json(const Matrix<T>& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (const auto& v : m.row(r)) {
      if constexpr (std::is_same_v<T, std::optional<double>>) {
        row.push_back(optional_number(v));
      } else {
        row.push_back(v);
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename T>
Matrix<T> matrix_from_json(const Json& rows, std::size_t r, std::size_t c) {
  Matrix<T> m(r, c);
  if (rows.size() != r) fail(ErrorCode::kParseError, "matrix row count mismatch");
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) {
      fail(ErrorCode::kParseError, "matrix column count mismatch");
    }
    for (std::size_t j = 0; j < c; ++j) {
      if constexpr (std::is_same_v<T, std::optional<double>>) {
        m(i, j) = read_optional(rows[i][j]);
      } else {
        m(i, j) = rows[i][j].get<T>();
      }
    }
  }
  return m;
}

Json schema_json(const AttributeSchema& schema) {
  return Json::parse(io::schema_to_json(schema));
}

std::string file_stem(const std::string& name) {
  std::string out;
  for (char ch : name) {
    out.push_back(std::isalnum(static_cast<unsigned char>(ch)) || ch == '-'
                      ? ch
                      : '_');
  }
  return out;
}

std::string optional_cell(const std::optional<double>& v) {
  return v ? format_double(*v) : "";
}

std::string join_csv(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ",";
    line += io::csv_escape(fields[i]);
  }
  return line + "\n";
}

LabeledDataset true_label_view(const EvaluationSet& evals) {
  LabeledDataset dataset(evals.schema());
  dataset.reserve(evals.size());
  std::vector<std::uint32_t> groups(evals.schema().attribute_count());
  for (std::size_t row = 0; row < evals.size(); ++row) {
    for (std::size_t a = 0; a < groups.size(); ++a) {
      groups[a] = evals.group_column(a)[row];
    }
    dataset.add_indexed(evals.id(row), evals.true_column()[row], groups);
  }
  return dataset;
}

std::vector<std::string> resolve_attributes(const AttributeSchema& schema,
                                            const std::vector<std::string>& requested) {
  std::vector<std::string> out;
  if (requested.empty()) {
    for (const auto& a : schema.attributes()) out.push_back(a.name);
    return out;
  }
  for (const auto& name : requested) {
    out.push_back(schema.attribute(schema.attribute_index(name)).name);
  }
  return out;
}

}  // namespace

std::string format_double(double value) {
  if (!std::isfinite(value)) return "null";
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string tool_version() { return "0.1.0"; }

std::string current_timestamp() {
  if (const char* pinned = std::getenv("FAIRAUDIT_TIMESTAMP")) return pinned;
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

AttributeAudit audit_attribute(const LabeledDataset& dataset,
                               std::string_view attribute) {
  const auto table = build_contingency(dataset, attribute);
  const auto joint = normalize(table);
  AttributeAudit out;
  out.attribute = table.attribute();
  out.groups = table.groups();
  out.classes = table.classes();
  out.counts = table.counts();
  out.distribution = group_distribution(dataset, attribute);
  if (out.groups.size() >= 2) out.nsd = nsd(out.distribution);
  try {
    out.nmi = nmi(joint);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kDegenerateJoint) throw;
  }
  out.mutual_information = mutual_information(joint);
  out.npmi = npmi_matrix(joint).values;
  return out;
}

AuditReport audit_dataset(const LabeledDataset& dataset, std::string path,
                          const std::vector<std::string>& attributes) {
  AuditReport report;
  report.dataset = {std::move(path), dataset.size(), dataset.schema()};
  for (const auto& name : resolve_attributes(dataset.schema(), attributes)) {
    report.attributes.push_back(audit_attribute(dataset, name));
  }
  report.provenance.version = tool_version();
  report.provenance.generated_at = current_timestamp();
  return report;
}

ModelAudit audit_model(const EvaluationSet& evals, std::string path,
                       const SupportPolicy& policy,
                       const std::vector<std::string>& attributes) {
  ModelAudit out;
  out.path = std::move(path);
  out.rows = evals.size();
  out.accuracy = overall_accuracy(evals);
  for (const auto& name : resolve_attributes(evals.schema(), attributes)) {
    const auto table = recall_table(evals, name);
    out.attributes.push_back({overall_disparity(table, policy), table.groups(),
                              table.recall_matrix(), table.support_matrix()});
  }
  return out;
}

AuditReport audit_evaluations(const EvaluationSet& evals, std::string path,
                              const SupportPolicy& policy,
                              const std::vector<std::string>& attributes) {
  AuditReport report = audit_dataset(true_label_view(evals), path, attributes);
  report.model = audit_model(evals, std::move(path), policy, attributes);
  return report;
}

std::string report_to_json(const AuditReport& report) {
  Json doc;
  doc["dataset"] = {{"path", report.dataset.path},
                    {"rows", report.dataset.rows},
                    {"schema", schema_json(report.dataset.schema)}};
  Json attributes = Json::array();
  for (const auto& a : report.attributes) {
    Json distribution = Json::array();
    for (double v : a.distribution) distribution.push_back(v);
    attributes.push_back({{"attribute", a.attribute},
                          {"groups", a.groups},
                          {"classes", a.classes},
                          {"counts", matrix_json(a.counts)},
                          {"distribution", distribution},
                          {"nsd", optional_number(a.nsd)},
                          {"nmi", optional_number(a.nmi)},
                          {"mutual_information", a.mutual_information},
                          {"npmi", matrix_json(a.npmi)}});
  }
  doc["attributes"] = attributes;
  if (report.model) {
    const auto& m = *report.model;
    Json model_attributes = Json::array();
    for (const auto& a : m.attributes) {
      Json per_class = Json::array();
      for (const auto& c : a.disparity.per_class) {
        per_class.push_back({{"class", c.class_label},
                             {"intraclass_disparity", c.value},
                             {"excluded_groups", c.excluded_groups},
                             {"single_group", c.single_group}});
      }
      model_attributes.push_back({{"attribute", a.disparity.attribute},
                                  {"min_support", a.disparity.min_support},
                                  {"overall_disparity", a.disparity.overall},
                                  {"groups", a.groups},
                                  {"per_class", per_class},
                                  {"recall", matrix_json(a.recall)},
                                  {"support", matrix_json(a.support)}});
    }
    doc["model"] = {{"path", m.path},
                    {"rows", m.rows},
                    {"accuracy", m.accuracy},
                    {"attributes", model_attributes}};
  }
  Json seeds = Json::object();
  for (const auto& [name, seed] : report.provenance.seeds) seeds[name] = seed;
  doc["provenance"] = {{"tool", report.provenance.tool},
                       {"version", report.provenance.version},
                       {"seeds", seeds},
                       {"generated_at", report.provenance.generated_at}};
  return render(doc);
}

AuditReport report_from_json(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParseError, std::string("report: ") + e.what());
  }
  try {
    AuditReport report;
    const auto& dataset = doc.at("dataset");
    report.dataset.path = dataset.at("path").get<std::string>();
    report.dataset.rows = dataset.at("rows").get<std::uint64_t>();
    report.dataset.schema = io::parse_schema(dataset.at("schema").dump());
    for (const auto& a : doc.at("attributes")) {
      AttributeAudit audit;
      audit.attribute = a.at("attribute").get<std::string>();
      audit.groups = a.at("groups").get<std::vector<std::string>>();
      audit.classes = a.at("classes").get<std::vector<std::string>>();
      audit.counts = matrix_from_json<std::uint64_t>(
          a.at("counts"), audit.groups.size(), audit.classes.size());
      audit.distribution = a.at("distribution").get<std::vector<double>>();
      audit.nsd = read_optional(a.at("nsd"));
      audit.nmi = read_optional(a.at("nmi"));
      audit.mutual_information = a.at("mutual_information").get<double>();
      audit.npmi = matrix_from_json<std::optional<double>>(
          a.at("npmi"), audit.groups.size(), audit.classes.size());
      report.attributes.push_back(std::move(audit));
    }
    if (doc.contains("model") && !doc.at("model").is_null()) {
      const auto& m = doc.at("model");
      ModelAudit model;
      model.path = m.at("path").get<std::string>();
      model.rows = m.at("rows").get<std::uint64_t>();
      model.accuracy = m.at("accuracy").get<double>();
      for (const auto& a : m.at("attributes")) {
        ModelAttributeAudit audit;
        audit.groups = a.at("groups").get<std::vector<std::string>>();
        audit.disparity.attribute = a.at("attribute").get<std::string>();
        audit.disparity.min_support = a.at("min_support").get<std::uint64_t>();
        audit.disparity.overall = a.at("overall_disparity").get<double>();
        for (const auto& c : a.at("per_class")) {
          audit.disparity.per_class.push_back(
              {c.at("class").get<std::string>(),
               c.at("intraclass_disparity").get<double>(),
               c.at("excluded_groups").get<std::vector<std::string>>(),
               c.at("single_group").get<bool>()});
        }
        const auto classes = audit.disparity.per_class.size();
        audit.recall = matrix_from_json<std::optional<double>>(
            a.at("recall"), classes, audit.groups.size());
        audit.support = matrix_from_json<std::uint64_t>(
            a.at("support"), classes, audit.groups.size());
        model.attributes.push_back(std::move(audit));
      }
      report.model = std::move(model);
    }
    const auto& p = doc.at("provenance");
    report.provenance.tool = p.at("tool").get<std::string>();
    report.provenance.version = p.at("version").get<std::string>();
    for (const auto& [name, seed] : p.at("seeds").items()) {
      report.provenance.seeds.emplace_back(name, seed.get<std::uint64_t>());
    }
    report.provenance.generated_at = p.at("generated_at").get<std::string>();
    return report;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParseError, std::string("report: ") + e.what());
  }
}

std::string npmi_to_csv(const AttributeAudit& audit) {
  std::vector<std::string> header{"group"};
  header.insert(header.end(), audit.classes.begin(), audit.classes.end());
  std::string out = join_csv(header);
  for (std::size_t g = 0; g < audit.groups.size(); ++g) {
    std::vector<std::string> row{audit.groups[g]};
    for (const auto& v : audit.npmi.row(g)) row.push_back(optional_cell(v));
    out += join_csv(row);
  }
  return out;
}

std::vector<std::filesystem::path> write_report(const AuditReport& report,
                                                const std::filesystem::path& dir,
                                                ReportFormat format) {
  std::vector<std::filesystem::path> written;
  auto put = [&](const std::string& name, const std::string& content) {
    const auto path = dir / name;
    io::write_text_atomic(path, content);
    written.push_back(path);
  };
  if (format == ReportFormat::kJson) {
    put("report.json", report_to_json(report));
    return written;
  }

  std::string bias = join_csv({"attribute", "groups", "nsd", "nmi",
                               "mutual_information"});
  for (const auto& a : report.attributes) {
    bias += join_csv({a.attribute, std::to_string(a.groups.size()),
                      optional_cell(a.nsd), optional_cell(a.nmi),
                      format_double(a.mutual_information)});
  }
  put("dataset_bias.csv", bias);

  for (const auto& a : report.attributes) {
    const auto stem = file_stem(a.attribute);
    std::string dist = join_csv({"group", "count", "fraction"});
    for (std::size_t g = 0; g < a.groups.size(); ++g) {
      std::uint64_t count = 0;
      for (auto v : a.counts.row(g)) count += v;
      dist += join_csv({a.groups[g], std::to_string(count),
                        format_double(a.distribution[g])});
    }
    put(stem + "_distribution.csv", dist);

    std::vector<std::string> header{"group"};
    header.insert(header.end(), a.classes.begin(), a.classes.end());
    std::string counts = join_csv(header);
    for (std::size_t g = 0; g < a.groups.size(); ++g) {
      std::vector<std::string> row{a.groups[g]};
      for (auto v : a.counts.row(g)) row.push_back(std::to_string(v));
      counts += join_csv(row);
    }
    put(stem + "_counts.csv", counts);
    put(stem + "_npmi.csv", npmi_to_csv(a));
  }

  if (report.model) {
    const auto& m = *report.model;
    std::string summary = join_csv({"metric", "attribute", "value"});
    summary += join_csv({"accuracy", "", format_double(m.accuracy)});
    for (const auto& a : m.attributes) {
      summary += join_csv({"overall_disparity", a.disparity.attribute,
                           format_double(a.disparity.overall)});
    }
    put("model_summary.csv", summary);

    for (const auto& a : m.attributes) {
      const auto stem = file_stem(a.disparity.attribute);
      std::string disparity = join_csv(
          {"class", "intraclass_disparity", "excluded_groups", "single_group"});
      for (const auto& c : a.disparity.per_class) {
        std::string excluded;
        for (const auto& g : c.excluded_groups) {
          excluded += (excluded.empty() ? "" : ";") + g;
        }
        disparity += join_csv({c.class_label, format_double(c.value), excluded,
                               c.single_group ? "true" : "false"});
      }
      put(stem + "_disparity.csv", disparity);

      std::vector<std::string> header{"class"};
      for (const auto& g : a.groups) header.push_back(g);
      for (const auto& g : a.groups) header.push_back("support_" + g);
      std::string recall = join_csv(header);
      for (std::size_t c = 0; c < a.recall.rows(); ++c) {
        std::vector<std::string> row{a.disparity.per_class[c].class_label};
        for (const auto& v : a.recall.row(c)) row.push_back(optional_cell(v));
        for (auto v : a.support.row(c)) row.push_back(std::to_string(v));
        recall += join_csv(row);
      }
      put(stem + "_recall.csv", recall);
    }
  }
  return written;
}

ComparisonTable compare_reports(const std::vector<AuditReport>& reports) {
  if (reports.empty()) fail(ErrorCode::kInvalidSpec, "no reports to compare");
  const auto& reference = reports.front().dataset.schema;
  auto attribute_names = [](const AttributeSchema& s) {
    std::set<std::string> names;
    for (const auto& a : s.attributes()) names.insert(a.name);
    return names;
  };
  auto class_names = [](const AttributeSchema& s) {
    return std::set<std::string>(s.classes().begin(), s.classes().end());
  };
  for (const auto& r : reports) {
    if (attribute_names(r.dataset.schema) != attribute_names(reference)) {
      fail(ErrorCode::kSchemaMismatch,
           "'" + r.dataset.path + "' has a different attribute set");
    }
    if (class_names(r.dataset.schema) != class_names(reference)) {
      fail(ErrorCode::kSchemaMismatch,
           "'" + r.dataset.path + "' has a different class set");
    }
  }

  const bool any_model = std::any_of(reports.begin(), reports.end(),
                                     [](const auto& r) { return r.model.has_value(); });
  ComparisonTable table;
  table.header = {"dataset", "rows"};
  for (const auto& a : reference.attributes()) table.header.push_back("nsd_" + a.name);
  for (const auto& a : reference.attributes()) table.header.push_back("nmi_" + a.name);
  if (any_model) {
    table.header.push_back("accuracy");
    for (const auto& a : reference.attributes()) table.header.push_back("od_" + a.name);
  }

  for (const auto& r : reports) {
    std::vector<std::string> row{r.dataset.path, std::to_string(r.dataset.rows)};
    auto find_audit = [&](const std::string& name) -> const AttributeAudit* {
      for (const auto& a : r.attributes)
        if (a.attribute == name) return &a;
      return nullptr;
    };
    for (const auto& a : reference.attributes()) {
      const auto* audit = find_audit(a.name);
      row.push_back(audit ? optional_cell(audit->nsd) : "");
    }
    for (const auto& a : reference.attributes()) {
      const auto* audit = find_audit(a.name);
      row.push_back(audit ? optional_cell(audit->nmi) : "");
    }
    if (any_model) {
      row.push_back(r.model ? format_double(r.model->accuracy) : "");
      for (const auto& a : reference.attributes()) {
        std::string cell;
        if (r.model) {
          for (const auto& m : r.model->attributes) {
            if (m.disparity.attribute == a.name) {
              cell = format_double(m.disparity.overall);
            }
          }
        }
        row.push_back(cell);
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string comparison_to_csv(const ComparisonTable& table) {
  std::string out = join_csv(table.header);
  for (const auto& row : table.rows) out += join_csv(row);
  return out;
}

std::string runs_to_csv(const std::vector<std::map<std::string, double>>& runs,
                        const std::vector<std::uint64_t>& seeds) {
  std::vector<std::string> header{"run", "seed"};
  if (!runs.empty()) {
    for (const auto& [name, unused] : runs.front()) header.push_back(name);
  }
  std::string out = join_csv(header);
  for (std::size_t i = 0; i < runs.size(); ++i) {
    std::vector<std::string> row{std::to_string(i + 1), std::to_string(seeds.at(i))};
    for (const auto& [unused, value] : runs[i]) row.push_back(format_double(value));
    out += join_csv(row);
  }
  return out;
}

std::string aggregate_to_json(const RunAggregate& aggregate,
                              const Provenance& provenance) {
  Json doc;
  doc["runs"] = aggregate.runs;
  Json metrics = Json::object();
  for (const auto& [name, summary] : aggregate.metrics) {
    char display[64];
    std::snprintf(display, sizeof display, "%.3f±%.3f", summary.mean,
                  summary.std);
    metrics[name] = {{"mean", summary.mean},
                     {"std", summary.std},
                     {"display", display}};
  }
  doc["metrics"] = metrics;
  Json seeds = Json::object();
  for (const auto& [name, seed] : provenance.seeds) seeds[name] = seed;
  doc["provenance"] = {{"tool", provenance.tool},
                       {"version", provenance.version},
                       {"seeds", seeds},
                       {"generated_at", provenance.generated_at}};
  return render(doc);
}

std::string aggregate_to_csv(const RunAggregate& aggregate) {
  std::string out = join_csv({"metric", "mean", "std", "runs"});
  for (const auto& [name, summary] : aggregate.metrics) {
    out += join_csv({name, format_double(summary.mean),
                     format_double(summary.std), std::to_string(aggregate.runs)});
  }
  return out;
}

}  // namespace fairaudit
