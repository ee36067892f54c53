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

#include "fairaudit/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <ostream>

#include <CLI11.hpp>

#include "fairaudit/error.hpp"
#include "fairaudit/io.hpp"
#include "fairaudit/random.hpp"
#include "fairaudit/report.hpp"
#include "fairaudit/resample.hpp"
#include "fairaudit/simulate.hpp"

namespace fairaudit::cli {
namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

fs::path output_path(const std::string& flag, const char* fallback_name) {
  if (!flag.empty()) return flag;
  if (const char* dir = std::getenv("FAIRAUDIT_OUT_DIR")) {
    return fallback_name ? fs::path(dir) / fallback_name : fs::path(dir);
  }
  throw UsageError("--out is required when FAIRAUDIT_OUT_DIR is not set");
}

std::optional<AttributeSchema> load_schema(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return io::read_schema(path);
}

ReportFormat parse_format(const std::string& format) {
  if (format == "json") return ReportFormat::kJson;
  if (format == "csv") return ReportFormat::kCsvBundle;
  throw UsageError("--format must be json or csv");
}

void print_dataset_summary(const AuditReport& report, std::ostream& out) {
  out << "rows: " << report.dataset.rows << "\n";
  for (const auto& a : report.attributes) {
    out << a.attribute << " (" << a.groups.size() << " groups): nsd="
        << (a.nsd ? format_double(*a.nsd) : "n/a")
        << " nmi=" << (a.nmi ? format_double(*a.nmi) : "n/a") << "\n";
  }
}

struct AuditDatasetArgs {
  std::string data, schema, out, format = "json";
  std::vector<std::string> attributes;
};

int audit_dataset_cmd(const AuditDatasetArgs& args, std::ostream& out) {
  const auto dir = output_path(args.out, nullptr);
  const auto format = parse_format(args.format);
  const auto dataset = io::read_dataset(args.data, load_schema(args.schema));
  const auto report = audit_dataset(dataset, args.data, args.attributes);
  for (const auto& path : write_report(report, dir, format)) {
    out << "wrote " << path.string() << "\n";
  }
  print_dataset_summary(report, out);
  return kExitOk;
}

struct AuditModelArgs {
  std::string evals, data, schema, out, format = "json";
  std::vector<std::string> attributes;
  std::uint64_t min_support = 1;
};

int audit_model_cmd(const AuditModelArgs& args, std::ostream& out,
                    std::ostream& err) {
  const auto dir = output_path(args.out, nullptr);
  const auto format = parse_format(args.format);
  const auto schema = load_schema(args.schema);
  const auto evals =
      args.data.empty()
          ? io::read_evaluations(args.evals, schema)
          : io::read_evaluations_joined(args.evals, args.data, schema);
  const auto report = audit_evaluations(
      evals, args.evals, SupportPolicy{args.min_support}, args.attributes);
  for (const auto& path : write_report(report, dir, format)) {
    out << "wrote " << path.string() << "\n";
  }
  const auto& model = *report.model;
  out << "rows: " << model.rows << "\naccuracy: " << format_double(model.accuracy)
      << "\n";
  for (const auto& a : model.attributes) {
    out << a.disparity.attribute << ": od=" << format_double(a.disparity.overall)
        << "\n";
    for (const auto& c : a.disparity.per_class) {
      out << "  " << c.class_label << ": id=" << format_double(c.value) << "\n";
      if (!c.excluded_groups.empty()) {
        err << "warning: " << a.disparity.attribute << "/" << c.class_label
            << ": excluded groups below support " << a.disparity.min_support
            << ":";
        for (const auto& g : c.excluded_groups) err << " " << g;
        err << "\n";
      }
      if (c.single_group) {
        err << "warning: " << a.disparity.attribute << "/" << c.class_label
            << ": only one group has support; disparity set to 0\n";
      }
    }
  }
  return kExitOk;
}

struct SubsetArgs {
  std::string data, schema, kind, attribute, group, out;
  std::vector<std::string> strat_attributes;
  double fraction = 0.0;
  bool match = false;
  std::uint64_t seed = 0;
};

int subset_cmd(const SubsetArgs& args, std::ostream& out) {
  SubsetSpec spec;
  spec.seed = args.seed;
  if (args.kind == "balanced") {
    if (args.attribute.empty()) throw UsageError("balanced needs --attribute");
    spec.kind = BalancedSpec{args.attribute};
  } else if (args.kind == "stratified") {
    if (args.fraction == 0.0) throw UsageError("stratified needs --fraction");
    auto attributes = args.strat_attributes;
    if (attributes.empty() && !args.attribute.empty()) {
      attributes.push_back(args.attribute);
    }
    spec.kind = StratifiedSpec{args.fraction, attributes};
  } else if (args.kind == "single-group") {
    if (args.attribute.empty() || args.group.empty()) {
      throw UsageError("single-group needs --attribute and --group");
    }
    spec.kind = SingleGroupSpec{args.attribute, args.group, args.match};
  } else {
    throw UsageError("--kind must be balanced, stratified or single-group");
  }
  const auto path = output_path(args.out, "subset.csv");
  const auto dataset = io::read_dataset(args.data, load_schema(args.schema));
  const auto subset = make_subset(dataset, spec);
  io::write_dataset(subset, path);

  out << "wrote " << path.string() << "\nseed: " << args.seed
      << "\nrows: " << subset.size() << "\n";
  std::vector<std::uint64_t> totals(subset.schema().class_count(), 0);
  for (auto c : subset.class_column()) ++totals[c];
  for (std::size_t c = 0; c < totals.size(); ++c) {
    out << "  " << subset.schema().classes()[c] << ": " << totals[c] << "\n";
  }
  return kExitOk;
}

struct SimulateArgs {
  std::string population, profile, out;
  std::size_t runs = 10;
  std::uint64_t seed = 0;
  std::uint64_t min_support = 1;
};

int simulate_cmd(const SimulateArgs& args, std::ostream& out) {
  if (args.runs < 1) throw UsageError("--runs must be at least 1");
  const auto dir = output_path(args.out, nullptr);
  const auto spec = io::parse_population_spec(io::read_text(args.population));
  const auto profile =
      io::parse_classifier_profile(io::read_text(args.profile), spec.schema);
  const auto population = generate_population(spec);
  const auto analytic = analytic_od(profile);

  std::vector<std::map<std::string, double>> runs;
  std::vector<std::uint64_t> seeds;
  const SupportPolicy policy{args.min_support};
  for (std::size_t r = 0; r < args.runs; ++r) {
    const std::uint64_t run_seed = substream_seed(args.seed, r);
    const auto evals = simulate_classifier(population, profile, run_seed);
    const auto model = audit_model(evals, "", policy);
    std::map<std::string, double> metrics{{"accuracy", model.accuracy}};
    for (const auto& a : model.attributes) {
      metrics["od_" + a.disparity.attribute] = a.disparity.overall;
    }
    runs.push_back(std::move(metrics));
    seeds.push_back(run_seed);
  }
  const auto aggregate = aggregate_runs(runs);

  Provenance provenance;
  provenance.version = tool_version();
  provenance.seeds = {{"seed", args.seed}, {"population_seed", spec.seed}};
  provenance.generated_at = current_timestamp();

  io::write_dataset(population, dir / "population.csv");
  io::write_text_atomic(dir / "runs.csv", runs_to_csv(runs, seeds));
  io::write_text_atomic(dir / "aggregate.csv", aggregate_to_csv(aggregate));
  io::write_text_atomic(dir / "aggregate.json",
                        aggregate_to_json(aggregate, provenance));

  out << "wrote " << dir.string() << "\nseed: " << args.seed
      << "\nruns: " << aggregate.runs << "\n";
  out << "analytic od_" << analytic.attribute << ": "
      << format_double(analytic.overall) << "\n";
  for (const auto& [name, summary] : aggregate.metrics) {
    out << name << ": mean=" << format_double(summary.mean)
        << " std=" << format_double(summary.std) << "\n";
  }
  return kExitOk;
}

struct CompareArgs {
  std::vector<std::string> reports;
  std::string out;
};

int compare_cmd(const CompareArgs& args, std::ostream& out) {
  const auto path = output_path(args.out, "comparison.csv");
  std::vector<AuditReport> reports;
  for (const auto& p : args.reports) {
    try {
      reports.push_back(report_from_json(io::read_text(p)));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kIoFailure) throw;
      throw Error(e.code(), p + ": " + e.what());
    }
  }
  const auto table = compare_reports(reports);
  const auto csv = comparison_to_csv(table);
  io::write_text_atomic(path, csv);
  out << "wrote " << path.string() << "\n" << csv;
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Demographic bias audit for multi-class classification data"};
  app.name("fairaudit");
  app.require_subcommand(1, 1);

  AuditDatasetArgs ad;
  auto* audit_ds = app.add_subcommand(
      "audit-dataset", "Representational and stereotypical bias of a dataset");
  audit_ds->add_option("--data", ad.data, "Dataset CSV")->required();
  audit_ds->add_option("--schema", ad.schema, "Schema sidecar (JSON)");
  audit_ds->add_option("--attributes", ad.attributes, "Attributes to audit")
      ->delimiter(',');
  audit_ds->add_option("--out", ad.out, "Output directory");
  audit_ds->add_option("--format", ad.format, "json or csv");

  AuditModelArgs am;
  auto* audit_md = app.add_subcommand(
      "audit-model", "Accuracy and recall disparity of model predictions");
  audit_md->add_option("--evals", am.evals,
                       "Evaluations CSV, or predictions CSV with --data")
      ->required();
  audit_md->add_option("--data", am.data, "Dataset CSV to join predictions to");
  audit_md->add_option("--schema", am.schema, "Schema sidecar (JSON)");
  audit_md->add_option("--attributes", am.attributes, "Attributes to audit")
      ->delimiter(',');
  audit_md->add_option("--out", am.out, "Output directory");
  audit_md->add_option("--min-support", am.min_support,
                       "Minimum records for a (class, group) recall to count");
  audit_md->add_option("--format", am.format, "json or csv");

  SubsetArgs sb;
  auto* subset = app.add_subcommand("subset", "Derive a resampled dataset");
  subset->add_option("--data", sb.data, "Dataset CSV")->required();
  subset->add_option("--schema", sb.schema, "Schema sidecar (JSON)");
  subset->add_option("--kind", sb.kind, "balanced, stratified or single-group")
      ->required();
  subset->add_option("--attribute", sb.attribute, "Attribute to act on");
  subset->add_option("--group", sb.group, "Group kept by single-group");
  subset->add_option("--fraction", sb.fraction, "Fraction kept by stratified");
  subset->add_option("--strat-attributes", sb.strat_attributes,
                     "Attributes defining strata (default: all)")
      ->delimiter(',');
  subset->add_flag("--match-balanced-totals", sb.match,
                   "Match the balanced subset's per-class totals");
  subset->add_option("--seed", sb.seed, "Sampling seed")->required();
  subset->add_option("--out", sb.out, "Output CSV path");

  SimulateArgs sm;
  auto* simulate = app.add_subcommand(
      "simulate", "Repeated classifier simulations on a synthetic population");
  simulate->add_option("--population", sm.population, "Population spec (JSON)")
      ->required();
  simulate->add_option("--profile", sm.profile, "Classifier profile (JSON)")
      ->required();
  simulate->add_option("--runs", sm.runs, "Number of simulated runs");
  simulate->add_option("--seed", sm.seed, "Simulation seed")->required();
  simulate->add_option("--min-support", sm.min_support,
                       "Minimum records for a recall to count");
  simulate->add_option("--out", sm.out, "Output directory");

  CompareArgs cp;
  auto* compare = app.add_subcommand("compare", "Tabulate several audit reports");
  compare->add_option("--reports", cp.reports, "Report JSON files")
      ->required()
      ->expected(1, -1);
  compare->add_option("--out", cp.out, "Output CSV path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (audit_ds->parsed()) return audit_dataset_cmd(ad, out);
    if (audit_md->parsed()) return audit_model_cmd(am, out, err);
    if (subset->parsed()) return subset_cmd(sb, out);
    if (simulate->parsed()) return simulate_cmd(sm, out);
    if (compare->parsed()) return compare_cmd(cp, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return error_category(e.code()) == ErrorCategory::kIo ? kExitIo
                                                          : kExitValidation;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace fairaudit::cli
