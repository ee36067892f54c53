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

#include <gtest/gtest.h>

#include <cmath>

#include "fairaudit/core.hpp"
#include "fairaudit/error.hpp"
#include "fairaudit/metrics.hpp"
#include "fairaudit/simulate.hpp"
#include "support/synthetic.hpp"

namespace fairaudit {
namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIoFailure;
}

PopulationSpec one_attribute_spec(std::vector<double> group_weights,
                                  std::uint64_t total, std::size_t classes = 1) {
  PopulationSpec spec;
  spec.schema = testing::simple_schema(group_weights.size(), classes);
  spec.total_count = total;
  spec.seed = 7;
  for (std::uint32_t c = 0; c < classes; ++c)
    for (std::uint32_t g = 0; g < group_weights.size(); ++g)
      spec.cells.push_back({c, {g}, group_weights[g]});
  return spec;
}

Matrix<double> recall_grid(std::size_t classes, std::vector<double> by_group) {
  Matrix<double> m(classes, by_group.size());
  for (std::size_t c = 0; c < classes; ++c)
    for (std::size_t g = 0; g < by_group.size(); ++g) m(c, g) = by_group[g];
  return m;
}

TEST(PopulationTest, ExactApportionedCounts) {
  const auto d = generate_population(one_attribute_spec({1, 1, 1, 1}, 100));
  EXPECT_EQ(build_contingency(d, "g").group_totals(),
            (std::vector<std::uint64_t>{25, 25, 25, 25}));
  const auto skewed = generate_population(one_attribute_spec({644, 356}, 10000));
  EXPECT_EQ(build_contingency(skewed, "g").group_totals(),
            (std::vector<std::uint64_t>{6440, 3560}));
}

TEST(PopulationTest, DeterministicAndSeedSensitive) {
  auto spec = one_attribute_spec({3, 1}, 500, 3);
  const auto a = generate_population(spec);
  EXPECT_EQ(generate_population(spec), a);
  spec.seed = 8;
  const auto b = generate_population(spec);
  EXPECT_NE(b, a);
  EXPECT_EQ(build_contingency(b, "g"), build_contingency(a, "g"));
}

TEST(PopulationTest, InvalidSpecs) {
  auto spec = one_attribute_spec({1, 1}, 10);
  spec.cells[0].weight = -1;
  EXPECT_EQ(code_of([&] { generate_population(spec); }), ErrorCode::kInvalidSpec);
  spec = one_attribute_spec({0, 0}, 10);
  EXPECT_EQ(code_of([&] { generate_population(spec); }), ErrorCode::kInvalidSpec);
  spec = one_attribute_spec({1, 1}, 10);
  spec.cells[0].group_indices = {5};
  EXPECT_EQ(code_of([&] { generate_population(spec); }), ErrorCode::kInvalidSpec);
}

TEST(ClassifierProfileTest, RowsMustBeDistributions) {
  ClassifierProfile p(testing::simple_schema(2, 2), "g");
  EXPECT_EQ(code_of([&] { p.set_row(0, 0, {0.5, 0.6}); }), ErrorCode::kInvalidSpec);
  EXPECT_EQ(code_of([&] { p.set_row(0, 0, {1.2, -0.2}); }), ErrorCode::kInvalidSpec);
  EXPECT_EQ(code_of([&] { p.set_row(0, 0, {1.0}); }), ErrorCode::kInvalidSpec);
  p.set_row(0, 0, {0.25, 0.75});
  EXPECT_EQ(*p.recalls()(0, 0), 0.25);
  EXPECT_FALSE(p.recalls()(1, 1).has_value());
}

TEST(SimulateTest, IdentityProfileIsPerfect) {
  const auto d = generate_population(one_attribute_spec({1, 2}, 300, 3));
  const auto p = ClassifierProfile::from_recalls(d.schema(), "g", recall_grid(3, {1, 1}));
  const auto e = simulate_classifier(d, p, 11);
  EXPECT_EQ(overall_accuracy(e), 1.0);
  EXPECT_EQ(overall_disparity(recall_table(e, "g")).overall, 0.0);
}

TEST(SimulateTest, MissingProfileRow) {
  const auto d = generate_population(one_attribute_spec({1, 1}, 20, 2));
  ClassifierProfile p(d.schema(), "g");
  p.set_row(0, 0, {1, 0});
  EXPECT_EQ(code_of([&] { simulate_classifier(d, p, 1); }),
            ErrorCode::kMissingProfileRow);
}

TEST(SimulateTest, DeterministicPerSeed) {
  const auto d = generate_population(one_attribute_spec({1, 1}, 2000, 4));
  const auto p = ClassifierProfile::from_recalls(d.schema(), "g", recall_grid(4, {0.7, 0.5}));
  const auto a = simulate_classifier(d, p, 3);
  EXPECT_EQ(simulate_classifier(d, p, 3), a);
  EXPECT_NE(simulate_classifier(d, p, 4), a);
}

TEST(SimulateTest, EmpiricalRecallWithinThreeStandardErrors) {
  const auto d = generate_population(one_attribute_spec({1, 1}, 10000, 2));
  const auto p = ClassifierProfile::from_recalls(d.schema(), "g", recall_grid(2, {0.8, 0.4}));
  const auto table = recall_table(simulate_classifier(d, p, 17), "g");
  for (std::size_t c = 0; c < 2; ++c) {
    for (std::size_t g = 0; g < 2; ++g) {
      const double r = g == 0 ? 0.8 : 0.4;
      const double n = static_cast<double>(table.support(c, g));
      EXPECT_NEAR(*table.recall(c, g), r, 3 * std::sqrt(r * (1 - r) / n));
    }
  }
}

TEST(SimulateTest, MisclassifiedMassFollowsProfile) {
  const auto d = generate_population(one_attribute_spec({1}, 9000, 3));
  ClassifierProfile p(d.schema(), "g");
  p.set_row(0, 0, {0.0, 0.0, 1.0});
  p.set_row(1, 0, {0.0, 1.0, 0.0});
  p.set_row(2, 0, {0.5, 0.5, 0.0});
  const auto e = simulate_classifier(d, p, 2);
  std::size_t to_x = 0, from_z = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e.true_column()[i] == 0) {
      EXPECT_EQ(e.predicted_column()[i], 2u);
    }
    if (e.true_column()[i] == 1) {
      EXPECT_EQ(e.predicted_column()[i], 1u);
    }
    if (e.true_column()[i] == 2) {
      ++from_z;
      EXPECT_NE(e.predicted_column()[i], 2u);
      if (e.predicted_column()[i] == 0) ++to_x;
    }
  }
  EXPECT_NEAR(static_cast<double>(to_x) / from_z, 0.5, 3 * std::sqrt(0.25 / from_z));
}

TEST(AnalyticOdTest, ReferenceValues) {
  const auto schema = testing::simple_schema(3, 2);
  auto od = [&](std::vector<double> r) {
    return analytic_od(ClassifierProfile::from_recalls(schema, "g", recall_grid(2, r))).overall;
  };
  EXPECT_EQ(od({0.6, 0.6, 0.6}), 0.0);
  EXPECT_EQ(od({0.9, 0.0, 0.0}), 1.0);
  EXPECT_DOUBLE_EQ(analytic_od(ClassifierProfile::from_recalls(
                                   testing::simple_schema(2, 8), "g",
                                   recall_grid(8, {0.8, 0.4})))
                       .overall,
                   0.5);
}

TEST(AnalyticOdTest, GrowsWithGapAndShrinksWithLevel) {
  const auto schema = testing::simple_schema(2, 2);
  auto od = [&](double top, double gap) {
    return analytic_od(ClassifierProfile::from_recalls(schema, "g",
                                                       recall_grid(2, {top, top - gap})))
        .overall;
  };
  for (double top : {0.5, 0.7, 0.9}) {
    double previous = -1;
    for (double gap = 0.0; gap <= 0.45; gap += 0.05) {
      EXPECT_GT(od(top, gap), previous);
      previous = od(top, gap);
    }
  }
  EXPECT_GT(od(0.5, 0.2), od(0.9, 0.2));
}

TEST(AnalyticOdTest, MatchesDisparityOfDiagonal) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t classes = 2 + rng() % 6, groups = 2 + rng() % 4;
    const auto schema = testing::simple_schema(groups, classes);
    Matrix<double> r(classes, groups);
    Matrix<std::optional<double>> opt(classes, groups);
    for (std::size_t c = 0; c < classes; ++c)
      for (std::size_t g = 0; g < groups; ++g) opt(c, g) = r(c, g) = unit(rng);
    const auto profile = ClassifierProfile::from_recalls(schema, "g", r);
    const auto direct = overall_disparity(
        RecallTable::from_values("g", schema.attribute(0).groups, schema.classes(), opt));
    EXPECT_EQ(analytic_od(profile).overall, direct.overall);
  }
}

// Simulated OD approaches the analytic value as the population grows.
TEST(AnalyticOdTest, SimulationConverges) {
  std::vector<double> errors;
  for (std::uint64_t n : {1000u, 10000u, 100000u}) {
    const auto d = generate_population(one_attribute_spec({1, 1}, n, 2));
    const auto p = ClassifierProfile::from_recalls(d.schema(), "g", recall_grid(2, {0.8, 0.4}));
    double error = 0;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto e = simulate_classifier(d, p, seed);
      error += std::abs(overall_disparity(recall_table(e, "g")).overall - 0.5);
    }
    errors.push_back(error / 3);
  }
  EXPECT_LT(errors[2], errors[0]);
  EXPECT_LT(errors[2], 0.01);
}

TEST(AggregateRunsTest, MeanAndSampleStd) {
  const auto a = aggregate_runs({{{"od", 0.1}, {"acc", 0.5}}, {{"od", 0.3}, {"acc", 0.5}}});
  EXPECT_EQ(a.runs, 2u);
  EXPECT_DOUBLE_EQ(a.metrics.at("od").mean, 0.2);
  EXPECT_NEAR(a.metrics.at("od").std, 0.14142135623730950488, 1e-15);
  EXPECT_EQ(a.metrics.at("acc").std, 0.0);
  EXPECT_EQ(aggregate_runs({{{"od", 0.4}}}).metrics.at("od").std, 0.0);
}

TEST(AggregateRunsTest, Errors) {
  EXPECT_EQ(code_of([] { aggregate_runs({{{"od", 0.1}}, {{"acc", 0.3}}}); }),
            ErrorCode::kMismatchedKeys);
  EXPECT_EQ(code_of([] { aggregate_runs({}); }), ErrorCode::kInvalidSpec);
}

}  // namespace
}  // namespace fairaudit
