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

#include <algorithm>
#include <cmath>
#include <random>

#include "fairaudit/error.hpp"
#include "fairaudit/metrics.hpp"
#include "support/naive_oracle.hpp"
#include "support/synthetic.hpp"

namespace fairaudit {
namespace {

// Reference values computed with 40-digit arithmetic (mpmath).
constexpr double kNsdDescending = 0.25819888974716112568;  // 4/sqrt(240)
constexpr double kNpmiHalfDiagonal = 0.51294159473206005886;  // -ln1.6/ln0.4
constexpr double kNpmiOffDiagonal = -0.39794000867203760957;  // -ln0.4/ln0.1
constexpr double kMiHalfDiagonal = 0.19274475702175742988;
constexpr double kNmiHalfDiagonal = 0.16148868581578451947;
constexpr double kLn2 = 0.69314718055994530942;

JointDistribution joint_of(std::vector<std::vector<double>> cells) {
  Matrix<double> m(cells.size(), cells[0].size());
  std::vector<std::string> groups, classes;
  for (std::size_t g = 0; g < cells.size(); ++g) {
    groups.push_back("g" + std::to_string(g));
    for (std::size_t c = 0; c < cells[g].size(); ++c) m(g, c) = cells[g][c];
  }
  for (std::size_t c = 0; c < cells[0].size(); ++c) {
    classes.push_back("c" + std::to_string(c));
  }
  return JointDistribution("g", groups, classes, m);
}

JointDistribution joint_of_counts(const testing::CountGrid& counts) {
  Matrix<std::uint64_t> m(counts.size(), counts[0].size());
  std::vector<std::string> groups, classes;
  for (std::size_t g = 0; g < counts.size(); ++g) {
    groups.push_back("g" + std::to_string(g));
    for (std::size_t c = 0; c < counts[g].size(); ++c) m(g, c) = counts[g][c];
  }
  for (std::size_t c = 0; c < counts[0].size(); ++c) {
    classes.push_back("c" + std::to_string(c));
  }
  return normalize(ContingencyTable("g", groups, classes, m));
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIoFailure;
}

TEST(NsdTest, ReferenceValues) {
  EXPECT_EQ(nsd(std::vector<double>{0.25, 0.25, 0.25, 0.25}), 0.0);
  EXPECT_DOUBLE_EQ(nsd(std::vector<double>{1.0, 0.0}), 1.0);
  EXPECT_DOUBLE_EQ(nsd(std::vector<double>{0.75, 0.25}), 0.5);
  EXPECT_NEAR(nsd(std::vector<double>{0.4, 0.3, 0.2, 0.1}), kNsdDescending,
              1e-15);
}

TEST(NsdTest, Errors) {
  EXPECT_EQ(code_of([] { nsd(std::vector<double>{1.0}); }),
            ErrorCode::kTooFewGroups);
  EXPECT_EQ(code_of([] { nsd(std::vector<double>{0.5, 0.4}); }),
            ErrorCode::kNotNormalized);
  EXPECT_EQ(code_of([] { nsd(std::vector<double>{1.5, -0.5}); }),
            ErrorCode::kNotNormalized);
}

// One-hot vectors reach exactly the upper bound for every n; the scaling
// factor never lets a normalized vector exceed 1.
TEST(NsdTest, OneHotIsOneForEveryGroupCount) {
  for (std::size_t n = 2; n <= 64; ++n) {
    std::vector<double> v(n, 0.0);
    v[n / 2] = 1.0;
    EXPECT_NEAR(nsd(v), 1.0, 1e-12) << n;
  }
}

TEST(NsdTest, PermutationInvariantAndMonotoneOnTwoGroups) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(2 + rng() % 7);
    double sum = 0;
    for (auto& x : v) sum += x = static_cast<double>(rng() % 1000);
    if (sum == 0) continue;
    for (auto& x : v) x /= sum;
    const double base = nsd(v);
    std::shuffle(v.begin(), v.end(), rng);
    EXPECT_NEAR(nsd(v), base, 1e-15);
  }
  double previous = -1;
  for (int k = 50; k <= 100; ++k) {
    const double heavy = k / 100.0;
    const double value = nsd(std::vector<double>{heavy, 1.0 - heavy});
    EXPECT_GT(value, previous);
    previous = value;
  }
}

TEST(NpmiTest, ProductDistributionIsZero) {
  const auto m = npmi_matrix(joint_of({{0.12, 0.28}, {0.18, 0.42}}));
  for (auto v : m.values.flat()) EXPECT_NEAR(*v, 0.0, 1e-12);
}

TEST(NpmiTest, DiagonalIsOneAndOffDiagonalMinusOne) {
  const auto m = npmi_matrix(joint_of({{0.5, 0.0}, {0.0, 0.5}}));
  EXPECT_DOUBLE_EQ(*m.values(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(*m.values(1, 1), 1.0);
  EXPECT_EQ(*m.values(0, 1), -1.0);
  EXPECT_EQ(*m.values(1, 0), -1.0);
}

TEST(NpmiTest, ReferenceValue) {
  const auto m = npmi_matrix(joint_of({{0.4, 0.1}, {0.1, 0.4}}));
  EXPECT_NEAR(*m.values(0, 0), kNpmiHalfDiagonal, 1e-14);
  EXPECT_NEAR(*m.values(0, 1), kNpmiOffDiagonal, 1e-14);
}

TEST(NpmiTest, UndefinedWhereMarginalIsZero) {
  const auto m = npmi_matrix(joint_of({{0.5, 0.0}, {0.5, 0.0}}));
  EXPECT_FALSE(m.values(0, 1).has_value());
  EXPECT_FALSE(m.values(1, 1).has_value());
  EXPECT_NEAR(*m.values(0, 0), 0.0, 1e-15);
}

TEST(NpmiTest, TransposeSwapsIndices) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    auto counts = testing::random_counts(rng, 3 + rng() % 4, 2 + rng() % 6, 50);
    counts[0][0] += 1;
    const auto joint = joint_of_counts(counts);
    const auto a = npmi_matrix(joint);
    const auto b = npmi_matrix(joint.transposed());
    for (std::size_t g = 0; g < a.values.rows(); ++g)
      for (std::size_t c = 0; c < a.values.cols(); ++c)
        EXPECT_EQ(a.values(g, c), b.values(c, g));
  }
}

TEST(NmiTest, ReferenceValues) {
  EXPECT_NEAR(nmi(joint_of({{0.12, 0.28}, {0.18, 0.42}})), 0.0, 1e-15);
  EXPECT_NEAR(nmi(joint_of({{0.4, 0.1}, {0.1, 0.4}})), kNmiHalfDiagonal, 1e-14);
  EXPECT_EQ(code_of([] { nmi(joint_of({{1.0, 0.0}, {0.0, 0.0}})); }),
            ErrorCode::kDegenerateJoint);
}

TEST(NmiTest, TransposeInvariantAndZeroOnlyForProducts) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::uint64_t> rows(2 + rng() % 5), cols(2 + rng() % 6);
    for (auto& r : rows) r = 1 + rng() % 20;
    for (auto& c : cols) c = 1 + rng() % 20;
    testing::CountGrid product(rows.size(), std::vector<std::uint64_t>(cols.size()));
    for (std::size_t g = 0; g < rows.size(); ++g)
      for (std::size_t c = 0; c < cols.size(); ++c) product[g][c] = rows[g] * cols[c];
    const auto independent = joint_of_counts(product);
    EXPECT_NEAR(nmi(independent), 0.0, 1e-12);

    auto skewed = product;
    skewed[0][0] += 1 + rng() % 50;
    const auto dependent = joint_of_counts(skewed);
    EXPECT_GT(nmi(dependent), 1e-12);
    EXPECT_NEAR(nmi(dependent), nmi(dependent.transposed()), 1e-15);
  }
}

TEST(MutualInformationTest, ReferenceValues) {
  EXPECT_NEAR(mutual_information(joint_of({{0.12, 0.28}, {0.18, 0.42}})), 0.0,
              1e-15);
  EXPECT_NEAR(mutual_information(joint_of({{0.4, 0.1}, {0.1, 0.4}})),
              kMiHalfDiagonal, 1e-15);
  EXPECT_NEAR(mutual_information(joint_of({{0.5, 0.0}, {0.0, 0.5}})), kLn2,
              1e-15);
}

// Library metrics against the long-double count-based oracle on tables up to
// 7 groups x 8 classes.
TEST(MetricOracleTest, RandomTablesMatchNaiveImplementation) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    auto counts = testing::random_counts(rng, 2 + rng() % 6, 2 + rng() % 7, 1000);
    counts[0][0] += 1;
    counts.back().back() += 1;
    const auto joint = joint_of_counts(counts);
    const auto sums = testing::naive_sums(counts);
    std::vector<long double> shares;
    std::vector<double> dist;
    for (auto r : sums.rows) {
      shares.push_back(r / sums.total);
      dist.push_back(joint.group_marginal()[shares.size() - 1]);
    }
    EXPECT_NEAR(nsd(dist), testing::naive_nsd(shares), 1e-12);
    EXPECT_NEAR(mutual_information(joint), testing::naive_mi(counts), 1e-12);
    EXPECT_NEAR(nmi(joint), testing::naive_nmi(counts), 1e-12);
    const auto npmi = npmi_matrix(joint);
    for (std::size_t g = 0; g < counts.size(); ++g) {
      for (std::size_t c = 0; c < counts[g].size(); ++c) {
        const auto expected = testing::naive_npmi(counts, g, c);
        ASSERT_EQ(npmi.values(g, c).has_value(), expected.has_value());
        if (expected) {
          EXPECT_NEAR(*npmi.values(g, c), *expected, 1e-12);
        }
      }
    }
  }
}

TEST(IntraclassDisparityTest, ReferenceValues) {
  EXPECT_EQ(intraclass_disparity(std::vector<double>{0.7, 0.7, 0.7}), 0.0);
  EXPECT_EQ(intraclass_disparity(std::vector<double>{0.9, 0.0, 0.0}), 1.0);
  EXPECT_DOUBLE_EQ(intraclass_disparity(std::vector<double>{0.8, 0.4}), 0.5);
  EXPECT_DOUBLE_EQ(intraclass_disparity(std::vector<double>{0.8, 0.4, 0.8}),
                   0.25);
  EXPECT_EQ(intraclass_disparity(std::vector<double>{0.0, 0.0}), 0.0);
  EXPECT_EQ(intraclass_disparity(std::vector<double>{0.6}), 0.0);
  EXPECT_EQ(code_of([] { intraclass_disparity(std::vector<double>{}); }),
            ErrorCode::kNoSupportedGroups);
}

TEST(IntraclassDisparityTest, SupportPolicyExcludesGroups) {
  const std::vector<std::optional<double>> recalls{0.8, std::nullopt, 0.4, 0.1};
  const std::vector<std::uint64_t> support{100, 0, 50, 3};
  const auto all = intraclass_disparity(recalls, support, {1});
  EXPECT_EQ(all.excluded_groups, (std::vector<std::size_t>{1}));
  EXPECT_DOUBLE_EQ(all.value, ((1 - 0.5) + (1 - 0.125)) / 2);
  EXPECT_FALSE(all.single_group);

  const auto strict = intraclass_disparity(recalls, support, {10});
  EXPECT_EQ(strict.excluded_groups, (std::vector<std::size_t>{1, 3}));
  EXPECT_DOUBLE_EQ(strict.value, 0.5);

  const auto single = intraclass_disparity(recalls, support, {60});
  EXPECT_TRUE(single.single_group);
  EXPECT_EQ(single.value, 0.0);

  EXPECT_EQ(code_of([&] { intraclass_disparity(recalls, support, {1000}); }),
            ErrorCode::kNoSupportedGroups);
}

TEST(IntraclassDisparityTest, ScaleInvariant) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> r(2 + rng() % 6);
    for (auto& x : r) x = unit(rng);
    const double c = 1.0 - unit(rng);  // (0, 1]
    std::vector<double> scaled(r);
    for (auto& x : scaled) x *= c;
    EXPECT_NEAR(intraclass_disparity(scaled), intraclass_disparity(r), 1e-12);
  }
}

RecallTable table_of(const std::vector<std::vector<std::optional<double>>>& r) {
  Matrix<std::optional<double>> m(r.size(), r[0].size());
  std::vector<std::string> classes, groups;
  for (std::size_t c = 0; c < r.size(); ++c) {
    classes.push_back("c" + std::to_string(c));
    for (std::size_t g = 0; g < r[c].size(); ++g) m(c, g) = r[c][g];
  }
  for (std::size_t g = 0; g < r[0].size(); ++g) groups.push_back("g" + std::to_string(g));
  return RecallTable::from_values("g", groups, classes, m);
}

TEST(OverallDisparityTest, MeanOfClassValues) {
  // Per-class IDs 0.25 and 0.75.
  const auto report = overall_disparity(table_of({{0.8, 0.4, 0.8}, {0.8, 0.2, 0.2}}));
  EXPECT_DOUBLE_EQ(report.per_class[0].value, 0.25);
  EXPECT_DOUBLE_EQ(report.per_class[1].value, 0.75);
  EXPECT_DOUBLE_EQ(report.overall, 0.5);
}

TEST(OverallDisparityTest, PerfectClassifierAndNamedFailure) {
  EXPECT_EQ(overall_disparity(table_of({{1.0, 1.0}, {1.0, 1.0}})).overall, 0.0);
  try {
    overall_disparity(table_of({{0.5, 0.5}, {std::nullopt, std::nullopt}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoSupportedGroups);
    EXPECT_NE(std::string(e.what()).find("'c1'"), std::string::npos);
  }
}

TEST(OverallDisparityTest, RandomTablesMatchNaiveAndStayInBounds) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t classes = 1 + rng() % 8, groups = 2 + rng() % 6;
    std::vector<std::vector<std::optional<double>>> r(
        classes, std::vector<std::optional<double>>(groups));
    double expected = 0;
    for (auto& row : r) {
      std::vector<double> present;
      for (auto& x : row) {
        if (rng() % 8 != 0) present.push_back(*(x = unit(rng)));
      }
      if (present.empty()) present.push_back(*(row[0] = unit(rng)));
      expected += testing::naive_id(present);
    }
    const auto report = overall_disparity(table_of(r));
    EXPECT_NEAR(report.overall, expected / classes, 1e-12);
    EXPECT_GE(report.overall, 0.0);
    EXPECT_LE(report.overall, 1.0);
  }
}

EvaluationSet baseline_evals() {
  // Group P: 10 records, 6 predicted positive, 9 correct.
  // Group U: 20 records, 6 predicted positive, 13 correct.
  EvaluationSet e(AttributeSchema({{"g", {"P", "U"}}}, {"pos", "neg"}));
  int id = 0;
  auto add = [&](const char* group, const char* truth, const char* pred, int n) {
    for (int i = 0; i < n; ++i) {
      e.add({std::to_string(++id), truth, pred, {{"g", group}}});
    }
  };
  add("P", "pos", "pos", 6);
  add("P", "neg", "neg", 3);
  add("P", "pos", "neg", 1);
  add("U", "pos", "pos", 6);
  add("U", "neg", "neg", 7);
  add("U", "pos", "neg", 7);
  return e;
}

TEST(DisparateImpactTest, Values) {
  // 0.3 / 0.6
  EXPECT_DOUBLE_EQ(disparate_impact(baseline_evals(), "g", "P", "pos"), 0.5);
  EvaluationSet same(AttributeSchema({{"g", {"P", "U"}}}, {"pos", "neg"}));
  same.add({"1", "pos", "pos", {{"g", "P"}}});
  same.add({"2", "neg", "neg", {{"g", "P"}}});
  same.add({"3", "pos", "pos", {{"g", "U"}}});
  same.add({"4", "neg", "neg", {{"g", "U"}}});
  EXPECT_EQ(disparate_impact(same, "g", "P", "pos"), 1.0);
}

TEST(DisparateImpactTest, Errors) {
  EvaluationSet e(AttributeSchema({{"g", {"P", "U", "V"}}}, {"pos", "neg"}));
  e.add({"1", "pos", "neg", {{"g", "P"}}});
  e.add({"2", "pos", "pos", {{"g", "U"}}});
  EXPECT_EQ(code_of([&] { disparate_impact(e, "g", "P", "pos"); }),
            ErrorCode::kZeroDenominator);
  EXPECT_EQ(code_of([&] { disparate_impact(e, "g", "V", "pos"); }),
            ErrorCode::kNoPrivilegedSamples);
  EvaluationSet only(AttributeSchema({{"g", {"P", "U"}}}, {"pos"}));
  only.add({"1", "pos", "pos", {{"g", "P"}}});
  EXPECT_EQ(code_of([&] { disparate_impact(only, "g", "P", "pos"); }),
            ErrorCode::kNoUnprivilegedSamples);
}

TEST(OverallAccuracyEqualityTest, Values) {
  // 0.9 vs 0.65
  EXPECT_NEAR(overall_accuracy_equality(baseline_evals(), "g", "P"), 0.25, 1e-15);
  EvaluationSet e(AttributeSchema({{"g", {"P", "U", "V"}}}, {"pos", "neg"}));
  e.add({"1", "pos", "pos", {{"g", "P"}}});
  e.add({"2", "pos", "neg", {{"g", "P"}}});
  e.add({"3", "pos", "pos", {{"g", "U"}}});
  e.add({"4", "neg", "pos", {{"g", "U"}}});
  EXPECT_EQ(overall_accuracy_equality(e, "g", "P"), 0.0);
  EXPECT_EQ(code_of([&] { overall_accuracy_equality(e, "g", "V"); }),
            ErrorCode::kNoPrivilegedSamples);
}

}  // namespace
}  // namespace fairaudit
