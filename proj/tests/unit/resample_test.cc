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

#include <random>
#include <set>

#include "fairaudit/core.hpp"
#include "fairaudit/error.hpp"
#include "fairaudit/resample.hpp"
#include "support/synthetic.hpp"

namespace fairaudit {
namespace {

using testing::dataset_from_cells;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIoFailure;
}

// counts[class][group] read back from a dataset built on simple_schema.
std::vector<std::vector<std::uint64_t>> cells_of(const LabeledDataset& d) {
  const auto table = build_contingency(d, "g");
  std::vector<std::vector<std::uint64_t>> out(
      table.classes().size(), std::vector<std::uint64_t>(table.groups().size()));
  for (std::size_t g = 0; g < table.groups().size(); ++g)
    for (std::size_t c = 0; c < table.classes().size(); ++c)
      out[c][g] = table.count(g, c);
  return out;
}

// Every selected id exists in the source, appears once, and keeps its
// source row and relative order.
void expect_order_preserving_subset(const LabeledDataset& source,
                                    const LabeledDataset& subset) {
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    while (cursor < source.size() && source.id(cursor) != subset.id(i)) ++cursor;
    ASSERT_LT(cursor, source.size()) << subset.id(i);
    EXPECT_EQ(source.record(cursor), subset.record(i));
    ++cursor;
  }
}

TEST(BalancedSubsetTest, PerClassMinimum) {
  const auto d = dataset_from_cells({{10, 4}, {6, 6}});
  const auto s = balanced_subset(d, "g", 1);
  EXPECT_EQ(cells_of(s), (std::vector<std::vector<std::uint64_t>>{{4, 4}, {6, 6}}));
  EXPECT_EQ(s.size(), 20u);
  expect_order_preserving_subset(d, s);
}

TEST(BalancedSubsetTest, EmptyCellAndUnknownAttribute) {
  const auto d = dataset_from_cells({{10, 0}, {6, 6}});
  EXPECT_EQ(code_of([&] { balanced_subset(d, "g", 1); }), ErrorCode::kEmptyCell);
  EXPECT_EQ(code_of([&] { balanced_subset(d, "nope", 1); }),
            ErrorCode::kUnknownAttribute);
}

TEST(BalancedSubsetTest, RandomTablesAreBalancedAndDeterministic) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t classes = 1 + rng() % 4, groups = 2 + rng() % 4;
    std::vector<std::vector<std::uint64_t>> counts(classes,
                                                   std::vector<std::uint64_t>(groups));
    for (auto& row : counts)
      for (auto& v : row) v = 1 + rng() % 30;
    const auto d = dataset_from_cells(counts);
    const auto seed = rng();
    const auto s = balanced_subset(d, "g", seed);
    const auto cells = cells_of(s);
    for (std::size_t c = 0; c < classes; ++c) {
      const auto k = *std::min_element(counts[c].begin(), counts[c].end());
      for (auto v : cells[c]) EXPECT_EQ(v, k);
    }
    EXPECT_EQ(balanced_subset(d, "g", seed), s);
    expect_order_preserving_subset(d, s);
  }
}

TEST(BalancedSubsetTest, SeedChangesSelection) {
  const auto d = dataset_from_cells({{200, 20}});
  std::set<std::vector<std::string>> selections;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto s = balanced_subset(d, "g", seed);
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < s.size(); ++i) ids.push_back(s.id(i));
    selections.insert(ids);
  }
  EXPECT_GT(selections.size(), 1u);
}

TEST(StratifiedSubsetTest, HalvesEveryCell) {
  const auto d = dataset_from_cells({{40, 20}, {30, 10}});
  const auto s = stratified_subset(d, 0.5, 3, {});
  EXPECT_EQ(cells_of(s),
            (std::vector<std::vector<std::uint64_t>>{{20, 10}, {15, 5}}));
  expect_order_preserving_subset(d, s);
}

TEST(StratifiedSubsetTest, FullFractionIsIdentity) {
  const auto d = dataset_from_cells({{7, 3, 1}, {2, 9, 4}});
  EXPECT_EQ(stratified_subset(d, 1.0, 99, {}), d);
}

TEST(StratifiedSubsetTest, InvalidFraction) {
  const auto d = dataset_from_cells({{4, 4}});
  for (double f : {0.0, -0.1, 1.5, std::nan("")}) {
    EXPECT_EQ(code_of([&] { stratified_subset(d, f, 1, {}); }),
              ErrorCode::kInvalidFraction)
        << f;
  }
}

TEST(StratifiedSubsetTest, ClassTotalsFollowRoundedFraction) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t classes = 1 + rng() % 5, groups = 2 + rng() % 5;
    std::vector<std::vector<std::uint64_t>> counts(classes,
                                                   std::vector<std::uint64_t>(groups));
    for (auto& row : counts)
      for (auto& v : row) v = rng() % 40;
    counts[0][0] += 1;
    const double fraction = (1 + rng() % 1000) / 1000.0;
    const auto d = dataset_from_cells(counts);
    const auto s = stratified_subset(d, fraction, rng(), {"g"});
    const auto cells = cells_of(s);
    for (std::size_t c = 0; c < classes; ++c) {
      std::uint64_t total = 0, kept = 0;
      for (std::size_t g = 0; g < groups; ++g) {
        total += counts[c][g];
        kept += cells[c][g];
        EXPECT_LE(cells[c][g], counts[c][g]);
        // Largest remainder never moves a cell by a whole unit.
        EXPECT_LT(std::abs(static_cast<double>(cells[c][g]) -
                           fraction * static_cast<double>(counts[c][g])),
                  1.0);
      }
      EXPECT_EQ(kept, static_cast<std::uint64_t>(
                          std::llround(fraction * static_cast<double>(total))));
    }
    expect_order_preserving_subset(d, s);
  }
}

TEST(SingleGroupSubsetTest, MatchesBalancedTotals) {
  // Class x: A=10, B=4. Class y: A=6, B=6. Balanced totals are 8 and 12.
  const auto d = dataset_from_cells({{10, 4}, {6, 6}});
  try {
    single_group_subset(d, "g", "A", 1, true);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInsufficientSamples);
    EXPECT_NE(std::string(e.what()).find("'y'"), std::string::npos) << e.what();
  }

  const auto big = dataset_from_cells({{10, 4}, {13, 6}});
  const auto s = single_group_subset(big, "g", "A", 1, true);
  EXPECT_EQ(cells_of(s), (std::vector<std::vector<std::uint64_t>>{{8, 0}, {12, 0}}));
  expect_order_preserving_subset(big, s);
}

TEST(SingleGroupSubsetTest, WithoutMatchKeepsEveryGroupRecord) {
  const auto d = dataset_from_cells({{10, 4}, {6, 6}});
  const auto s = single_group_subset(d, "g", "A", 1, false);
  EXPECT_EQ(cells_of(s), (std::vector<std::vector<std::uint64_t>>{{10, 0}, {6, 0}}));
  EXPECT_EQ(code_of([&] { single_group_subset(d, "g", "Z", 1, false); }),
            ErrorCode::kUnknownGroup);
}

TEST(SingleGroupSubsetTest, ClassTotalsEqualBalancedOnRandomInputs) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t classes = 1 + rng() % 4, groups = 2 + rng() % 3;
    std::vector<std::vector<std::uint64_t>> counts(classes,
                                                   std::vector<std::uint64_t>(groups));
    for (auto& row : counts) {
      for (auto& v : row) v = 1 + rng() % 10;
      row[0] = groups * 10;  // group A can always supply |G| * k_c
    }
    const auto d = dataset_from_cells(counts);
    const auto balanced = build_contingency(balanced_subset(d, "g", 5), "g");
    const auto single = build_contingency(single_group_subset(d, "g", "A", 5, true), "g");
    EXPECT_EQ(single.class_totals(), balanced.class_totals());
  }
}

TEST(MakeSubsetTest, DispatchesOnKind) {
  const auto d = dataset_from_cells({{10, 4}, {6, 6}});
  EXPECT_EQ(make_subset(d, {BalancedSpec{"g"}, 4}), balanced_subset(d, "g", 4));
  EXPECT_EQ(make_subset(d, {StratifiedSpec{0.5, {}}, 4}),
            stratified_subset(d, 0.5, 4, {}));
  EXPECT_EQ(make_subset(d, {SingleGroupSpec{"g", "B", false}, 4}),
            single_group_subset(d, "g", "B", 4, false));
}

TEST(ApportionTest, LargestRemainder) {
  EXPECT_EQ(apportion({1, 1, 1, 1}, 100), (std::vector<std::uint64_t>{25, 25, 25, 25}));
  EXPECT_EQ(apportion({644, 356}, 10000), (std::vector<std::uint64_t>{6440, 3560}));
  EXPECT_EQ(apportion({1, 1, 1}, 10), (std::vector<std::uint64_t>{4, 3, 3}));
  EXPECT_EQ(apportion({1, 0, 1}, 3), (std::vector<std::uint64_t>{2, 0, 1}));
}

}  // namespace
}  // namespace fairaudit
