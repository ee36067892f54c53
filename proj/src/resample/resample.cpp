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

#include "fairaudit/resample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fairaudit/error.hpp"
#include "fairaudit/matrix.hpp"
#include "fairaudit/random.hpp"

namespace fairaudit {
namespace {

// Rounds real-valued quotas to integers summing to `target`: floors first,
// then one extra unit per cell in decreasing order of remainder (lower index
// wins ties). Results never exceed `caps` when provided.
std::vector<std::uint64_t> largest_remainder(
    const std::vector<double>& quotas, std::uint64_t target,
    const std::vector<std::uint64_t>* caps = nullptr) {
  const std::size_t n = quotas.size();
  std::vector<std::uint64_t> out(n);
  std::vector<double> remainder(n);
  std::uint64_t assigned = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double floor = std::floor(quotas[i]);
    out[i] = static_cast<std::uint64_t>(floor);
    if (caps != nullptr) out[i] = std::min(out[i], (*caps)[i]);
    remainder[i] = quotas[i] - floor;
    assigned += out[i];
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return remainder[a] > remainder[b];
  });
  for (std::size_t pass = 0; assigned < target && pass < 2; ++pass) {
    for (std::size_t i : order) {
      if (assigned == target) break;
      if (caps != nullptr && out[i] >= (*caps)[i]) continue;
      // First pass hands out one unit per positive remainder; the second
      // only runs if caps forced a shortfall.
      if (pass == 0 && remainder[i] <= 0.0) continue;
      ++out[i];
      ++assigned;
    }
  }
  // Float noise can leave the floors one unit above target; trim from the
  // smallest remainders.
  for (auto it = order.rbegin(); assigned > target && it != order.rend();
       ++it) {
    if (out[*it] > 0) {
      --out[*it];
      --assigned;
    }
  }
  return out;
}

// Row indices per cell, in input order.
using CellPools = std::vector<std::vector<std::size_t>>;

std::vector<std::size_t> sample_rows(const CellPools& pools,
                                     const std::vector<std::uint64_t>& take,
                                     std::uint64_t seed) {
  std::vector<std::size_t> rows;
  for (std::size_t cell = 0; cell < pools.size(); ++cell) {
    std::vector<std::size_t> pool = pools[cell];
    const std::size_t k = static_cast<std::size_t>(take[cell]);
    if (k >= pool.size()) {
      rows.insert(rows.end(), pool.begin(), pool.end());
      continue;
    }
    // Partial Fisher-Yates on a per-cell substream.
    Rng rng(seed, cell);
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + rng.below(pool.size() - i);
      std::swap(pool[i], pool[j]);
    }
    rows.insert(rows.end(), pool.begin(), pool.begin() + k);
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

// Pools keyed by class * group_count + group for one attribute.
CellPools pools_by_class_group(const LabeledDataset& dataset,
                               std::size_t attribute) {
  const std::size_t groups = dataset.schema().attribute(attribute).groups.size();
  CellPools pools(dataset.schema().class_count() * groups);
  const auto classes = dataset.class_column();
  const auto column = dataset.group_column(attribute);
  for (std::size_t row = 0; row < dataset.size(); ++row) {
    pools[classes[row] * groups + column[row]].push_back(row);
  }
  return pools;
}

// k_c = min over groups of count(c, g); throws kEmptyCell on a zero cell.
std::vector<std::uint64_t> per_class_minimum(const LabeledDataset& dataset,
                                             std::size_t attribute,
                                             const CellPools& pools) {
  const auto& schema = dataset.schema();
  const auto& groups = schema.attribute(attribute).groups;
  std::vector<std::uint64_t> minimum(schema.class_count());
  for (std::size_t c = 0; c < schema.class_count(); ++c) {
    std::uint64_t k = UINT64_MAX;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const auto n = pools[c * groups.size() + g].size();
      if (n == 0) {
        fail(ErrorCode::kEmptyCell, "class '" + schema.classes()[c] +
                                        "', group '" + groups[g] +
                                        "' has no records");
      }
      k = std::min<std::uint64_t>(k, n);
    }
    minimum[c] = k;
  }
  return minimum;
}

}  // namespace

std::vector<std::uint64_t> apportion(const std::vector<double>& weights,
                                     std::uint64_t total) {
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      fail(ErrorCode::kInvalidSpec, "weights must be finite and non-negative");
    }
    sum += w;
  }
  if (!(sum > 0.0)) fail(ErrorCode::kInvalidSpec, "no positive weight");
  std::vector<double> quotas(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    quotas[i] = weights[i] * static_cast<double>(total) / sum;
  }
  return largest_remainder(quotas, total);
}

LabeledDataset balanced_subset(const LabeledDataset& dataset,
                               std::string_view attribute, std::uint64_t seed) {
  const auto& schema = dataset.schema();
  const std::size_t a = schema.attribute_index(attribute);
  if (dataset.empty()) fail(ErrorCode::kEmptyDataset, "no records");
  const auto pools = pools_by_class_group(dataset, a);
  const auto minimum = per_class_minimum(dataset, a, pools);
  const std::size_t groups = schema.attribute(a).groups.size();

  std::vector<std::uint64_t> take(pools.size());
  for (std::size_t cell = 0; cell < pools.size(); ++cell) {
    take[cell] = minimum[cell / groups];
  }
  return dataset.select(sample_rows(pools, take, seed));
}

LabeledDataset stratified_subset(const LabeledDataset& dataset,
                                 double fraction, std::uint64_t seed,
                                 const std::vector<std::string>& attributes) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    fail(ErrorCode::kInvalidFraction,
         "fraction must lie in (0, 1], got " + std::to_string(fraction));
  }
  const auto& schema = dataset.schema();
  std::vector<std::size_t> strata;
  if (attributes.empty()) {
    for (std::size_t a = 0; a < schema.attribute_count(); ++a) {
      strata.push_back(a);
    }
  } else {
    for (const auto& name : attributes) {
      strata.push_back(schema.attribute_index(name));
    }
    std::sort(strata.begin(), strata.end());
    strata.erase(std::unique(strata.begin(), strata.end()), strata.end());
  }

  // Group combinations are numbered in mixed radix, schema order, so the
  // cell order used for tie-breaking follows the schema.
  std::size_t combos = 1;
  for (std::size_t a : strata) combos *= schema.attribute(a).groups.size();
  const std::size_t classes = schema.class_count();
  CellPools pools(classes * combos);
  const auto class_column = dataset.class_column();
  for (std::size_t row = 0; row < dataset.size(); ++row) {
    std::size_t combo = 0;
    for (std::size_t a : strata) {
      combo = combo * schema.attribute(a).groups.size() +
              dataset.group_column(a)[row];
    }
    pools[class_column[row] * combos + combo].push_back(row);
  }

  std::vector<std::uint64_t> take(pools.size(), 0);
  for (std::size_t c = 0; c < classes; ++c) {
    std::vector<double> quotas(combos);
    std::vector<std::uint64_t> caps(combos);
    std::uint64_t class_total = 0;
    for (std::size_t k = 0; k < combos; ++k) {
      const auto n = pools[c * combos + k].size();
      caps[k] = n;
      quotas[k] = fraction * static_cast<double>(n);
      class_total += n;
    }
    const auto target = static_cast<std::uint64_t>(
        std::llround(fraction * static_cast<double>(class_total)));
    const auto counts = largest_remainder(quotas, target, &caps);
    std::copy(counts.begin(), counts.end(), take.begin() + c * combos);
  }
  return dataset.select(sample_rows(pools, take, seed));
}

LabeledDataset single_group_subset(const LabeledDataset& dataset,
                                   std::string_view attribute,
                                   std::string_view group, std::uint64_t seed,
                                   bool match_balanced_totals) {
  const auto& schema = dataset.schema();
  const std::size_t a = schema.attribute_index(attribute);
  const std::size_t chosen = schema.group_index(a, group);
  const std::size_t groups = schema.attribute(a).groups.size();
  const auto pools = pools_by_class_group(dataset, a);

  std::vector<std::uint64_t> take(pools.size(), 0);
  if (!match_balanced_totals) {
    for (std::size_t c = 0; c < schema.class_count(); ++c) {
      take[c * groups + chosen] = pools[c * groups + chosen].size();
    }
    return dataset.select(sample_rows(pools, take, seed));
  }

  if (dataset.empty()) fail(ErrorCode::kEmptyDataset, "no records");
  const auto minimum = per_class_minimum(dataset, a, pools);
  for (std::size_t c = 0; c < schema.class_count(); ++c) {
    const std::uint64_t need = groups * minimum[c];
    const std::uint64_t have = pools[c * groups + chosen].size();
    if (have < need) {
      fail(ErrorCode::kInsufficientSamples,
           "class '" + schema.classes()[c] + "' needs " + std::to_string(need) +
               " records of group '" + std::string(group) + "' but has " +
               std::to_string(have));
    }
    take[c * groups + chosen] = need;
  }
  return dataset.select(sample_rows(pools, take, seed));
}

LabeledDataset make_subset(const LabeledDataset& dataset,
                           const SubsetSpec& spec) {
  return std::visit(
      [&](const auto& kind) -> LabeledDataset {
        using T = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<T, BalancedSpec>) {
          return balanced_subset(dataset, kind.attribute, spec.seed);
        } else if constexpr (std::is_same_v<T, StratifiedSpec>) {
          return stratified_subset(dataset, kind.fraction, spec.seed,
                                   kind.attributes);
        } else {
          return single_group_subset(dataset, kind.attribute, kind.group,
                                     spec.seed, kind.match_balanced_totals);
        }
      },
      spec.kind);
}

}  // namespace fairaudit
