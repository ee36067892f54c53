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

#include <cstdint>
#include <span>
#include <string_view>

namespace fairaudit::kernels {

// Integer tally kernels behind contingency counting and recall estimation.
// Every variant produces identical results; the AVX2 variants are selected at
// runtime when the CPU supports them.
//
// Preconditions shared by all kernels: paired spans have equal length and
// every cell index is < counts.size(). Counts are accumulated (not reset).
struct KernelTable {
  std::string_view name;

  // counts[cells[i]] += 1
  void (*tally)(std::span<const std::uint32_t> cells,
                std::span<std::uint64_t> counts);

  // counts[cells[i]] += 1 where a[i] == b[i]
  void (*tally_where_equal)(std::span<const std::uint32_t> cells,
                            std::span<const std::uint32_t> a,
                            std::span<const std::uint32_t> b,
                            std::span<std::uint64_t> counts);

  // counts[cells[i]] += 1 where values[i] == value
  void (*tally_where_value)(std::span<const std::uint32_t> cells,
                            std::span<const std::uint32_t> values,
                            std::uint32_t value,
                            std::span<std::uint64_t> counts);

  // number of i with a[i] == b[i]
  std::uint64_t (*count_equal)(std::span<const std::uint32_t> a,
                               std::span<const std::uint32_t> b);

  // out[i] = major[i] * minor_size + minor[i]
  void (*combine_index)(std::span<const std::uint32_t> major,
                        std::span<const std::uint32_t> minor,
                        std::uint32_t minor_size,
                        std::span<std::uint32_t> out);
};

const KernelTable& scalar_kernels();

// nullptr when the build or the CPU lacks AVX2.
const KernelTable* avx2_kernels();

// The table used by the library. Honors FAIRAUDIT_KERNELS=scalar.
const KernelTable& active_kernels();

}  // namespace fairaudit::kernels
