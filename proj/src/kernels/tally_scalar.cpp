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

#include "kernels_internal.hpp"

namespace fairaudit::kernels {
namespace scalar {

void tally(std::span<const std::uint32_t> cells,
           std::span<std::uint64_t> counts) {
  for (std::uint32_t cell : cells) ++counts[cell];
}

void tally_where_equal(std::span<const std::uint32_t> cells,
                       std::span<const std::uint32_t> a,
                       std::span<const std::uint32_t> b,
                       std::span<std::uint64_t> counts) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (a[i] == b[i]) ++counts[cells[i]];
  }
}

void tally_where_value(std::span<const std::uint32_t> cells,
                       std::span<const std::uint32_t> values,
                       std::uint32_t value, std::span<std::uint64_t> counts) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (values[i] == value) ++counts[cells[i]];
  }
}

std::uint64_t count_equal(std::span<const std::uint32_t> a,
                          std::span<const std::uint32_t> b) {
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += a[i] == b[i];
  return n;
}

void combine_index(std::span<const std::uint32_t> major,
                   std::span<const std::uint32_t> minor,
                   std::uint32_t minor_size, std::span<std::uint32_t> out) {
  for (std::size_t i = 0; i < major.size(); ++i) {
    out[i] = major[i] * minor_size + minor[i];
  }
}

}  // namespace scalar

const KernelTable& scalar_kernels() {
  static const KernelTable table{
      "scalar",           scalar::tally,       scalar::tally_where_equal,
      scalar::tally_where_value, scalar::count_equal, scalar::combine_index,
  };
  return table;
}

}  // namespace fairaudit::kernels
