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

// Compiled with -mavx2; only reached through the runtime dispatcher.
#include <immintrin.h>

#include <algorithm>
#include <array>
#include <vector>

#include "kernels_internal.hpp"

namespace fairaudit::kernels {
namespace avx2 {
namespace {

// Compare-and-count pays off only while the cell space is small; above this
// the 4-way scalar histogram is faster.
constexpr std::size_t kMaxCompareCells = 16;
constexpr std::size_t kBlock = 4096;

inline std::uint64_t hsum_epi32(__m256i v) {
  alignas(32) std::array<std::uint32_t, 8> lanes;
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes.data()), v);
  std::uint64_t sum = 0;
  for (std::uint32_t lane : lanes) sum += lane;
  return sum;
}

inline __m256i load8(const std::uint32_t* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

// Histogram with four interleaved partial tables to break the
// store-to-load dependency on repeated cells.
void histogram4(std::span<const std::uint32_t> cells,
                std::span<std::uint64_t> counts) {
  const std::size_t n = cells.size();
  const std::size_t k = counts.size();
  std::vector<std::uint64_t> partial(3 * k, 0);
  std::uint64_t* p1 = partial.data();
  std::uint64_t* p2 = p1 + k;
  std::uint64_t* p3 = p2 + k;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    ++counts[cells[i]];
    ++p1[cells[i + 1]];
    ++p2[cells[i + 2]];
    ++p3[cells[i + 3]];
  }
  for (; i < n; ++i) ++counts[cells[i]];
  for (std::size_t c = 0; c < k; ++c) counts[c] += p1[c] + p2[c] + p3[c];
}

// Replaces cells[i] by `sentinel` where mask lanes are clear, writing the
// result into out.
template <typename MaskFn>
void masked_cells(std::span<const std::uint32_t> cells, std::uint32_t sentinel,
                  std::span<std::uint32_t> out, MaskFn mask_at) {
  const __m256i sentinel_v = _mm256_set1_epi32(static_cast<int>(sentinel));
  const std::size_t n = cells.size();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i mask = mask_at(i);
    const __m256i c = load8(cells.data() + i);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + i),
                        _mm256_blendv_epi8(sentinel_v, c, mask));
  }
  for (; i < n; ++i) out[i] = mask_at.scalar(i) ? cells[i] : sentinel;
}

void compare_count(const std::uint32_t* data, std::size_t n,
                   std::span<std::uint64_t> counts) {
  const std::size_t vec_end = n - n % 8;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    const __m256i needle = _mm256_set1_epi32(static_cast<int>(c));
    __m256i acc = _mm256_setzero_si256();
    for (std::size_t i = 0; i < vec_end; i += 8) {
      acc = _mm256_sub_epi32(acc, _mm256_cmpeq_epi32(load8(data + i), needle));
    }
    counts[c] += hsum_epi32(acc);
  }
  for (std::size_t i = vec_end; i < n; ++i) ++counts[data[i]];
}

}  // namespace

void tally(std::span<const std::uint32_t> cells,
           std::span<std::uint64_t> counts) {
  if (counts.size() > kMaxCompareCells) {
    histogram4(cells, counts);
    return;
  }
  for (std::size_t start = 0; start < cells.size(); start += kBlock) {
    const std::size_t len = std::min(kBlock, cells.size() - start);
    compare_count(cells.data() + start, len, counts);
  }
}

namespace {

// Masked tallies route rejected rows into one extra sentinel cell, then
// histogram the rewritten block.
template <typename MaskFn>
void tally_masked(std::span<const std::uint32_t> cells,
                  std::span<std::uint64_t> counts, MaskFn mask_at) {
  const auto sentinel = static_cast<std::uint32_t>(counts.size());
  std::vector<std::uint64_t> widened(counts.size() + 1, 0);
  std::array<std::uint32_t, kBlock> buffer;
  for (std::size_t start = 0; start < cells.size(); start += kBlock) {
    const std::size_t len = std::min(kBlock, cells.size() - start);
    auto block = std::span<std::uint32_t>(buffer.data(), len);
    masked_cells(cells.subspan(start, len), sentinel, block,
                 mask_at.offset(start));
    tally(block, widened);
  }
  for (std::size_t c = 0; c < counts.size(); ++c) counts[c] += widened[c];
}

struct EqualMask {
  const std::uint32_t* a;
  const std::uint32_t* b;
  __m256i operator()(std::size_t i) const {
    return _mm256_cmpeq_epi32(load8(a + i), load8(b + i));
  }
  bool scalar(std::size_t i) const { return a[i] == b[i]; }
  EqualMask offset(std::size_t start) const { return {a + start, b + start}; }
};

struct ValueMask {
  const std::uint32_t* values;
  std::uint32_t value;
  __m256i operator()(std::size_t i) const {
    return _mm256_cmpeq_epi32(load8(values + i),
                              _mm256_set1_epi32(static_cast<int>(value)));
  }
  bool scalar(std::size_t i) const { return values[i] == value; }
  ValueMask offset(std::size_t start) const {
    return {values + start, value};
  }
};

}  // namespace

void tally_where_equal(std::span<const std::uint32_t> cells,
                       std::span<const std::uint32_t> a,
                       std::span<const std::uint32_t> b,
                       std::span<std::uint64_t> counts) {
  tally_masked(cells, counts, EqualMask{a.data(), b.data()});
}

void tally_where_value(std::span<const std::uint32_t> cells,
                       std::span<const std::uint32_t> values,
                       std::uint32_t value, std::span<std::uint64_t> counts) {
  tally_masked(cells, counts, ValueMask{values.data(), value});
}

std::uint64_t count_equal(std::span<const std::uint32_t> a,
                          std::span<const std::uint32_t> b) {
  const std::size_t n = a.size();
  std::uint64_t total = 0;
  std::size_t i = 0;
  // 32-bit lane counters; flush before they can overflow.
  constexpr std::size_t kFlush = std::size_t{1} << 30;
  while (i + 8 <= n) {
    const std::size_t stop = std::min(n - n % 8, i + kFlush);
    __m256i acc = _mm256_setzero_si256();
    for (; i < stop; i += 8) {
      acc = _mm256_sub_epi32(
          acc, _mm256_cmpeq_epi32(load8(a.data() + i), load8(b.data() + i)));
    }
    total += hsum_epi32(acc);
  }
  for (; i < n; ++i) total += a[i] == b[i];
  return total;
}

void combine_index(std::span<const std::uint32_t> major,
                   std::span<const std::uint32_t> minor,
                   std::uint32_t minor_size, std::span<std::uint32_t> out) {
  const __m256i scale = _mm256_set1_epi32(static_cast<int>(minor_size));
  const std::size_t n = major.size();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i product = _mm256_mullo_epi32(load8(major.data() + i), scale);
    const __m256i sum = _mm256_add_epi32(product, load8(minor.data() + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + i), sum);
  }
  for (; i < n; ++i) out[i] = major[i] * minor_size + minor[i];
}

}  // namespace avx2

const KernelTable& avx2_kernel_table() {
  static const KernelTable table{
      "avx2",           avx2::tally,       avx2::tally_where_equal,
      avx2::tally_where_value, avx2::count_equal, avx2::combine_index,
  };
  return table;
}

}  // namespace fairaudit::kernels
