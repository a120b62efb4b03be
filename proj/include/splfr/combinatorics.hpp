// Copyright 2026 The splfr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "splfr/rational.hpp"

namespace splfr {

/// C(n, k) with the convention C(n, k) = 0 for k > n. Throws
/// std::overflow_error if the result does not fit in 64 bits.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // acc * (n - k + i) is divisible by i at every step.
    acc = acc * (n - k + i) / i;
    if (acc > UINT64_MAX) throw std::overflow_error("binomial overflow");
  }
  return static_cast<std::uint64_t>(acc);
}

inline big_int big_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  big_int acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
  return acc;
}

/// All k-subsets of {0, ..., n-1} in lexicographic order, each sorted.
inline std::vector<std::vector<unsigned>> subsets_lex(unsigned n, unsigned k) {
  std::vector<std::vector<unsigned>> out;
  if (k > n) return out;
  std::vector<unsigned> cur(k);
  for (unsigned i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int i = static_cast<int>(k) - 1;
    while (i >= 0 && cur[i] == n - k + static_cast<unsigned>(i)) --i;
    if (i < 0) break;
    ++cur[i];
    for (unsigned j = static_cast<unsigned>(i) + 1; j < k; ++j)
      cur[j] = cur[j - 1] + 1;
  }
  return out;
}

/// 0-based lexicographic rank of a sorted k-subset of {0, ..., n-1}.
inline std::uint64_t subset_rank_lex(const std::vector<unsigned>& subset,
                                     unsigned n) {
  const auto k = static_cast<unsigned>(subset.size());
  std::uint64_t rank = 0;
  unsigned prev = 0;
  for (unsigned i = 0; i < k; ++i) {
    const unsigned start = i == 0 ? 0 : prev + 1;
    for (unsigned v = start; v < subset[i]; ++v)
      rank += binomial(n - 1 - v, k - 1 - i);
    prev = subset[i];
  }
  return rank;
}

}  // namespace splfr
