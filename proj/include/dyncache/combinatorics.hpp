// SPDX-License-Identifier: Apache-2.0
//
// dyncache: shared-cache coded caching for dynamic MISO downlinks
// Copyright (C) 2026 The dyncache authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <vector>

namespace dyncache {

/// Sorted list of 1-based profile indices.
using ProfileSet = std::vector<int>;

/// Binomial coefficient, 0 outside 0 <= k <= n. Throws on int64 overflow.
std::int64_t binom(std::int64_t n, std::int64_t k);

/// 1-based circular index: mod1(c, c) == c and mod1(d + c, c) == mod1(d, c).
int mod1(std::int64_t x, int c);

/// All k-element sub-sequences of items, in lexicographic order of positions.
std::vector<std::vector<int>> k_subsets(const std::vector<int> &items, int k);

/// Lexicographic rank (0-based) of a sorted t-subset of {1..n}.
std::int64_t subset_rank(int n, const ProfileSet &subset);

/// Inverse of subset_rank.
ProfileSet subset_unrank(int n, int t, std::int64_t rank);

bool contains(const std::vector<int> &sorted, int value);

} // namespace dyncache
