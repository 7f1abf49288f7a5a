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

#include "dyncache/combinatorics.hpp"

#include <algorithm>
#include <limits>

#include "dyncache/errors.hpp"

namespace dyncache {

std::int64_t binom(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::int64_t result = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        // result * (n - k + i) / i stays integral at every step
        std::int64_t factor = n - k + i;
        if (result > std::numeric_limits<std::int64_t>::max() / factor)
            throw Error("binomial coefficient overflows int64");
        result = result * factor / i;
    }
    return result;
}

int mod1(std::int64_t x, int c) {
    std::int64_t r = (x - 1) % c;
    if (r < 0) r += c;
    return static_cast<int>(r + 1);
}

std::vector<std::vector<int>> k_subsets(const std::vector<int> &items, int k) {
    std::vector<std::vector<int>> out;
    const int n = static_cast<int>(items.size());
    if (k < 0 || k > n) return out;
    std::vector<int> pos(k);
    for (int i = 0; i < k; ++i) pos[i] = i;
    while (true) {
        std::vector<int> subset(k);
        for (int i = 0; i < k; ++i) subset[i] = items[pos[i]];
        out.push_back(std::move(subset));
        int i = k - 1;
        while (i >= 0 && pos[i] == n - k + i) --i;
        if (i < 0) break;
        ++pos[i];
        for (int j = i + 1; j < k; ++j) pos[j] = pos[j - 1] + 1;
    }
    return out;
}

std::int64_t subset_rank(int n, const ProfileSet &subset) {
    const int t = static_cast<int>(subset.size());
    std::int64_t rank = 0;
    int prev = 0;
    for (int i = 0; i < t; ++i) {
        for (int v = prev + 1; v < subset[i]; ++v) rank += binom(n - v, t - i - 1);
        prev = subset[i];
    }
    return rank;
}

ProfileSet subset_unrank(int n, int t, std::int64_t rank) {
    ProfileSet out;
    out.reserve(t);
    int v = 1;
    for (int i = 0; i < t; ++i) {
        while (true) {
            std::int64_t block = binom(n - v, t - i - 1);
            if (rank < block) break;
            rank -= block;
            ++v;
        }
        out.push_back(v);
        ++v;
    }
    return out;
}

bool contains(const std::vector<int> &sorted, int value) {
    return std::binary_search(sorted.begin(), sorted.end(), value);
}

} // namespace dyncache
