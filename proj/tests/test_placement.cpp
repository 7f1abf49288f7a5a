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

#include <catch_amalgamated.hpp>

#include "dyncache/combinatorics.hpp"
#include "dyncache/placement.hpp"
#include "support.hpp"

using namespace dyncache;

TEST_CASE("cache contents per profile", "[placement]") {
    CHECK(cache_contents(3, 1, 1) == std::vector<ProfileSet>{{1}});
    CHECK(cache_contents(5, 1, 3) == std::vector<ProfileSet>{{3}});
    CHECK(cache_contents(5, 2, 1) == std::vector<ProfileSet>{{1, 2}, {1, 3}, {1, 4}, {1, 5}});
    CHECK_THROWS(cache_contents(5, 2, 6));
}

TEST_CASE("each profile caches a gamma fraction", "[placement][property]") {
    for (int P = 1; P <= 9; ++P)
        for (int t = 1; t <= P; ++t) {
            std::int64_t stored = 0;
            for (int p = 1; p <= P; ++p) {
                const auto z = cache_contents(P, t, p);
                CHECK(static_cast<std::int64_t>(z.size()) == binom(P - 1, t - 1));
                stored += static_cast<std::int64_t>(z.size());
            }
            // sum_p |Z_p| / C(P, t) = P gamma = t
            CHECK(stored == t * binom(P, t));
        }
}

TEST_CASE("mini-file index enumerates every subset once", "[placement]") {
    for (int P = 1; P <= 8; ++P)
        for (int t = 0; t <= P; ++t) {
            const MiniFileIndex idx(P, t);
            CHECK(idx.count() == binom(P, t));
            for (std::int64_t r = 0; r < idx.count(); ++r) {
                CHECK(idx.rank(idx.at(r)) == r);
                CHECK(std::is_sorted(idx.at(r).begin(), idx.at(r).end()));
            }
        }
}

TEST_CASE("subpacketization per strategy", "[placement]") {
    CHECK(subpacketization(testing::example_config(1)) == 3);
    CHECK(subpacketization(testing::example_config(2)) == 10);
    NetworkConfig c = make_config(10, Rational(1, 5), 5, 9, 6);
    REQUIRE(c.strategy == Strategy::B);
    REQUIRE(c.profiles_per_tx == 3);
    CHECK(total_subpacketization(c) == 225);
}

TEST_CASE("missing subpackets", "[placement]") {
    const NetworkConfig c1 = testing::example_config(1);
    const Association a1 = association_from_lengths({5, 4, 3}, 4, 3);
    const auto m1 = missing_subpackets(c1, a1, 1);
    CHECK(m1.size() == 6);
    for (auto &id : m1) CHECK_FALSE(contains(id.lambda, 1));

    const NetworkConfig c2 = testing::example_config(2);
    const Association a2 = association_from_lengths({5, 4, 3}, 4, 4);
    CHECK(missing_subpackets(c2, a2, 1).size() == 20);

    // every user: missing + cached = C(P, t) S
    for (int k = 1; k <= a2.K; ++k) {
        const auto cached = cache_contents(3, 1, a2.profile(k)).size() * subpacketization(c2);
        CHECK(missing_subpackets(c2, a2, k).size() + cached ==
              static_cast<std::size_t>(total_subpacketization(c2)));
    }

    NetworkConfig full = c1;
    full.t_bar = 3;
    CHECK(missing_subpackets(full, a1, 1).empty());
}
