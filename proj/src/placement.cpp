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

#include "dyncache/placement.hpp"

#include <numeric>

#include "dyncache/errors.hpp"

namespace dyncache {

MiniFileIndex::MiniFileIndex(int P, int t) : P_(P), t_(t) {
    std::vector<int> all(P);
    std::iota(all.begin(), all.end(), 1);
    subsets_ = k_subsets(all, t);
}

std::int64_t MiniFileIndex::rank(const ProfileSet &lambda) const {
    if (static_cast<int>(lambda.size()) != t_) throw Error("mini-file subset has the wrong size");
    return subset_rank(P_, lambda);
}

std::vector<ProfileSet> cache_contents(int P, int t, int p) {
    if (p < 1 || p > P) throw ConstraintViolation("violated: 1 <= p <= P");
    std::vector<ProfileSet> out;
    const MiniFileIndex index(P, t);
    for (auto &lambda : index.subsets())
        if (contains(lambda, p)) out.push_back(lambda);
    return out;
}

std::int64_t subpacketization(const NetworkConfig &cfg) {
    const int P = cfg.num_profiles;
    const int t = cfg.t_bar;
    const int Q = cfg.profiles_per_tx;
    const std::int64_t base = binom(P - t - 1, Q - t - 1);
    if (cfg.strategy == Strategy::A) return cfg.per_tx_users * base;
    const std::int64_t nu1 = binom(Q - 2, Q - t - 2);
    return (static_cast<std::int64_t>(cfg.delivery_param) * t + cfg.multiplexing_gain) * base * nu1;
}

std::int64_t subpacketization(const NetworkConfig &cfg, const Association &) {
    return subpacketization(cfg);
}

std::int64_t total_subpacketization(const NetworkConfig &cfg) {
    return binom(cfg.num_profiles, cfg.t_bar) * subpacketization(cfg);
}

std::vector<SubpacketId> missing_subpackets(const NetworkConfig &cfg, const Association &assoc,
                                            int user) {
    const int p = assoc.profile(user);
    const std::int64_t S = subpacketization(cfg);
    std::vector<SubpacketId> out;
    const MiniFileIndex index(cfg.num_profiles, cfg.t_bar);
    for (auto &lambda : index.subsets()) {
        if (contains(lambda, p)) continue;
        for (int q = 1; q <= S; ++q) out.push_back({user, lambda, q});
    }
    return out;
}

} // namespace dyncache
