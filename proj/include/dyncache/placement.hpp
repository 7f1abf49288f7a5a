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

#include "dyncache/combinatorics.hpp"
#include "dyncache/model.hpp"

namespace dyncache {

/// Lexicographic list of all t-subsets of [P]; mini-file Lambda has rank
/// MiniFileIndex::rank(Lambda).
class MiniFileIndex {
  public:
    MiniFileIndex(int P, int t);

    int P() const { return P_; }
    int t() const { return t_; }
    std::int64_t count() const { return static_cast<std::int64_t>(subsets_.size()); }
    const std::vector<ProfileSet> &subsets() const { return subsets_; }
    const ProfileSet &at(std::int64_t rank) const { return subsets_.at(rank); }
    std::int64_t rank(const ProfileSet &lambda) const;

  private:
    int P_;
    int t_;
    std::vector<ProfileSet> subsets_;
};

struct SubpacketId {
    int user = 0;
    ProfileSet lambda;
    int q = 0;

    auto operator<=>(const SubpacketId &) const = default;
};

/// Mini-files stored by profile p: every Lambda that contains p.
std::vector<ProfileSet> cache_contents(int P, int t, int p);

/// Subpackets per mini-file for the active strategy (S_A or S_B).
std::int64_t subpacketization(const NetworkConfig &cfg);
std::int64_t subpacketization(const NetworkConfig &cfg, const Association &assoc);

/// Subpackets in one whole file, C(P, t_bar) * S.
std::int64_t total_subpacketization(const NetworkConfig &cfg);

/// Every (Lambda, q) with p[k] not in Lambda, ordered by (rank(Lambda), q).
std::vector<SubpacketId> missing_subpackets(const NetworkConfig &cfg, const Association &assoc,
                                            int user);

} // namespace dyncache
