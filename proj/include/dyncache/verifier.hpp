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
#include <string>
#include <vector>

#include "dyncache/placement.hpp"
#include "dyncache/rational.hpp"
#include "dyncache/scheduler.hpp"

namespace dyncache {

struct DecodeViolation {
    enum class Kind {
        VisibleInterference, ///< stream heard by a user that does not null it
        MissingStream,       ///< served user without a stream
        MultipleStreams,     ///< SIC-free rule broken
        SelfNulling,         ///< stream nulls its own user
        NullingTooLarge,     ///< more than alpha - 1 nulls
        PhantomOrUnknown,    ///< stream targets a user id outside the network
        WrongProfile,        ///< stream profile disagrees with the association
        CachedSubpacket,     ///< stream carries a mini-file its user already caches
    };
    Kind kind;
    std::size_t tx_index = 0;
    int user = 0;
    std::size_t stream_index = 0;
};
std::string to_string(DecodeViolation::Kind k);

struct DecodeReport {
    std::vector<DecodeViolation> violations;
    std::size_t transmissions_checked = 0;
    bool ok() const { return violations.empty(); }
};

/// Symbolic decodability: every stream heard by a co-served user must be in
/// that user's cache (Lambda contains its profile) or nulled toward it.
DecodeReport decode_check(const Schedule &schedule, const MiniFileIndex &placement,
                          const Association &assoc);
DecodeReport decode_check(const Schedule &schedule);

struct CoverageReport {
    std::vector<SubpacketId> missing;    ///< demanded, never delivered
    std::vector<SubpacketId> duplicates; ///< delivered more than once
    std::vector<SubpacketId> unexpected; ///< delivered but not demanded
    std::int64_t demanded = 0;
    std::int64_t delivered = 0;
    bool ok() const { return missing.empty() && duplicates.empty() && unexpected.empty(); }
};

/// Delivered (user, Lambda, q) multiset versus the demanded one.
CoverageReport coverage_check(const Schedule &schedule, const MiniFileIndex &placement);
CoverageReport coverage_check(const Schedule &schedule);

/// (J_M + J_U) / (T_M + T_U), recomputed from the transmissions themselves.
/// Throws DivByZero for an empty schedule.
Rational count_dof(const Schedule &schedule);

} // namespace dyncache
