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

#include "dyncache/verifier.hpp"

#include <algorithm>

#include "dyncache/errors.hpp"

namespace dyncache {

std::string to_string(DecodeViolation::Kind k) {
    using K = DecodeViolation::Kind;
    switch (k) {
    case K::VisibleInterference: return "visible_interference";
    case K::MissingStream: return "missing_stream";
    case K::MultipleStreams: return "multiple_streams";
    case K::SelfNulling: return "self_nulling";
    case K::NullingTooLarge: return "nulling_too_large";
    case K::PhantomOrUnknown: return "phantom_or_unknown_user";
    case K::WrongProfile: return "wrong_profile";
    case K::CachedSubpacket: return "cached_subpacket";
    }
    return "?";
}

DecodeReport decode_check(const Schedule &schedule, const MiniFileIndex &, const Association &assoc) {
    using K = DecodeViolation::Kind;
    DecodeReport report;
    const int alpha = schedule.cfg.multiplexing_gain;
    for (std::size_t t = 0; t < schedule.transmissions.size(); ++t) {
        const Transmission &tx = schedule.transmissions[t];
        ++report.transmissions_checked;
        auto flag = [&](K kind, int user, std::size_t j) { report.violations.push_back({kind, t, user, j}); };

        std::vector<int> users = tx.served_users;
        for (std::size_t j = 0; j < tx.streams.size(); ++j) {
            const Stream &s = tx.streams[j];
            if (s.user < 1 || s.user > assoc.K) {
                flag(K::PhantomOrUnknown, s.user, j);
                continue;
            }
            users.push_back(s.user);
            if (s.profile != assoc.profile(s.user)) flag(K::WrongProfile, s.user, j);
            if (contains(s.lambda, assoc.profile(s.user))) flag(K::CachedSubpacket, s.user, j);
            if (std::find(s.nulling_set.begin(), s.nulling_set.end(), s.user) != s.nulling_set.end())
                flag(K::SelfNulling, s.user, j);
            if (static_cast<int>(s.nulling_set.size()) > alpha - 1) flag(K::NullingTooLarge, s.user, j);
        }
        std::sort(users.begin(), users.end());
        users.erase(std::unique(users.begin(), users.end()), users.end());

        for (int k : users) {
            if (k < 1 || k > assoc.K) continue;
            const int pk = assoc.profile(k);
            std::size_t own = 0;
            for (std::size_t j = 0; j < tx.streams.size(); ++j) {
                const Stream &s = tx.streams[j];
                if (s.user == k) {
                    ++own;
                    continue;
                }
                const bool cancelled = tx.cache_aided() && contains(s.lambda, pk);
                const bool nulled =
                    std::find(s.nulling_set.begin(), s.nulling_set.end(), k) != s.nulling_set.end();
                if (!cancelled && !nulled) flag(K::VisibleInterference, k, j);
            }
            if (own == 0) flag(K::MissingStream, k, 0);
            if (own > 1) flag(K::MultipleStreams, k, 0);
        }
    }
    return report;
}

DecodeReport decode_check(const Schedule &schedule) {
    return decode_check(schedule, MiniFileIndex(schedule.cfg.num_profiles, schedule.cfg.t_bar),
                        schedule.assoc);
}

CoverageReport coverage_check(const Schedule &schedule, const MiniFileIndex &index) {
    CoverageReport report;
    const NetworkConfig &cfg = schedule.cfg;
    const Association &assoc = schedule.assoc;
    const std::int64_t S = subpacketization(cfg);
    const std::size_t per_user = static_cast<std::size_t>(index.count() * S);
    std::vector<std::vector<int>> count(assoc.K + 1, std::vector<int>(per_user, 0));

    for (auto &tx : schedule.transmissions)
        for (auto &s : tx.streams) {
            ++report.delivered;
            const bool valid_user = s.user >= 1 && s.user <= assoc.K;
            const bool valid_lambda =
                static_cast<int>(s.lambda.size()) == index.t() &&
                std::all_of(s.lambda.begin(), s.lambda.end(), [&](int p) { return p >= 1 && p <= index.P(); }) &&
                std::is_sorted(s.lambda.begin(), s.lambda.end());
            if (!valid_user || !valid_lambda || s.q < 1 || s.q > S ||
                contains(s.lambda, assoc.profile(s.user))) {
                report.unexpected.push_back({s.user, s.lambda, s.q});
                continue;
            }
            ++count[s.user][static_cast<std::size_t>(index.rank(s.lambda) * S + (s.q - 1))];
        }

    for (int k = 1; k <= assoc.K; ++k)
        for (auto &id : missing_subpackets(cfg, assoc, k)) {
            ++report.demanded;
            const int c = count[k][static_cast<std::size_t>(index.rank(id.lambda) * S + (id.q - 1))];
            if (c == 0) report.missing.push_back(id);
            for (int extra = 1; extra < c; ++extra) report.duplicates.push_back(id);
        }
    return report;
}

CoverageReport coverage_check(const Schedule &schedule) {
    return coverage_check(schedule, MiniFileIndex(schedule.cfg.num_profiles, schedule.cfg.t_bar));
}

Rational count_dof(const Schedule &schedule) {
    std::int64_t streams = 0;
    std::int64_t txs = 0;
    for (auto &tx : schedule.transmissions) {
        ++txs;
        streams += static_cast<std::int64_t>(tx.streams.size());
    }
    if (txs == 0) throw DivByZero("schedule has no transmissions");
    return Rational(streams, txs);
}

} // namespace dyncache
