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
#include <map>
#include <string>
#include <vector>

#include "dyncache/combinatorics.hpp"
#include "dyncache/model.hpp"
#include "dyncache/placement.hpp"

namespace dyncache {

/// One precoded stream: subpacket (lambda, q) for `user`, zero-forced at
/// every user in `nulling_set`.
struct Stream {
    int user = 0;
    int profile = 0; ///< profile of `user`, kept for visibility tests
    ProfileSet lambda;
    int q = 0;
    std::vector<int> nulling_set; ///< sorted user ids

    bool operator==(const Stream &) const = default;
};

enum class TxKind { CC_A, CC_B, UC };
std::string to_string(TxKind k);

struct Transmission {
    TxKind kind = TxKind::UC;
    /// (r, c, l) for CC_A, (r, c, l, m, s) for CC_B, (round) for UC.
    std::vector<int> origin;
    int sub_index = 1;
    std::vector<Stream> streams;
    std::vector<int> served_users; ///< sorted

    bool cache_aided() const { return kind != TxKind::UC; }
    /// Whether stream j is heard (not cache-cancelled) by a user of profile p.
    bool visible_to_profile(std::size_t j, int p) const;
    bool operator==(const Transmission &) const = default;
};

struct Schedule {
    NetworkConfig cfg;
    Association assoc;
    std::vector<Transmission> transmissions;
    std::int64_t J_M = 0;
    std::int64_t T_M = 0;
    std::int64_t J_U = 0;
    std::int64_t T_U = 0;
    /// Subpackets of CC-served users that the CC step did not deliver.
    std::vector<SubpacketId> residual_log;
    /// Subpackets moved to unicast by the efficient-multicast filter.
    std::vector<SubpacketId> rerouted_log;
    /// CC transmissions removed by the efficient-multicast filter.
    std::int64_t dropped_cc = 0;
};

/// Per-(user, mini-file) subpacket counters, consumed in increasing q.
class SubpacketCounters {
  public:
    SubpacketCounters(const MiniFileIndex &index, int K, std::int64_t S);
    /// Next q for (user, lambda). Throws CounterExhausted beyond S.
    int next(int user, const ProfileSet &lambda);
    int used(int user, const ProfileSet &lambda) const;

  private:
    MiniFileIndex index_;
    std::int64_t S_;
    std::vector<std::vector<int>> used_;
};

/// Window lists S_p of Strategy A: entry [p-1][c-1] is the c-th window of
/// profile p, for c = 1..max(eta_hat, phi_p). Windows past phi_p are empty.
std::vector<std::vector<std::vector<int>>> elevate_A(const Association &assoc);

struct TripleA {
    int r = 0;
    int c = 0;
    int l = 0;
    bool silent = false; ///< delta_r == 0, nothing is sent
    auto operator<=>(const TripleA &) const = default;
};

/// All (r, c, l) in nested order; l indexes the lexicographic (Q-1)-subsets of
/// [r+1 .. P].
std::vector<TripleA> enumerate_triples(const NetworkConfig &cfg, const Association &assoc);

/// Profiles {r} and M_r(l) of a triple.
ProfileSet triple_profiles(const NetworkConfig &cfg, const TripleA &triple);

/// The nu2 SIC-free sub-transmissions of a non-silent triple.
std::vector<Transmission> build_tx_A(const NetworkConfig &cfg, const Association &assoc,
                                     const std::vector<std::vector<std::vector<int>>> &windows,
                                     const TripleA &triple, SubpacketCounters &counters);

struct QuintupleB {
    int r = 0;
    int c = 0;
    int l = 0;
    int m = 0;
    int s = 0;
    auto operator<=>(const QuintupleB &) const = default;
};

/// Phantom user marker inside padded lists.
inline constexpr int kPhantom = 0;

/// Y_r: V_r padded with phantoms to eta_hat entries.
std::vector<int> padded_profile(const Association &assoc, int r);

/// E_r^m, of length theta; may contain phantoms.
std::vector<int> e_users(const NetworkConfig &cfg, const Association &assoc, int r, int m);

/// P-bar_r: other profiles sorted by descending delta, ties by index.
std::vector<int> p_bar(const Association &assoc, int r);

/// Profile set F = {delta-bar_c} and I_c^r(l).
ProfileSet quintuple_profiles(const NetworkConfig &cfg, const Association &assoc,
                              const QuintupleB &qt);

/// B(n): lexicographic floor(alpha / eta_hat)-subsets of F.
std::vector<ProfileSet> b_tuples(const NetworkConfig &cfg, const Association &assoc,
                                 const QuintupleB &qt);

/// I+(delta-bar_c, E_r^m).
bool quintuple_active(const NetworkConfig &cfg, const Association &assoc, const QuintupleB &qt);

/// All (r, c, l, m, s) in nested order, including inactive ones.
std::vector<QuintupleB> enumerate_quintuples(const NetworkConfig &cfg, const Association &assoc);

/// The nu1 SIC-free sub-transmissions of an active quintuple; empty when inactive.
std::vector<Transmission> build_tx_B(const NetworkConfig &cfg, const Association &assoc,
                                     const QuintupleB &qt, SubpacketCounters &counters);

/// Greedy unicast: each round serves one subpacket to each of the (up to alpha)
/// users with most remaining subpackets, ties by user id.
std::vector<Transmission> uc_schedule(const std::map<int, std::vector<SubpacketId>> &missing,
                                      const Association &assoc, int alpha);

struct ScheduleOptions {
    bool efficient_multicast = false;
};

/// CC step of the configured strategy followed by the unicast step.
Schedule full_schedule(const ValidatedConfig &cfg, const Association &assoc,
                       const ScheduleOptions &opts = {});

/// Pure unicast schedule (no coded caching), every user fetching its
/// uncached subpackets at the subpacketization of cfg.
Schedule nocc_schedule(const ValidatedConfig &cfg, const Association &assoc);

} // namespace dyncache
