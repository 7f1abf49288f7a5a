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

#include <random>
#include <set>

#include "dyncache/combinatorics.hpp"
#include "dyncache/errors.hpp"
#include "dyncache/placement.hpp"
#include "dyncache/scheduler.hpp"
#include "support.hpp"

using namespace dyncache;
using testing::find_stream;

namespace {

using Windows = std::vector<std::vector<int>>;

std::set<int> as_set(const std::vector<int> &v) { return {v.begin(), v.end()}; }

Schedule example_schedule(int which) {
    const NetworkConfig cfg = testing::example_config(which);
    return full_schedule(validate_config(cfg), association_from_lengths({5, 4, 3}, 4, cfg.per_tx_users));
}

} // namespace

TEST_CASE("first worked network windows", "[scheduler][example]") {
    const Association a = association_from_lengths({5, 4, 3}, 4, 3);
    const auto w = elevate_A(a);
    REQUIRE(w.size() == 3);
    CHECK(w[0] == Windows{{1, 2, 3}, {2, 3, 4}, {3, 4, 1}, {4, 1, 2}});
    CHECK(w[1] == Windows{{6, 7, 8}, {7, 8, 9}, {8, 9, 6}, {9, 6, 7}});
    CHECK(w[2] == Windows{{10, 11, 12}, {10, 11, 12}, {10, 11, 12}, {}});
}

TEST_CASE("first worked network triple (1,1,1)", "[scheduler][example]") {
    const NetworkConfig cfg = testing::example_config(1);
    const Association a = association_from_lengths({5, 4, 3}, 4, 3);
    const auto windows = elevate_A(a);
    const auto triples = enumerate_triples(cfg, a);
    REQUIRE(triples.size() == 4);
    CHECK(triples.front() == TripleA{1, 1, 1, false});
    CHECK(triple_profiles(cfg, triples.front()) == ProfileSet{1, 2, 3});

    SubpacketCounters counters(MiniFileIndex(3, 1), a.K, subpacketization(cfg));
    const auto subs = build_tx_A(cfg, a, windows, triples.front(), counters);
    REQUIRE(subs.size() == 2);
    const std::vector<int> T{1, 2, 3, 6, 7, 8, 10, 11, 12};
    for (auto &tx : subs) CHECK(tx.served_users == T);

    // x^1: profiles 2 and 3 on mini-file {1}, profile 1 on {2}
    for (int k : {6, 7, 8, 10, 11, 12}) CHECK(find_stream(subs[0], k)->lambda == ProfileSet{1});
    for (int k : {1, 2, 3}) CHECK(find_stream(subs[0], k)->lambda == ProfileSet{2});
    // x^2: profile 3 on {2}, profiles 1 and 2 on {3}
    for (int k : {10, 11, 12}) CHECK(find_stream(subs[1], k)->lambda == ProfileSet{2});
    for (int k : {1, 2, 3, 6, 7, 8}) CHECK(find_stream(subs[1], k)->lambda == ProfileSet{3});

    CHECK(find_stream(subs[0], 1)->nulling_set == std::vector<int>{2, 3, 10, 11, 12});
    CHECK(find_stream(subs[1], 1)->nulling_set == std::vector<int>{2, 3, 6, 7, 8});
    for (auto &tx : subs)
        for (auto &s : tx.streams) CHECK(s.q == 1);
}

TEST_CASE("first worked network end to end", "[scheduler][example]") {
    const Schedule s = example_schedule(1);
    std::map<int, int> cc, uc;
    for (auto &tx : s.transmissions)
        for (auto &st : tx.streams) ++(tx.cache_aided() ? cc : uc)[st.user];
    for (int k : {1, 2, 3, 4, 6, 7, 8, 9, 10, 11, 12}) CHECK(cc[k] == 6);
    CHECK(cc.count(5) == 0);
    CHECK(uc[5] == 6);
    CHECK(uc.size() == 1);
    CHECK(s.residual_log.empty());
    CHECK(s.T_M == 8);
    CHECK(s.T_U == 6);
}

TEST_CASE("second worked network quintuple (1,1,1,1,1)", "[scheduler][example]") {
    const NetworkConfig cfg = testing::example_config(2);
    const Association a = association_from_lengths({5, 4, 3}, 4, 4);
    const QuintupleB q{1, 1, 1, 1, 1};
    CHECK(design_counts(cfg).theta == 2);
    CHECK(e_users(cfg, a, 1, 1) == std::vector<int>{1, 2});
    CHECK(padded_profile(a, 3) == std::vector<int>{10, 11, 12, kPhantom});
    CHECK(p_bar(a, 1) == std::vector<int>{2, 3});
    CHECK(quintuple_profiles(cfg, a, q) == ProfileSet{2, 3});
    CHECK(b_tuples(cfg, a, q) == std::vector<ProfileSet>{{2}, {3}});
    CHECK(quintuple_active(cfg, a, q));

    SubpacketCounters counters(MiniFileIndex(3, 1), a.K, subpacketization(cfg));
    const auto subs = build_tx_B(cfg, a, q, counters);
    REQUIRE(subs.size() == 1);
    const Transmission &tx = subs[0];
    for (int k : {1, 2, 6, 7, 8, 9}) CHECK(find_stream(tx, k)->lambda == ProfileSet{3});
    for (int k : {10, 11, 12}) CHECK(find_stream(tx, k)->lambda == ProfileSet{2});
    CHECK(tx.streams.size() == 9);
    CHECK(as_set(find_stream(tx, 6)->nulling_set) == std::set<int>{1, 2, 7, 8, 9});
    CHECK(as_set(find_stream(tx, 10)->nulling_set) == std::set<int>{1, 2, 11, 12});
}

TEST_CASE("three-profile network elevation and triples", "[scheduler][example]") {
    NetworkConfig cfg = make_config(2, Rational(2, 3), 3, 2, 3);
    cfg.per_tx_users = 2;
    cfg.profiles_per_tx = 3;
    cfg.strategy = Strategy::A;
    REQUIRE_NOTHROW(validate_config(cfg));
    const Association a = association_from_lengths({3, 2, 1}, 3, 2);
    const auto w = elevate_A(a);
    CHECK(w[1][0] == std::vector<int>{4, 5});
    CHECK(w[1][1] == std::vector<int>{4, 5});
    CHECK(w[0] == Windows{{1, 2}, {2, 3}, {3, 1}});
    CHECK(enumerate_triples(cfg, a) ==
          std::vector<TripleA>{{1, 1, 1, false}, {1, 2, 1, false}, {1, 3, 1, false}});
}

TEST_CASE("P = Q has a single l per r", "[scheduler]") {
    NetworkConfig cfg = make_config(6, Rational(1, 3), 3, 6, 4);
    cfg.strategy = Strategy::A;
    cfg.per_tx_users = 3;
    const Association a = association_from_lengths({4, 4, 4}, 4, 3);
    for (auto &t : enumerate_triples(cfg, a)) {
        CHECK(t.r == 1);
        CHECK(t.l == 1);
    }
}

TEST_CASE("silent triples are excluded from T_M", "[scheduler]") {
    NetworkConfig cfg = make_config(4, Rational(1, 4), 4, 4, 2);
    cfg.per_tx_users = 2;
    cfg.profiles_per_tx = 2;
    cfg.strategy = Strategy::A;
    REQUIRE_NOTHROW(validate_config(cfg));
    const Association a = association_from_lengths({3, 2, 0, 0}, 2, 2);
    const auto triples = enumerate_triples(cfg, a);
    int silent = 0;
    for (auto &t : triples) silent += t.silent;
    CHECK(silent > 0);
    const Schedule s = full_schedule(validate_config(cfg), a);
    for (auto &tx : s.transmissions) CHECK_FALSE(tx.streams.empty());
}

TEST_CASE("unicast greedy traces", "[scheduler][uc]") {
    auto ids = [](int user, int n) {
        std::vector<SubpacketId> v;
        for (int q = 1; q <= n; ++q) v.push_back({user, {2}, q});
        return v;
    };
    {
        const Association a = association_from_lengths({1}, 1, 1);
        const auto txs = uc_schedule({{1, ids(1, 6)}}, a, 4);
        CHECK(txs.size() == 6);
        for (auto &tx : txs) CHECK(tx.streams.size() == 1);
    }
    {
        const Association a = association_from_lengths({5}, 5, 5);
        std::map<int, std::vector<SubpacketId>> m;
        for (int k = 1; k <= 5; ++k) m[k] = ids(k, 30);
        const auto txs = uc_schedule(m, a, 8);
        CHECK(txs.size() == 30);
        for (auto &tx : txs) {
            CHECK(tx.streams.size() == 5);
            for (auto &s : tx.streams) CHECK(s.nulling_set.size() == 4);
        }
    }
    {
        const Association a = association_from_lengths({2}, 2, 2);
        const auto txs = uc_schedule({{1, ids(1, 3)}, {2, ids(2, 1)}}, a, 2);
        REQUIRE(txs.size() == 3);
        CHECK(txs[0].served_users == std::vector<int>{1, 2});
        CHECK(txs[1].served_users == std::vector<int>{1});
        CHECK(txs[2].served_users == std::vector<int>{1});
    }
}

TEST_CASE("stored table schedules", "[scheduler]") {
    {
        NetworkConfig cfg = make_config(10, Rational(1, 5), 5, 9, 6);
        REQUIRE(cfg.strategy == Strategy::B);
        const Schedule s = full_schedule(validate_config(cfg), association_from_lengths({6, 6, 6, 6, 6}, 6, 6));
        CHECK(s.T_M == 360);
        CHECK(s.residual_log.empty());
    }
    {
        NetworkConfig cfg = make_config(10, Rational(1, 5), 15, 2, 2);
        REQUIRE(cfg.profiles_per_tx == 4);
        const Schedule s = full_schedule(validate_config(cfg), association_from_lengths(testing::uniform(30, 15), 2, 2));
        CHECK(s.T_M == 2730);
    }
}

TEST_CASE("Strategy B uniform transmission count", "[scheduler][property]") {
    // T_M = P nu1 nu2 eta_hat C(P-1, Q-1) when every delta_p = eta_hat
    for (int P : {3, 4, 5, 6})
        for (int t = 1; t < P; ++t)
            for (int eta : {2, 3, 4})
                for (int alpha = eta + 1; alpha <= 3 * eta; ++alpha) {
                    if (alpha % eta == 0) continue;
                    const int Q = t + (alpha + eta - 1) / eta;
                    if (Q > P) continue;
                    NetworkConfig cfg = make_config(alpha, Rational(t, P), P, alpha, eta);
                    REQUIRE(cfg.strategy == Strategy::B);
                    const Association a = association_from_lengths(std::vector<int>(P, eta), eta, eta);
                    const Schedule s = full_schedule(validate_config(cfg), a);
                    const DesignCounts dc = design_counts(cfg);
                    CHECK(s.T_M == P * dc.nu1 * dc.nu2 * eta * binom(P - 1, Q - 1));
                }
}

TEST_CASE("Strategy A per-user stream count", "[scheduler][property]") {
    // beta C(P-1, Q-1) nu2 streams per CC user when delta_p >= beta everywhere
    for (int P : {3, 4, 5})
        for (int t = 1; t < P; ++t)
            for (int eta : {2, 3, 4})
                for (int beta = 1; beta <= eta; ++beta)
                    for (int Q = t + 1; Q <= P; ++Q) {
                        const int alpha = (Q - t) * beta;
                        NetworkConfig cfg = make_config(alpha, Rational(t, P), P, alpha, eta);
                        cfg.strategy = Strategy::A;
                        cfg.per_tx_users = beta;
                        cfg.profiles_per_tx = Q;
                        try {
                            validate_config(cfg);
                        } catch (const ConstraintViolation &) {
                            continue;
                        }
                        const Association a = association_from_lengths(std::vector<int>(P, eta), eta, beta);
                        const Schedule s = full_schedule(validate_config(cfg), a);
                        std::map<int, std::int64_t> count;
                        for (auto &tx : s.transmissions)
                            if (tx.cache_aided())
                                for (auto &st : tx.streams) ++count[st.user];
                        const std::int64_t expect = beta * binom(P - 1, Q - 1) * design_counts(cfg).nu2;
                        for (int k = 1; k <= a.K; ++k) CHECK(count[k] == expect);
                    }
}

TEST_CASE("generated schedules respect the stream invariants", "[scheduler][property]") {
    std::mt19937_64 rng(2024);
    for (Strategy strategy : {Strategy::A, Strategy::B})
        for (int trial = 0; trial < 60; ++trial) {
            const auto rc = testing::random_case(strategy, rng);
            const Association a = testing::association_for(rc.cfg, rc.lengths);
            const Schedule s = full_schedule(validate_config(rc.cfg), a);
            for (auto &tx : s.transmissions) {
                std::set<int> seen;
                for (auto &st : tx.streams) {
                    CHECK(st.user != kPhantom);
                    CHECK(static_cast<int>(st.nulling_set.size()) <= rc.cfg.multiplexing_gain - 1);
                    CHECK_FALSE(contains(st.nulling_set, st.user));
                    CHECK(seen.insert(st.user).second);
                }
                CHECK(as_set(tx.served_users) == seen);
            }
            std::int64_t cc_streams = 0, cc_tx = 0;
            for (auto &tx : s.transmissions)
                if (tx.cache_aided()) {
                    ++cc_tx;
                    cc_streams += static_cast<std::int64_t>(tx.streams.size());
                }
            CHECK(s.T_M == cc_tx);
            CHECK(s.J_M == cc_streams);
            CHECK(s.T_M + s.T_U == static_cast<std::int64_t>(s.transmissions.size()));
        }
}

TEST_CASE("schedules are deterministic", "[scheduler]") {
    const Schedule a = example_schedule(1);
    const Schedule b = example_schedule(1);
    CHECK(a.transmissions == b.transmissions);
    CHECK(example_schedule(2).transmissions == example_schedule(2).transmissions);
}

TEST_CASE("efficient multicast filter", "[scheduler]") {
    NetworkConfig cfg = make_config(8, Rational(1, 5), 5, 8, 9);
    const Association a = association_from_lengths({9, 8, 6, 5, 2}, cfg.delivery_param, cfg.per_tx_users);
    const Schedule plain = full_schedule(validate_config(cfg), a);
    const Schedule eff = full_schedule(validate_config(cfg), a, {true});
    for (auto &tx : eff.transmissions)
        if (tx.cache_aided()) CHECK(static_cast<int>(tx.served_users.size()) >= cfg.multiplexing_gain);
    CHECK(eff.dropped_cc > 0);
    CHECK(eff.T_M == plain.T_M - eff.dropped_cc);
    CHECK_FALSE(eff.rerouted_log.empty());
}

TEST_CASE("no-CC schedule serves alpha users per round", "[scheduler]") {
    const NetworkConfig cfg = make_config(8, Rational(1, 5), 5, 8, 6);
    const Association a = association_from_lengths({6, 6, 6, 6, 6}, 6, cfg.per_tx_users);
    const Schedule s = nocc_schedule(validate_config(cfg), a);
    CHECK(s.T_M == 0);
    for (auto &tx : s.transmissions) CHECK(tx.streams.size() <= 8);
    const std::int64_t per_user = missing_subpackets(cfg, a, 1).size();
    CHECK(s.J_U == 30 * per_user);
    CHECK(s.T_U == (30 * per_user + 7) / 8);
}

TEST_CASE("subpacket counters stop at S", "[scheduler]") {
    const MiniFileIndex idx(3, 1);
    SubpacketCounters c(idx, 2, 2);
    CHECK(c.next(1, {2}) == 1);
    CHECK(c.next(1, {2}) == 2);
    CHECK(c.used(1, {2}) == 2);
    CHECK_THROWS_AS(c.next(1, {2}), CounterExhausted);
}
