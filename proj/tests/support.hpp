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

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "dyncache/errors.hpp"
#include "dyncache/model.hpp"
#include "dyncache/scheduler.hpp"

namespace dyncache::testing {

inline std::vector<int> uniform(int K, int P) {
    std::vector<int> v(P, K / P);
    for (int i = 0; i < K % P; ++i) ++v[i];
    return v;
}

inline NetworkConfig example_config(int which) {
    NetworkConfig c;
    c.num_antennas = 6;
    c.library_size = 3;
    c.cache_files = 1;
    c.cache_ratio = Rational(1, 3);
    c.num_profiles = 3;
    c.t_bar = 1;
    c.multiplexing_gain = 6;
    c.delivery_param = 4;
    c.profiles_per_tx = 3;
    c.per_tx_users = which == 1 ? 3 : 4;
    c.strategy = which == 1 ? Strategy::A : Strategy::B;
    return c;
}

/// A validated design together with a random association for it.
struct RandomCase {
    NetworkConfig cfg;
    std::vector<int> lengths;
};

/// Random valid network with K <= 40 and P <= 6 for the given strategy.
/// Strategy A draws any admissible (eta_hat, Q); Strategy B draws alpha and
/// eta_hat with a non-integer ratio.
inline RandomCase random_case(Strategy strategy, std::mt19937_64 &rng, bool uniform_lengths = false) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    for (;;) {
        const int P = pick(2, 6);
        const int t = pick(1, P - 1);
        const Rational gamma(t, P);
        const int K = pick(std::max(P, 4), 40);
        std::vector<int> lengths;
        if (uniform_lengths) {
            lengths = uniform(K - K % P, P);
        } else {
            lengths.assign(P, 0);
            std::uniform_int_distribution<int> who(0, P - 1);
            for (int k = 0; k < K; ++k) ++lengths[who(rng)];
        }
        const int eta_1 = *std::max_element(lengths.begin(), lengths.end());
        if (eta_1 == 0) continue;
        const int eta_hat = pick(1, eta_1);
        NetworkConfig cfg;
        if (strategy == Strategy::A) {
            const int alpha = pick(1, 12);
            const int beta = std::min(alpha, eta_hat);
            const int q_max = std::min(P, t + alpha / beta);
            if (q_max < t + 1) continue;
            cfg = make_config(alpha, gamma, P, alpha, eta_hat);
            cfg.strategy = Strategy::A;
            cfg.per_tx_users = beta;
            cfg.profiles_per_tx = pick(t + 1, q_max);
        } else {
            const int alpha = pick(eta_hat + 1, eta_hat + 10);
            if (!strategy_b_applicable(alpha, eta_hat)) continue;
            const int Q = t + (alpha + eta_hat - 1) / eta_hat;
            if (Q > P) continue;
            cfg = make_config(alpha, gamma, P, alpha, eta_hat);
            cfg.strategy = Strategy::B;
            cfg.per_tx_users = eta_hat;
            cfg.profiles_per_tx = Q;
        }
        try {
            validate_config(cfg);
        } catch (const Error &) {
            continue;
        }
        return {cfg, lengths};
    }
}

inline Association association_for(const NetworkConfig &cfg, const std::vector<int> &lengths) {
    return association_from_lengths(lengths, cfg.delivery_param, cfg.per_tx_users);
}

inline const Stream *find_stream(const Transmission &tx, int user) {
    for (auto &s : tx.streams)
        if (s.user == user) return &s;
    return nullptr;
}

} // namespace dyncache::testing
