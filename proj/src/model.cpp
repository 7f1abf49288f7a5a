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

#include "dyncache/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dyncache/combinatorics.hpp"
#include "dyncache/errors.hpp"

namespace dyncache {

std::string to_string(Strategy s) { return s == Strategy::A ? "A" : "B"; }

Strategy parse_strategy(const std::string &text) {
    if (text == "A" || text == "a") return Strategy::A;
    if (text == "B" || text == "b") return Strategy::B;
    throw UsageError("strategy must be A or B, got '" + text + "'");
}

int t_bar_of(const Rational &gamma, int P) {
    Rational t = gamma * Rational(P);
    if (t.denominator() != 1)
        throw NonIntegerTBar("P*gamma = " + to_string(t) + " is not an integer");
    return static_cast<int>(t.numerator());
}

bool strategy_b_applicable(int alpha, int eta_hat) {
    return alpha > eta_hat && alpha % eta_hat != 0;
}

namespace {

void require(bool condition, const std::string &inequality) {
    if (!condition) throw ConstraintViolation("violated: " + inequality);
}

int ceil_div(int a, int b) { return (a + b - 1) / b; }

} // namespace

ValidatedConfig validate_config(const NetworkConfig &cfg) {
    require(cfg.num_antennas >= 1, "L >= 1");
    require(cfg.library_size >= 1, "N >= 1");
    require(cfg.cache_files >= 1, "M >= 1");
    require(cfg.num_profiles >= 1, "P >= 1");
    require(cfg.multiplexing_gain >= 1, "alpha >= 1");
    require(cfg.delivery_param >= 1, "eta_hat >= 1");
    require(cfg.per_tx_users >= 1, "beta >= 1");
    require(cfg.profiles_per_tx >= 1, "Q >= 1");
    require(cfg.noise_power > 0.0 && std::isfinite(cfg.noise_power), "N0 > 0");
    require(cfg.tx_power > 0.0 && std::isfinite(cfg.tx_power), "P_T > 0");
    require(cfg.cache_ratio == Rational(cfg.cache_files, cfg.library_size), "gamma = M/N");
    require(cfg.cache_ratio > Rational(0) && cfg.cache_ratio < Rational(1), "0 < gamma < 1");

    const int P = cfg.num_profiles;
    const int t = t_bar_of(cfg.cache_ratio, P);
    require(cfg.t_bar == t, "t_bar = P*gamma");

    const int alpha = cfg.multiplexing_gain;
    const int eta_hat = cfg.delivery_param;
    const int beta = cfg.per_tx_users;
    const int Q = cfg.profiles_per_tx;
    require(alpha <= cfg.num_antennas, "alpha <= L");
    require(beta <= std::min(alpha, eta_hat), "beta <= min(alpha, eta_hat)");
    require(Q >= t + 1, "Q >= t_bar + 1");
    require(Q <= t + ceil_div(alpha, beta), "Q <= t_bar + ceil(alpha/beta)");
    require(Q <= P, "Q <= P");

    if (cfg.strategy == Strategy::A) {
        // Each stream nulls the other (Q - t_bar) beta - 1 users at most.
        require((Q - t) * beta <= alpha, "(Q - t_bar)*beta <= alpha (Strategy A)");
    } else {
        require(alpha > eta_hat, "alpha > eta_hat (Strategy B)");
        require(alpha % eta_hat != 0, "alpha/eta_hat not an integer (Strategy B)");
        require(Q == t + ceil_div(alpha, eta_hat), "Q = t_bar + ceil(alpha/eta_hat) (Strategy B)");
        require(beta == eta_hat, "beta = eta_hat (Strategy B)");
    }
    return ValidatedConfig(cfg);
}

Design choose_design(const Rational &gamma, int alpha, int eta_hat, int P) {
    const int t = t_bar_of(gamma, P);
    if (alpha <= eta_hat) return {alpha, std::min(P, t + 1), Strategy::A};
    if (alpha % eta_hat == 0) return {eta_hat, std::min(P, t + alpha / eta_hat), Strategy::A};
    const int q_b = t + ceil_div(alpha, eta_hat);
    if (q_b <= P) return {eta_hat, q_b, Strategy::B};
    return {eta_hat, std::min(P, t + alpha / eta_hat), Strategy::A};
}

NetworkConfig make_config(int L, const Rational &gamma, int P, int alpha, int eta_hat,
                          int Q_override) {
    NetworkConfig cfg;
    cfg.num_antennas = L;
    cfg.library_size = static_cast<int>(gamma.denominator());
    cfg.cache_files = static_cast<int>(gamma.numerator());
    cfg.cache_ratio = gamma;
    cfg.num_profiles = P;
    cfg.t_bar = t_bar_of(gamma, P);
    cfg.multiplexing_gain = alpha;
    cfg.delivery_param = eta_hat;
    Design d = choose_design(gamma, alpha, eta_hat, P);
    cfg.per_tx_users = d.beta;
    cfg.profiles_per_tx = Q_override > 0 ? Q_override : d.Q;
    cfg.strategy = d.strategy;
    if (Q_override > 0 && Q_override != d.Q) cfg.strategy = Strategy::A;
    return cfg;
}

bool Association::is_excluded(int user) const {
    return std::find(excluded.begin(), excluded.end(), user) != excluded.end();
}

Association association_from_lengths(const std::vector<int> &lengths, int eta_hat, int beta) {
    if (lengths.empty()) throw EmptyNetwork("no profiles");
    for (int v : lengths)
        if (v < 0) throw ConstraintViolation("violated: eta_p >= 0");
    if (eta_hat < 1) throw ConstraintViolation("violated: eta_hat >= 1");
    if (beta < 1) throw ConstraintViolation("violated: beta >= 1");
    const int total = std::accumulate(lengths.begin(), lengths.end(), 0);
    if (total == 0) throw EmptyNetwork("all profiles are empty");

    const int P = static_cast<int>(lengths.size());
    Association a;
    a.eta_hat = eta_hat;
    a.beta = beta;
    a.original_index.resize(P);
    std::iota(a.original_index.begin(), a.original_index.end(), 0);
    std::stable_sort(a.original_index.begin(), a.original_index.end(),
                     [&](int x, int y) { return lengths[x] > lengths[y]; });

    a.profile_of_user.assign(total + 1, 0);
    int next_user = 1;
    for (int p = 1; p <= P; ++p) {
        const int eta = lengths[a.original_index[p - 1]];
        const int delta = std::min(eta_hat, eta);
        a.eta.push_back(eta);
        a.delta.push_back(delta);
        a.phi.push_back(std::max(beta, delta));
        std::vector<int> users(eta);
        std::iota(users.begin(), users.end(), next_user);
        next_user += eta;
        for (int u : users) a.profile_of_user[u] = p;
        a.served.emplace_back(users.begin(), users.begin() + delta);
        a.excluded.insert(a.excluded.end(), users.begin() + delta, users.end());
        a.users.push_back(std::move(users));
        a.K_M += delta;
        a.K_U += eta - delta;
    }
    a.K = total;
    return a;
}

DesignCounts design_counts(const NetworkConfig &cfg) {
    DesignCounts d;
    const int alpha = cfg.multiplexing_gain;
    const int eta_hat = cfg.delivery_param;
    const int Q = cfg.profiles_per_tx;
    const int t = cfg.t_bar;
    d.theta = alpha - eta_hat * (alpha / eta_hat);
    d.nu1 = binom(Q - 2, Q - t - 2);
    d.nu2 = binom(Q - 1, Q - t - 1);
    return d;
}

std::int64_t sigma_key(const std::vector<int> &lengths) {
    std::int64_t sum = 0;
    std::int64_t sum_sq = 0;
    for (int v : lengths) {
        sum += v;
        sum_sq += static_cast<std::int64_t>(v) * v;
    }
    return static_cast<std::int64_t>(lengths.size()) * sum_sq - sum * sum;
}

double sigma(const std::vector<int> &lengths, int P) {
    if (P <= 0) throw ConstraintViolation("violated: P > 0");
    if (static_cast<int>(lengths.size()) > P)
        throw ConstraintViolation("violated: number of lengths <= P");
    std::vector<int> padded(lengths);
    padded.resize(P, 0);
    return std::sqrt(static_cast<double>(sigma_key(padded))) / P;
}

} // namespace dyncache
