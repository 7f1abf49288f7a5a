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

#include "dyncache/rational.hpp"

namespace dyncache {

enum class Strategy { A, B };

std::string to_string(Strategy s);
Strategy parse_strategy(const std::string &text);

/// System and design parameters of one delivery round.
struct NetworkConfig {
    int num_antennas = 1;      ///< L
    int library_size = 1;      ///< N
    int cache_files = 0;       ///< M
    Rational cache_ratio{0};   ///< gamma = M / N
    int num_profiles = 1;      ///< P
    int t_bar = 0;             ///< P * gamma
    int multiplexing_gain = 1; ///< alpha
    int delivery_param = 1;    ///< eta_hat
    int per_tx_users = 1;      ///< beta
    int profiles_per_tx = 1;   ///< Q
    Strategy strategy = Strategy::A;
    double noise_power = 1.0; ///< N0
    double tx_power = 1.0;    ///< P_T
};

/// A NetworkConfig that passed validate_config. Only validate_config creates one.
class ValidatedConfig {
  public:
    const NetworkConfig &get() const { return cfg_; }
    const NetworkConfig *operator->() const { return &cfg_; }

  private:
    explicit ValidatedConfig(const NetworkConfig &cfg) : cfg_(cfg) {}
    NetworkConfig cfg_;
    friend ValidatedConfig validate_config(const NetworkConfig &cfg);
};

/// Checks every design inequality. Throws ConstraintViolation naming the first
/// broken one, or NonIntegerTBar when P * gamma is fractional.
ValidatedConfig validate_config(const NetworkConfig &cfg);

/// Integer t_bar = P * gamma. Throws NonIntegerTBar.
int t_bar_of(const Rational &gamma, int P);

struct Design {
    int beta;
    int Q;
    Strategy strategy;
};

/// Default (beta, Q, strategy) for the given regime. Q is capped at P; when the
/// Strategy B value of Q would exceed P the design falls back to Strategy A
/// with Q = min(P, t_bar + floor(alpha / eta_hat)).
Design choose_design(const Rational &gamma, int alpha, int eta_hat, int P);

/// Whether Strategy B may be used for (alpha, eta_hat).
bool strategy_b_applicable(int alpha, int eta_hat);

/// Fills t_bar, beta, Q and strategy of a config from choose_design. A Q > 0
/// passed as override replaces the default Q.
NetworkConfig make_config(int L, const Rational &gamma, int P, int alpha, int eta_hat,
                          int Q_override = 0);

/// User-to-profile assignment with the per-profile statistics used by the
/// delivery strategies. Profiles are 1-based and sorted by nonincreasing length.
struct Association {
    std::vector<int> eta;              ///< eta_p, nonincreasing
    std::vector<int> original_index;   ///< sorted position -> caller's 0-based index
    std::vector<std::vector<int>> users;  ///< U_p
    std::vector<std::vector<int>> served; ///< V_p, the first delta_p users of U_p
    std::vector<int> delta;            ///< min(eta_hat, eta_p)
    std::vector<int> phi;              ///< max(beta, delta_p)
    std::vector<int> excluded;         ///< users left for the unicast step
    std::vector<int> profile_of_user;  ///< indexed by user id, entry 0 unused
    int eta_hat = 0;
    int beta = 0;
    int K = 0;
    int K_M = 0;
    int K_U = 0;

    int P() const { return static_cast<int>(eta.size()); }
    int profile(int user) const { return profile_of_user.at(user); }
    int eta_of(int p) const { return eta.at(p - 1); }
    int delta_of(int p) const { return delta.at(p - 1); }
    int phi_of(int p) const { return phi.at(p - 1); }
    const std::vector<int> &users_of(int p) const { return users.at(p - 1); }
    const std::vector<int> &served_of(int p) const { return served.at(p - 1); }
    bool is_excluded(int user) const;
    /// Lengths in sorted order (convenience for re-sorting or printing).
    std::vector<int> lengths() const { return eta; }
};

/// Builds an Association. Lengths are sorted nonincreasing with ties kept in
/// caller order; user ids 1..K are then assigned profile by profile.
/// Throws EmptyNetwork when every length is zero.
Association association_from_lengths(const std::vector<int> &lengths, int eta_hat, int beta);

/// Strategy-dependent counts: theta = alpha - eta_hat floor(alpha / eta_hat),
/// nu1 = C(Q-2, Q-t_bar-2), nu2 = C(Q-1, Q-t_bar-1).
struct DesignCounts {
    int theta = 0;
    std::int64_t nu1 = 0;
    std::int64_t nu2 = 0;
};
DesignCounts design_counts(const NetworkConfig &cfg);

/// Population standard deviation of the profile lengths.
double sigma(const std::vector<int> &lengths, int P);

/// P * sum(eta^2) - K^2, an exact integer equal to P^2 sigma^2.
std::int64_t sigma_key(const std::vector<int> &lengths);

} // namespace dyncache
