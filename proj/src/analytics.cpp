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

#include "dyncache/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "dyncache/combinatorics.hpp"
#include "dyncache/errors.hpp"
#include "dyncache/scheduler.hpp"

namespace dyncache {

std::string to_string(EnumerationMode m) { return m == EnumerationMode::Sorted ? "sorted" : "labeled"; }

std::int64_t D_of(const Association &assoc, int r) {
    return assoc.delta_of(r) > 0 ? assoc.phi_of(r) : 0;
}

std::pair<std::int64_t, std::int64_t> lemma1(int P, int Q) {
    if (Q < 1 || Q > P) throw ConstraintViolation("violated: 1 <= Q <= P");
    std::int64_t lhs = 0;
    for (int r = 1; r <= P - Q + 1; ++r) lhs += binom(P - r, Q - 1);
    return {lhs, binom(P, Q)};
}

DofTerms dof_terms(const NetworkConfig &cfg, const Association &assoc) {
    const int P = cfg.num_profiles;
    const int t = cfg.t_bar;
    const int Q = cfg.profiles_per_tx;
    const int alpha = cfg.multiplexing_gain;
    const int eta_hat = cfg.delivery_param;
    const int beta = cfg.per_tx_users;
    const DesignCounts dc = design_counts(cfg);
    // (1 - gamma) C(P, t) = C(P-1, t)
    const std::int64_t uncached = binom(P - 1, t);
    const std::int64_t base = binom(P - t - 1, Q - t - 1);

    DofTerms d;
    d.beta_prime = beta * base;
    d.alpha_prime = (static_cast<std::int64_t>(eta_hat) * t + alpha) * dc.nu1 * base;

    std::int64_t per_user_stream_units = 0; // subpackets one CC user receives
    std::int64_t per_user_demand = 0;       // subpackets one UC user needs
    if (cfg.strategy == Strategy::A) {
        std::int64_t triples = 0;
        for (int r = 1; r <= P - Q + 1; ++r) triples += D_of(assoc, r) * binom(P - r, Q - 1);
        d.N_M = triples;
        d.T_M = triples * dc.nu2;
        per_user_stream_units = binom(P - 1, Q - 1) * beta * dc.nu2;
        per_user_demand = uncached * d.beta_prime;
    } else {
        std::int64_t quintuples = 0;
        for (int r = 1; r <= P; ++r)
            for (int c = 1; c <= P - Q + 1; ++c)
                for (int m = 1; m <= eta_hat; ++m) {
                    if (!quintuple_active(cfg, assoc, {r, c, 1, m, 1})) continue;
                    quintuples += binom(P - c - 1, Q - 2) * dc.nu2;
                }
        d.N_M = quintuples;
        d.T_M = quintuples * dc.nu1;
        per_user_stream_units =
            binom(P - 1, Q - 1) * (static_cast<std::int64_t>(eta_hat) * t + alpha) * dc.nu2 * dc.nu1;
        per_user_demand = uncached * d.alpha_prime;
    }
    d.J_M = assoc.K_M * per_user_stream_units;
    d.J_U = assoc.K_U * per_user_demand;
    if (assoc.K_U > 0) {
        const std::int64_t lanes = std::min(assoc.K_U, alpha);
        d.N_U = (d.J_U + lanes - 1) / lanes;
    }
    return d;
}

Rational dof_closed_form(const NetworkConfig &cfg, const Association &assoc) {
    const DofTerms d = dof_terms(cfg, assoc);
    if (d.T_M + d.N_U == 0) throw DivByZero("no transmissions");
    return Rational(d.J_M + d.J_U, d.T_M + d.N_U);
}

int nocc_dof(int K, int alpha) { return std::min(alpha, K); }

DofSearchResult dof_max_search(const std::vector<int> &lengths, int alpha, const Rational &gamma) {
    const int P = static_cast<int>(lengths.size());
    const int t = t_bar_of(gamma, P);
    int K = 0;
    int eta_max = 0;
    for (int v : lengths) {
        K += v;
        eta_max = std::max(eta_max, v);
    }
    if (K == 0) throw EmptyNetwork("all profiles are empty");

    DofSearchResult best;
    bool found = false;
    auto consider = [&](int eta_hat, int beta, int Q, Strategy s) {
        NetworkConfig cfg = make_config(alpha, gamma, P, alpha, eta_hat);
        cfg.per_tx_users = beta;
        cfg.profiles_per_tx = Q;
        cfg.strategy = s;
        try {
            validate_config(cfg);
        } catch (const ConstraintViolation &) {
            return;
        }
        const Association assoc = association_from_lengths(lengths, eta_hat, beta);
        const Rational dof = dof_closed_form(cfg, assoc);
        if (!found || dof > best.raw_dof) {
            found = true;
            best.raw_dof = dof;
            best.eta_hat = eta_hat;
            best.Q = Q;
            best.strategy = s;
        }
    };

    for (int eta_hat = 1; eta_hat <= eta_max; ++eta_hat) {
        const int beta = std::min(alpha, eta_hat);
        for (int Q = t + 1; Q <= std::min(P, t + alpha / beta); ++Q) consider(eta_hat, beta, Q, Strategy::A);
        if (strategy_b_applicable(alpha, eta_hat)) {
            const int Q = t + (alpha + eta_hat - 1) / eta_hat;
            if (Q <= P) consider(eta_hat, eta_hat, Q, Strategy::B);
        }
    }
    const Rational floor_value(nocc_dof(K, alpha));
    if (!found || best.raw_dof < floor_value) {
        best.dof = floor_value;
        best.nocc_fallback = true;
    } else {
        best.dof = best.raw_dof;
    }
    return best;
}

std::vector<std::vector<int>> sorted_compositions(int K, int P) {
    std::vector<std::vector<int>> out;
    std::vector<int> current;
    std::function<void(int, int, int)> rec = [&](int remaining, int parts_left, int cap) {
        if (remaining == 0) {
            current.insert(current.end(), parts_left, 0);
            out.push_back(current);
            current.resize(current.size() - parts_left);
            return;
        }
        if (parts_left == 0) return;
        const int lo = (remaining + parts_left - 1) / parts_left;
        for (int v = std::min(cap, remaining); v >= lo; --v) {
            current.push_back(v);
            rec(remaining - v, parts_left - 1, v);
            current.pop_back();
        }
    };
    rec(K, P, K);
    return out;
}

namespace {

double permutations(const std::vector<int> &parts) {
    std::map<int, int> mult;
    for (int v : parts) ++mult[v];
    double r = std::tgamma(static_cast<double>(parts.size()) + 1.0);
    for (auto &[v, m] : mult) r /= std::tgamma(static_cast<double>(m) + 1.0);
    return std::round(r);
}

} // namespace

std::vector<SigmaBucket> dof_m_average(int K, int P, int alpha, const Rational &gamma,
                                       EnumerationMode mode) {
    struct Acc {
        double weighted = 0.0;
        double weight = 0.0;
        std::int64_t count = 0;
    };
    std::map<std::int64_t, Acc> buckets;
    for (auto &parts : sorted_compositions(K, P)) {
        const double w = mode == EnumerationMode::Sorted ? 1.0 : permutations(parts);
        const double dof = to_double(dof_max_search(parts, alpha, gamma).dof);
        Acc &acc = buckets[sigma_key(parts)];
        acc.weighted += w * dof;
        acc.weight += w;
        acc.count += static_cast<std::int64_t>(w);
    }
    std::vector<SigmaBucket> out;
    for (auto &[key, acc] : buckets)
        out.push_back({key, std::sqrt(static_cast<double>(key)) / P, acc.weighted / acc.weight, acc.count});
    return out;
}

} // namespace dyncache
