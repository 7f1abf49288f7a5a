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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dyncache/model.hpp"
#include "dyncache/rational.hpp"

namespace dyncache {

/// Counting terms of the closed-form DoF.
struct DofTerms {
    std::int64_t beta_prime = 0;  ///< beta C(P-t-1, Q-t-1)
    std::int64_t alpha_prime = 0; ///< (eta_hat t + alpha) nu1 C(P-t-1, Q-t-1)
    std::int64_t N_M = 0;         ///< Strategy B quintuple count (before nu1 split)
    std::int64_t N_U = 0;         ///< unicast transmissions
    std::int64_t T_M = 0;
    std::int64_t J_M = 0;
    std::int64_t J_U = 0;
};

/// D(delta_r) = phi_r when delta_r > 0, else 0.
std::int64_t D_of(const Association &assoc, int r);

/// (sum_{r=1}^{P-Q+1} C(P-r, Q-1), C(P, Q)).
std::pair<std::int64_t, std::int64_t> lemma1(int P, int Q);

DofTerms dof_terms(const NetworkConfig &cfg, const Association &assoc);

/// Closed-form DoF of the configured strategy, both K_U branches.
Rational dof_closed_form(const NetworkConfig &cfg, const Association &assoc);

struct DofSearchResult {
    Rational dof{0};
    Rational raw_dof{0}; ///< best coded-caching value before the floor at alpha
    int eta_hat = 0;
    int Q = 0;
    Strategy strategy = Strategy::A;
    bool nocc_fallback = false; ///< unicast beats every coded design
};

/// Exhaustive search over eta_hat in [1, eta_1], every admissible Q, and both
/// strategies where applicable. Ties keep the smaller (eta_hat, Q). The result
/// is floored at min(alpha, K).
DofSearchResult dof_max_search(const std::vector<int> &lengths, int alpha, const Rational &gamma);

/// min(alpha, K).
int nocc_dof(int K, int alpha);

/// Sorted compositions only, or every labeled composition (weighted by its
/// number of distinct permutations).
enum class EnumerationMode { Sorted, Labeled };
std::string to_string(EnumerationMode m);

struct SigmaBucket {
    std::int64_t key = 0; ///< P sum(eta^2) - K^2
    double sigma = 0.0;
    double dof_m = 0.0;   ///< mean of dof_max_search over the bucket
    std::int64_t count = 0;
};

/// Mean maximum DoF over all associations of K users to P profiles, grouped
/// by exact sigma. Buckets are sorted by sigma.
std::vector<SigmaBucket> dof_m_average(int K, int P, int alpha, const Rational &gamma,
                                       EnumerationMode mode = EnumerationMode::Sorted);

/// Nonincreasing compositions of K into P nonnegative parts.
std::vector<std::vector<int>> sorted_compositions(int K, int P);

} // namespace dyncache
