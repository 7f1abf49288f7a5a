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
#include <random>
#include <string>
#include <vector>

#include "dyncache/beamform.hpp"
#include "dyncache/model.hpp"

namespace dyncache {

/// How random user-to-profile associations are drawn.
enum class Sampler {
    UniformComposition, ///< every composition of K into P nonnegative parts equally likely
    Multinomial,        ///< each user picks a profile uniformly at random
};
std::string to_string(Sampler s);
Sampler parse_sampler(const std::string &text);

std::vector<int> sample_lengths(int K, int P, Sampler sampler, std::mt19937_64 &rng);

enum class StrategyChoice { A, B, Auto };
std::string to_string(StrategyChoice s);
StrategyChoice parse_strategy_choice(const std::string &text);

/// Baseline scheme evaluated next to the coded-caching scheme.
enum class Baseline { NoCC, ZF, None };
std::string to_string(Baseline b);
Baseline parse_baseline(const std::string &text);

struct StudyParams {
    int K = 30;
    int L = 10;
    int P = 5;
    Rational gamma{1, 5};
    int alpha = 8;
    int eta_hat = 0; ///< 0 selects eta_1 of each association
    int Q = 0;       ///< 0 selects the strategy default
    StrategyChoice strategy = StrategyChoice::A;
    Sampler sampler = Sampler::Multinomial;
    std::vector<int> lengths; ///< fixed association when non-empty
    bool efficient_multicast = false;
    double N0 = 1.0;
    SolverOptions solver{};
};

/// Design used for one association. Strategy B requests fall back to A when
/// B is not applicable.
struct TrialDesign {
    NetworkConfig cfg;
    Association assoc;
    bool fell_back = false;
};
TrialDesign design_for(const StudyParams &params, const std::vector<int> &lengths);

struct StudyPoint {
    double snr_db = 0.0;
    std::string scheme;
    RateReport report;
};

struct StudyResult {
    std::vector<StudyPoint> points; ///< ordered by snr, then scheme
    int strategy_fallbacks = 0;
    std::vector<std::vector<int>> associations; ///< per trial, caller order
};

/// Mean symmetric rate over `trials` random associations, each with one
/// independent channel draw per transmission. Trials share channel seeds
/// across SNR points.
StudyResult rate_study(const StudyParams &params, const std::vector<double> &snr_db, int trials,
                       std::uint64_t seed, Baseline baseline);

} // namespace dyncache
