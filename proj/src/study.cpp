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

#include "dyncache/study.hpp"

#include <algorithm>
#include <cmath>

#include "dyncache/errors.hpp"
#include "dyncache/parallel.hpp"
#include "dyncache/scheduler.hpp"

namespace dyncache {

std::string to_string(Sampler s) { return s == Sampler::UniformComposition ? "uniform" : "multinomial"; }

Sampler parse_sampler(const std::string &text) {
    if (text == "uniform" || text == "uniform-composition") return Sampler::UniformComposition;
    if (text == "multinomial") return Sampler::Multinomial;
    throw UsageError("sampler must be 'uniform' or 'multinomial', got '" + text + "'");
}

std::string to_string(StrategyChoice s) {
    switch (s) {
    case StrategyChoice::A: return "A";
    case StrategyChoice::B: return "B";
    case StrategyChoice::Auto: return "auto";
    }
    return "?";
}

StrategyChoice parse_strategy_choice(const std::string &text) {
    if (text == "A" || text == "a") return StrategyChoice::A;
    if (text == "B" || text == "b") return StrategyChoice::B;
    if (text == "auto") return StrategyChoice::Auto;
    throw UsageError("strategy must be A, B or auto, got '" + text + "'");
}

std::string to_string(Baseline b) {
    switch (b) {
    case Baseline::NoCC: return "nocc";
    case Baseline::ZF: return "zf";
    case Baseline::None: return "none";
    }
    return "?";
}

Baseline parse_baseline(const std::string &text) {
    if (text == "nocc") return Baseline::NoCC;
    if (text == "zf") return Baseline::ZF;
    if (text == "none") return Baseline::None;
    throw UsageError("baseline must be nocc, zf or none, got '" + text + "'");
}

std::vector<int> sample_lengths(int K, int P, Sampler sampler, std::mt19937_64 &rng) {
    std::vector<int> lengths(P, 0);
    if (sampler == Sampler::Multinomial) {
        std::uniform_int_distribution<int> pick(0, P - 1);
        for (int k = 0; k < K; ++k) ++lengths[pick(rng)];
        return lengths;
    }
    // Stars and bars: P-1 distinct bar positions among K+P-1 slots.
    std::vector<int> slots(K + P - 1);
    for (int i = 0; i < K + P - 1; ++i) slots[i] = i;
    std::vector<int> bars;
    std::sample(slots.begin(), slots.end(), std::back_inserter(bars), P - 1, rng);
    std::sort(bars.begin(), bars.end());
    int prev = -1;
    for (int p = 0; p < P - 1; ++p) {
        lengths[p] = bars[p] - prev - 1;
        prev = bars[p];
    }
    lengths[P - 1] = K + P - 1 - prev - 1;
    return lengths;
}

TrialDesign design_for(const StudyParams &params, const std::vector<int> &lengths) {
    const int eta_1 = *std::max_element(lengths.begin(), lengths.end());
    const int eta_hat = params.eta_hat > 0 ? params.eta_hat : eta_1;
    const int alpha = params.alpha;
    const int P = static_cast<int>(lengths.size());
    const int t = t_bar_of(params.gamma, P);
    TrialDesign d;
    NetworkConfig cfg = make_config(params.L, params.gamma, P, alpha, eta_hat);
    auto use_a = [&] {
        cfg.strategy = Strategy::A;
        cfg.per_tx_users = std::min(alpha, eta_hat);
        cfg.profiles_per_tx = params.Q > 0 ? params.Q : std::min(P, t + alpha / cfg.per_tx_users);
    };
    switch (params.strategy) {
    case StrategyChoice::A: use_a(); break;
    case StrategyChoice::B: {
        const int q_b = t + (alpha + eta_hat - 1) / eta_hat;
        if (strategy_b_applicable(alpha, eta_hat) && q_b <= P) {
            cfg.strategy = Strategy::B;
            cfg.per_tx_users = eta_hat;
            cfg.profiles_per_tx = q_b;
        } else {
            use_a();
            d.fell_back = true;
        }
        break;
    }
    case StrategyChoice::Auto:
        if (params.Q > 0) cfg.profiles_per_tx = params.Q;
        break;
    }
    cfg.noise_power = params.N0;
    d.cfg = validate_config(cfg).get();
    d.assoc = association_from_lengths(lengths, eta_hat, d.cfg.per_tx_users);
    return d;
}

StudyResult rate_study(const StudyParams &params, const std::vector<double> &snr_db, int trials,
                       std::uint64_t seed, Baseline baseline) {
    if (trials < 1) throw UsageError("--trials must be at least 1");
    if (snr_db.empty()) throw UsageError("empty SNR list");
    const std::string cc_name = "cc-" + to_string(params.strategy);
    std::vector<std::string> schemes{cc_name};
    if (baseline == Baseline::NoCC) schemes.push_back("nocc");
    if (baseline == Baseline::ZF) schemes.push_back("zf-" + to_string(params.strategy));

    const std::size_t S = snr_db.size();
    const std::size_t C = schemes.size();
    std::vector<double> values(static_cast<std::size_t>(trials) * S * C, 0.0);
    std::vector<std::int64_t> degenerate(values.size(), 0);
    std::vector<char> fell_back(static_cast<std::size_t>(trials), 0);
    std::vector<std::vector<int>> associations(static_cast<std::size_t>(trials));

    parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
        std::vector<int> lengths = params.lengths;
        if (lengths.empty()) {
            std::mt19937_64 rng(derive_seed(seed, t, 0xA55CULL));
            lengths = sample_lengths(params.K, params.P, params.sampler, rng);
        }
        associations[t] = lengths;
        const TrialDesign d = design_for(params, lengths);
        fell_back[t] = d.fell_back;
        const ValidatedConfig vcfg = validate_config(d.cfg);
        const Schedule cc = full_schedule(vcfg, d.assoc, {params.efficient_multicast});
        Schedule base;
        if (baseline == Baseline::NoCC) base = nocc_schedule(vcfg, d.assoc);
        for (std::size_t s = 0; s < S; ++s) {
            const double P_T = params.N0 * std::pow(10.0, snr_db[s] / 10.0);
            const std::size_t at = (t * S + s) * C;
            values[at] = schedule_rate(cc, P_T, params.N0, seed, static_cast<int>(t), Precoder::Optimized,
                                       params.solver, &degenerate[at]);
            if (baseline == Baseline::NoCC)
                values[at + 1] = schedule_rate(base, P_T, params.N0, seed ^ 0x9E3779B97F4A7C15ULL,
                                               static_cast<int>(t), Precoder::Optimized, params.solver,
                                               &degenerate[at + 1]);
            if (baseline == Baseline::ZF)
                values[at + 1] = schedule_rate(cc, P_T, params.N0, seed, static_cast<int>(t),
                                               Precoder::ZeroForcing, params.solver, &degenerate[at + 1]);
        }
    });

    StudyResult result;
    result.associations = std::move(associations);
    for (char f : fell_back) result.strategy_fallbacks += f;
    for (std::size_t s = 0; s < S; ++s)
        for (std::size_t c = 0; c < C; ++c) {
            std::vector<double> v;
            std::int64_t deg = 0;
            for (std::size_t t = 0; t < static_cast<std::size_t>(trials); ++t) {
                v.push_back(values[(t * S + s) * C + c]);
                deg += degenerate[(t * S + s) * C + c];
            }
            result.points.push_back({snr_db[s], schemes[c], summarize(v, deg)});
        }
    return result;
}

} // namespace dyncache
