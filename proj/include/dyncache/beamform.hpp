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

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "dyncache/model.hpp"
#include "dyncache/scheduler.hpp"

namespace dyncache {

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Per-user channel vectors of one transmission.
struct ChannelSet {
    std::map<int, CVector> h;
    std::uint64_t rng_seed = 0;
    int L = 0;
    const CVector &of(int user) const;
};

/// i.i.d. CN(0, I) channels, deterministic in seed. Users are drawn in the
/// given order.
ChannelSet draw_channels(const std::vector<int> &users, int L, std::uint64_t seed);

/// Seed of the channels of transmission `tx` in Monte Carlo trial `trial`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t trial, std::uint64_t tx);

struct SolverOptions {
    double tol = 1e-4;      ///< bisection gap on the per-stream rate, bits
    double dual_tol = 1e-9; ///< relative change of the dual variables
    int max_iter = 5000;    ///< fixed-point iterations per bisection step
    int max_bisection = 200;
};

/// Beamformers of one transmission. Vectors are indexed like tx.streams.
struct BeamSolution {
    std::vector<CVector> w;
    std::vector<double> powers;
    double target_rate = 0.0; ///< R_e, the common weighted rate
    std::vector<double> lambdas;
    std::vector<double> omegas;
    std::vector<double> mu;
    std::vector<double> sinr;
    double min_weighted_rate = 0.0; ///< min_k mu_k log2(1 + sinr_k)
    double min_rate = 0.0;          ///< min_k log2(1 + sinr_k)
    int bisection_steps = 0;
    std::vector<double> dual_residuals; ///< last converged fixed-point run
};

/// SINR of stream i's user given beamformers w. The denominator sums every
/// other stream that the user cannot cancel from its cache.
double sinr(std::size_t i, const std::vector<CVector> &w, const ChannelSet &channels,
            const Transmission &tx, double N0);
/// Same, looked up by user id.
double sinr(int user, const BeamSolution &solution, const ChannelSet &channels,
            const Transmission &tx, double N0);

/// Max-min weighted-rate beamformers: bisection on R_e with the uplink dual
/// fixed point for directions and a linear SINR-equalization system for powers.
BeamSolution maxmin_solve(const Transmission &tx, const ChannelSet &channels,
                          const std::vector<double> &mu, double P_T, double N0,
                          const SolverOptions &opts = {});
BeamSolution maxmin_solve(const Transmission &tx, const ChannelSet &channels, double mu,
                          double P_T, double N0, const SolverOptions &opts = {});

/// Zero-forcing toward each stream's nulling set with equal power split.
/// Throws RankDeficiency when a nulling set cannot be met with L antennas.
BeamSolution zf_precoders(const Transmission &tx, const ChannelSet &channels, double P_T,
                          double N0, double mu = 1.0);

enum class Precoder { Optimized, ZeroForcing };

struct RateOptions {
    int trials = 1;
    std::uint64_t seed = 1;
    Precoder precoder = Precoder::Optimized;
    SolverOptions solver{};
};

struct RateReport {
    double mean = 0.0;
    double stderr_ = 0.0;
    int trials = 0;
    std::vector<double> per_trial;
    std::int64_t degenerate = 0; ///< transmissions with zero rate
};

/// (sum_n 1 / (mu R_n))^-1; zero as soon as one rate is zero.
double symmetric_from_rates(const std::vector<double> &rates, double mu);

/// Symmetric rate of one channel realization of the schedule:
/// (sum_n 1 / (mu R_n))^-1 with R_n the worst served user's rate.
double schedule_rate(const Schedule &schedule, double P_T, double N0, std::uint64_t seed,
                     int trial, Precoder precoder, const SolverOptions &opts,
                     std::int64_t *degenerate = nullptr);

/// Mean and standard error of schedule_rate over independent trials.
RateReport symmetric_rate(const Schedule &schedule, const NetworkConfig &cfg,
                          const RateOptions &opts);

/// Unicast-only baseline at the subpacketization of cfg.
RateReport nocc_rate(const ValidatedConfig &cfg, const Association &assoc, const RateOptions &opts);

/// Combines per-trial values in index order.
RateReport summarize(const std::vector<double> &values, std::int64_t degenerate = 0);

} // namespace dyncache
