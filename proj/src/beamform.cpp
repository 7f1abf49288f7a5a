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

#include "dyncache/beamform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "dyncache/errors.hpp"
#include "dyncache/parallel.hpp"
#include "dyncache/placement.hpp"

namespace dyncache {

const CVector &ChannelSet::of(int user) const {
    auto it = h.find(user);
    if (it == h.end()) throw Error("no channel for user " + std::to_string(user));
    return it->second;
}

ChannelSet draw_channels(const std::vector<int> &users, int L, std::uint64_t seed) {
    if (L < 1) throw ConstraintViolation("violated: L >= 1");
    ChannelSet set;
    set.rng_seed = seed;
    set.L = L;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    for (int u : users) {
        CVector v(L);
        for (int i = 0; i < L; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            v(i) = {re, im};
        }
        set.h[u] = std::move(v);
    }
    return set;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t trial, std::uint64_t tx) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32),
                      static_cast<std::uint32_t>(tx), static_cast<std::uint32_t>(tx >> 32)};
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

double sinr(std::size_t i, const std::vector<CVector> &w, const ChannelSet &channels,
            const Transmission &tx, double N0) {
    const Stream &s = tx.streams.at(i);
    const CVector &h = channels.of(s.user);
    const double signal = std::norm(h.dot(w.at(i)));
    double interference = 0.0;
    for (std::size_t j = 0; j < tx.streams.size(); ++j) {
        if (j == i || !tx.visible_to_profile(j, s.profile)) continue;
        interference += std::norm(h.dot(w.at(j)));
    }
    return signal / (interference + N0);
}

double sinr(int user, const BeamSolution &solution, const ChannelSet &channels, const Transmission &tx,
            double N0) {
    for (std::size_t i = 0; i < tx.streams.size(); ++i)
        if (tx.streams[i].user == user) return sinr(i, solution.w, channels, tx, N0);
    throw Error("user " + std::to_string(user) + " is not served by the transmission");
}

namespace {

void finish(BeamSolution &sol, const Transmission &tx, const ChannelSet &channels, double N0) {
    const std::size_t n = tx.streams.size();
    sol.sinr.assign(n, 0.0);
    sol.min_weighted_rate = std::numeric_limits<double>::infinity();
    sol.min_rate = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        sol.sinr[i] = sinr(i, sol.w, channels, tx, N0);
        const double rate = std::log2(1.0 + sol.sinr[i]);
        sol.min_rate = std::min(sol.min_rate, rate);
        sol.min_weighted_rate = std::min(sol.min_weighted_rate, sol.mu[i] * rate);
    }
}

/// Coupling structure and normalized channels of one transmission.
struct Problem {
    std::size_t n = 0;
    int L = 0;
    std::vector<CVector> g;                  ///< h / sqrt(N0)
    std::vector<std::vector<std::size_t>> heard; ///< heard[i]: streams interfering at stream i's user
    std::vector<std::size_t> group_of;       ///< stream -> covariance group
    std::vector<std::vector<std::size_t>> group_members;
};

Problem make_problem(const Transmission &tx, const ChannelSet &channels, double N0) {
    Problem pb;
    pb.n = tx.streams.size();
    pb.L = channels.L;
    const double scale = 1.0 / std::sqrt(N0);
    for (auto &s : tx.streams) pb.g.push_back(channels.of(s.user) * scale);
    pb.heard.resize(pb.n);
    std::vector<std::vector<std::size_t>> hits(pb.n); // streams whose users stream j reaches
    for (std::size_t i = 0; i < pb.n; ++i)
        for (std::size_t j = 0; j < pb.n; ++j)
            if (j != i && tx.visible_to_profile(j, tx.streams[i].profile)) {
                pb.heard[i].push_back(j);
                hits[j].push_back(i);
            }
    std::map<std::vector<std::size_t>, std::size_t> groups;
    pb.group_of.resize(pb.n);
    for (std::size_t j = 0; j < pb.n; ++j) {
        std::vector<std::size_t> key = hits[j];
        key.push_back(j);
        std::sort(key.begin(), key.end());
        auto [it, inserted] = groups.emplace(key, pb.group_members.size());
        if (inserted) pb.group_members.push_back(key);
        pb.group_of[j] = it->second;
    }
    return pb;
}

struct Evaluation {
    bool feasible = false;
    std::vector<double> lambda;
    std::vector<CVector> direction;
    std::vector<double> power;
    std::vector<double> residuals;
};

/// Feasibility of common weighted rate R: dual fixed point, then downlink powers.
Evaluation evaluate(const Problem &pb, const std::vector<double> &mu, double R, double P_T,
                    std::vector<double> lambda, const SolverOptions &opts) {
    Evaluation ev;
    const std::size_t n = pb.n;
    std::vector<double> omega(n);
    for (std::size_t i = 0; i < n; ++i) omega[i] = std::exp2(R / mu[i]) - 1.0;

    std::vector<Eigen::LLT<CMatrix>> factors(pb.group_members.size());
    auto factorize = [&](const std::vector<double> &lam) {
        for (std::size_t gi = 0; gi < pb.group_members.size(); ++gi) {
            CMatrix sigma = CMatrix::Identity(pb.L, pb.L);
            for (std::size_t k : pb.group_members[gi])
                sigma.selfadjointView<Eigen::Lower>().rankUpdate(pb.g[k], lam[k]);
            factors[gi].compute(sigma);
        }
    };

    bool converged = false;
    bool increasing = true;
    std::vector<double> next(n);
    for (int it = 0; it < opts.max_iter; ++it) {
        factorize(lambda);
        for (std::size_t j = 0; j < n; ++j) {
            const CVector x = factors[pb.group_of[j]].solve(pb.g[j]);
            // q = g^H Sigma^-1 g includes the stream's own term. The literal update
            // omega / ((omega + 1) q) equals (lambda omega + omega / a) / (omega + 1)
            // with a = q / (1 - lambda q), i.e. a damped step towards omega / a.
            // Taking the undamped step keeps the fixed point and converges far faster.
            const double quad = pb.g[j].dot(x).real();
            next[j] = omega[j] * (1.0 - lambda[j] * quad) / quad;
        }
        double residual = 0.0;
        double total = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            residual = std::max(residual, std::abs(next[j] - lambda[j]) / std::max(next[j], 1e-300));
            if (it == 0 && next[j] < lambda[j] * (1.0 - 1e-12)) increasing = false;
            total += next[j];
        }
        lambda.swap(next);
        ev.residuals.push_back(residual);
        // From an increasing start the iterates stay below the fixed point, so
        // crossing the budget proves infeasibility.
        if ((increasing && total > P_T * (1.0 + 1e-9)) || !std::isfinite(total) || total > 1e12 * P_T) {
            ev.lambda = std::move(lambda);
            return ev;
        }
        if (residual < opts.dual_tol) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        const double total = std::accumulate(lambda.begin(), lambda.end(), 0.0);
        if (total > P_T) {
            ev.lambda = std::move(lambda);
            return ev;
        }
        std::ostringstream msg;
        msg << "dual fixed point did not converge in " << opts.max_iter << " iterations (target rate " << R
            << ", last relative change " << (ev.residuals.empty() ? 0.0 : ev.residuals.back()) << ")";
        throw NonConvergence(msg.str());
    }

    factorize(lambda);
    ev.direction.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        CVector x = factors[pb.group_of[j]].solve(pb.g[j]);
        ev.direction[j] = x / x.norm();
    }
    Eigen::MatrixXd M = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double own = std::norm(pb.g[i].dot(ev.direction[i]));
        const double d = omega[i] / own;
        rhs(i) = d;
        for (std::size_t j : pb.heard[i]) M(i, j) -= d * std::norm(pb.g[i].dot(ev.direction[j]));
    }
    const Eigen::VectorXd p = M.partialPivLu().solve(rhs);
    double total = 0.0;
    bool nonneg = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(p(i)) || p(i) < -1e-12 * P_T) nonneg = false;
        total += p(i);
    }
    ev.lambda = std::move(lambda);
    ev.feasible = nonneg && total <= P_T * (1.0 + 1e-9);
    ev.power.resize(n);
    for (std::size_t i = 0; i < n; ++i) ev.power[i] = std::max(0.0, p(i));
    return ev;
}

} // namespace

BeamSolution maxmin_solve(const Transmission &tx, const ChannelSet &channels, const std::vector<double> &mu,
                          double P_T, double N0, const SolverOptions &opts) {
    const std::size_t n = tx.streams.size();
    if (n == 0) throw Error("transmission has no streams");
    if (mu.size() != n) throw Error("one weight per stream is required");
    BeamSolution sol;
    sol.mu = mu;

    if (n == 1) {
        const CVector &h = channels.of(tx.streams[0].user);
        sol.w = {h * (std::sqrt(P_T) / h.norm())};
        sol.powers = {P_T};
        sol.lambdas = {P_T};
        sol.omegas = {P_T * h.squaredNorm() / N0};
        finish(sol, tx, channels, N0);
        sol.target_rate = sol.min_weighted_rate;
        return sol;
    }

    const Problem pb = make_problem(tx, channels, N0);
    const double mu_min = *std::min_element(mu.begin(), mu.end());
    // No stream can beat its interference-free single-user rate at full power.
    double hi = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) hi = std::min(hi, mu[i] * std::log2(1.0 + P_T * pb.g[i].squaredNorm()));
    double lo = 0.0;

    std::vector<double> start(n, P_T / (static_cast<double>(n) * pb.L));
    Evaluation best;
    double best_rate = 0.0;
    bool have_best = false;
    // Total dual power grows roughly like 2^(R / mu), so once a feasible point
    // is known the next candidate extrapolates log2(sum lambda) to the budget;
    // bisection takes over whenever the guess leaves the bracket.
    double prev_rate = 0.0;
    double prev_log = 0.0;
    bool have_prev = false;
    const double log_target = std::log2(P_T * (1.0 - 0.25 * opts.tol));
    int steps = 0;
    while (steps < opts.max_bisection) {
        if (have_best) {
            const double used = std::accumulate(best.power.begin(), best.power.end(), 0.0);
            if (hi - lo < opts.tol * mu_min || used >= P_T * (1.0 - opts.tol)) break;
        }
        double cand = 0.5 * (lo + hi);
        if (have_best) {
            const double log_s = std::log2(std::accumulate(best.lambda.begin(), best.lambda.end(), 0.0));
            double slope = 1.0 / mu_min;
            if (have_prev && best_rate > prev_rate) {
                const double secant = (log_s - prev_log) / (best_rate - prev_rate);
                if (std::isfinite(secant) && secant > 0.0) slope = secant;
            }
            const double guess = best_rate + (log_target - log_s) / slope;
            if (guess > lo && guess < hi) cand = guess;
        }
        ++steps;
        Evaluation ev = evaluate(pb, mu, cand, P_T, have_best ? best.lambda : start, opts);
        if (ev.feasible) {
            if (have_best) {
                prev_rate = best_rate;
                prev_log = std::log2(std::accumulate(best.lambda.begin(), best.lambda.end(), 0.0));
                have_prev = true;
            }
            lo = cand;
            best = std::move(ev);
            best_rate = cand;
            have_best = true;
        } else {
            hi = cand;
        }
    }
    if (!have_best) throw InfeasibleZero("no positive target rate is feasible");

    sol.target_rate = best_rate;
    sol.bisection_steps = steps;
    sol.lambdas = best.lambda;
    sol.powers = best.power;
    sol.dual_residuals = best.residuals;
    sol.omegas.resize(n);
    sol.w.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        sol.omegas[i] = std::exp2(best_rate / mu[i]) - 1.0;
        sol.w[i] = best.direction[i] * std::sqrt(best.power[i]);
    }
    finish(sol, tx, channels, N0);
    return sol;
}

BeamSolution maxmin_solve(const Transmission &tx, const ChannelSet &channels, double mu, double P_T,
                          double N0, const SolverOptions &opts) {
    return maxmin_solve(tx, channels, std::vector<double>(tx.streams.size(), mu), P_T, N0, opts);
}

BeamSolution zf_precoders(const Transmission &tx, const ChannelSet &channels, double P_T, double N0,
                          double mu) {
    const std::size_t n = tx.streams.size();
    if (n == 0) throw Error("transmission has no streams");
    BeamSolution sol;
    sol.mu.assign(n, mu);
    sol.powers.assign(n, P_T / static_cast<double>(n));
    const int L = channels.L;
    for (std::size_t i = 0; i < n; ++i) {
        const Stream &s = tx.streams[i];
        const CVector &h = channels.of(s.user);
        if (static_cast<int>(s.nulling_set.size()) > L - 1)
            throw RankDeficiency("stream for user " + std::to_string(s.user) + " must null " +
                                 std::to_string(s.nulling_set.size()) + " users with " + std::to_string(L) +
                                 " antennas");
        CVector proj = h;
        if (!s.nulling_set.empty()) {
            CMatrix G(L, static_cast<Eigen::Index>(s.nulling_set.size()));
            for (std::size_t c = 0; c < s.nulling_set.size(); ++c)
                G.col(static_cast<Eigen::Index>(c)) = channels.of(s.nulling_set[c]);
            Eigen::ColPivHouseholderQR<CMatrix> qr(G);
            const Eigen::Index rank = qr.rank();
            const CMatrix Qfull = qr.householderQ();
            const CMatrix Qr = Qfull.leftCols(rank);
            proj = h - Qr * (Qr.adjoint() * h);
        }
        const double norm = proj.norm();
        if (!(norm > 1e-10 * h.norm()))
            throw RankDeficiency("no direction nulls the required users for user " + std::to_string(s.user));
        sol.w.push_back(proj * (std::sqrt(sol.powers[i]) / norm));
    }
    finish(sol, tx, channels, N0);
    sol.target_rate = sol.min_weighted_rate;
    return sol;
}

double symmetric_from_rates(const std::vector<double> &rates, double mu) {
    double time = 0.0;
    for (double r : rates) {
        if (!(r > 0.0)) return 0.0;
        time += 1.0 / (mu * r);
    }
    return time > 0.0 ? 1.0 / time : 0.0;
}

double schedule_rate(const Schedule &schedule, double P_T, double N0, std::uint64_t seed, int trial,
                     Precoder precoder, const SolverOptions &opts, std::int64_t *degenerate) {
    const double mu = static_cast<double>(total_subpacketization(schedule.cfg));
    const int L = schedule.cfg.num_antennas;
    std::vector<double> rates;
    rates.reserve(schedule.transmissions.size());
    for (std::size_t n = 0; n < schedule.transmissions.size(); ++n) {
        const Transmission &tx = schedule.transmissions[n];
        const ChannelSet ch = draw_channels(tx.served_users, L, derive_seed(seed, static_cast<std::uint64_t>(trial), n));
        const BeamSolution sol = precoder == Precoder::Optimized ? maxmin_solve(tx, ch, mu, P_T, N0, opts)
                                                                 : zf_precoders(tx, ch, P_T, N0, mu);
        if (!(sol.min_rate > 0.0) && degenerate) ++*degenerate;
        rates.push_back(sol.min_rate);
    }
    return symmetric_from_rates(rates, mu);
}

RateReport summarize(const std::vector<double> &values, std::int64_t degenerate) {
    RateReport r;
    r.per_trial = values;
    r.trials = static_cast<int>(values.size());
    r.degenerate = degenerate;
    if (values.empty()) return r;
    double sum = 0.0;
    for (double v : values) sum += v;
    r.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - r.mean) * (v - r.mean);
        r.stderr_ = std::sqrt(ss / static_cast<double>(values.size() - 1)) /
                    std::sqrt(static_cast<double>(values.size()));
    }
    return r;
}

RateReport symmetric_rate(const Schedule &schedule, const NetworkConfig &cfg, const RateOptions &opts) {
    std::vector<double> values(static_cast<std::size_t>(opts.trials), 0.0);
    std::vector<std::int64_t> degenerate(values.size(), 0);
    parallel_for(values.size(), [&](std::size_t t) {
        values[t] = schedule_rate(schedule, cfg.tx_power, cfg.noise_power, opts.seed, static_cast<int>(t),
                                  opts.precoder, opts.solver, &degenerate[t]);
    });
    return summarize(values, std::accumulate(degenerate.begin(), degenerate.end(), std::int64_t{0}));
}

RateReport nocc_rate(const ValidatedConfig &cfg, const Association &assoc, const RateOptions &opts) {
    return symmetric_rate(nocc_schedule(cfg, assoc), cfg.get(), opts);
}

} // namespace dyncache
