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
#include <cmath>
#include <utility>
#include <vector>

#include "dyncache/beamform.hpp"

namespace dyncache::testing {

/// Max-min rate of two mutually interfering single-antenna users with L = 2.
/// Beamformers on the Pareto boundary are mixtures of the projections of h_k
/// onto h_j and onto its orthogonal complement. The mixing angle is gridded in
/// 1000 steps over [0, pi/2] and the power split equalizes both rates.
inline double brute_force_pair(const CVector &h1, const CVector &h2, double P_T, double N0) {
    auto basis = [](const CVector &hk, const CVector &hj) {
        const CVector uj = hj / hj.norm();
        const CVector par = uj * uj.dot(hk);
        const CVector perp = hk - par;
        return std::pair<CVector, CVector>{par / par.norm(), perp / perp.norm()};
    };
    const auto [a1, b1] = basis(h1, h2);
    const auto [a2, b2] = basis(h2, h1);
    const int steps = 1000;
    const double half_pi = std::acos(0.0);
    double best = 0.0;
    std::vector<double> s22(steps + 1), s12(steps + 1);
    for (int j = 0; j <= steps; ++j) {
        const double th = half_pi * j / steps;
        const CVector u2 = std::cos(th) * a2 + std::sin(th) * b2;
        s22[j] = std::norm(h2.dot(u2));
        s12[j] = std::norm(h1.dot(u2));
    }
    for (int i = 0; i <= steps; ++i) {
        const double th = half_pi * i / steps;
        const CVector u1 = std::cos(th) * a1 + std::sin(th) * b1;
        const double s11 = std::norm(h1.dot(u1));
        const double s21 = std::norm(h2.dot(u1));
        for (int j = 0; j <= steps; ++j) {
            // Gamma_1 grows and Gamma_2 shrinks with p1: bisect for equality.
            double lo = 0.0, hi = P_T;
            for (int it = 0; it < 60; ++it) {
                const double p1 = 0.5 * (lo + hi);
                const double g1 = p1 * s11 / ((P_T - p1) * s12[j] + N0);
                const double g2 = (P_T - p1) * s22[j] / (p1 * s21 + N0);
                (g1 < g2 ? lo : hi) = p1;
            }
            const double p1 = 0.5 * (lo + hi);
            const double g1 = p1 * s11 / ((P_T - p1) * s12[j] + N0);
            const double g2 = (P_T - p1) * s22[j] / (p1 * s21 + N0);
            best = std::max(best, std::log2(1.0 + std::min(g1, g2)));
        }
    }
    return best;
}

} // namespace dyncache::testing
