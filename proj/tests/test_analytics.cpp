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

#include <catch_amalgamated.hpp>

#include <random>

#include "dyncache/analytics.hpp"
#include "dyncache/combinatorics.hpp"
#include "dyncache/errors.hpp"
#include "dyncache/verifier.hpp"
#include "support.hpp"

using namespace dyncache;
using Catch::Approx;

namespace {

NetworkConfig design(int P, const Rational &gamma, int alpha, int eta_hat, int beta, int Q, Strategy s) {
    NetworkConfig c = make_config(alpha, gamma, P, alpha, eta_hat);
    c.per_tx_users = beta;
    c.profiles_per_tx = Q;
    c.strategy = s;
    return validate_config(c).get();
}

double closed(const std::vector<int> &lengths, int alpha, int eta_hat, int Q, Strategy s) {
    const int beta = s == Strategy::B ? eta_hat : std::min(alpha, eta_hat);
    const NetworkConfig c = design(static_cast<int>(lengths.size()), Rational(1, 5), alpha, eta_hat, beta, Q, s);
    return to_double(dof_closed_form(c, association_from_lengths(lengths, eta_hat, beta)));
}

} // namespace

TEST_CASE("hockey-stick identity", "[analytics]") {
    CHECK(lemma1(5, 3) == std::pair<std::int64_t, std::int64_t>{10, 10});
    CHECK(lemma1(10, 4) == std::pair<std::int64_t, std::int64_t>{210, 210});
    for (int P = 1; P <= 20; ++P) {
        CHECK(lemma1(P, P) == std::pair<std::int64_t, std::int64_t>{1, 1});
        for (int Q = 1; Q <= P; ++Q) {
            const auto [lhs, rhs] = lemma1(P, Q);
            CHECK(lhs == rhs);
        }
    }
    CHECK_THROWS_AS(lemma1(3, 4), ConstraintViolation);
}

TEST_CASE("closed-form DoF spot values", "[analytics]") {
    const std::vector<int> u(5, 6);
    CHECK(closed(u, 8, 6, 3, Strategy::B) == 14.0);
    CHECK(closed(u, 8, 4, 3, Strategy::A) == Approx(10.2857).margin(1e-4));
    CHECK(closed({9, 7, 7, 4, 3}, 8, 9, 2, Strategy::A) == Approx(11.4286).margin(1e-4));
    const NetworkConfig small = design(15, Rational(1, 5), 2, 2, 2, 4, Strategy::A);
    CHECK(dof_closed_form(small, association_from_lengths(testing::uniform(30, 15), 2, 2)) == Rational(8));
}

TEST_CASE("optimal DoF identities on uniform networks", "[analytics][property]") {
    int tuples = 0;
    for (int P = 2; P <= 8; ++P)
        for (int t = 1; t < P; ++t)
            for (int eta = 1; eta <= 6; ++eta)
                for (int alpha = 1; alpha <= 12; ++alpha) {
                    const Rational gamma(t, P);
                    const Design d = choose_design(gamma, alpha, eta, P);
                    int Q;
                    if (alpha <= eta) Q = t + 1;
                    else if (alpha % eta == 0) Q = t + alpha / eta;
                    else Q = t + (alpha + eta - 1) / eta;
                    if (Q > P) continue;
                    REQUIRE(d.Q == Q);
                    NetworkConfig c = make_config(alpha, gamma, P, alpha, eta);
                    const ValidatedConfig v = validate_config(c);
                    const Association a = association_from_lengths(std::vector<int>(P, eta), eta, c.per_tx_users);
                    REQUIRE(a.K_U == 0);
                    const Rational dof = dof_closed_form(c, a);
                    const int K = P * eta;
                    const Rational expect = alpha <= eta ? Rational(alpha * (t + 1)) : Rational(K) * gamma + alpha;
                    INFO("P=" << P << " t=" << t << " eta=" << eta << " alpha=" << alpha);
                    CHECK(dof == expect);
                    CHECK(count_dof(full_schedule(v, a)) == expect);
                    ++tuples;
                }
    CHECK(tuples >= 50);
}

TEST_CASE("DoF for eta_hat = eta_1 without exclusions", "[analytics][property]") {
    std::mt19937_64 rng(3);
    int checked = 0;
    for (int trial = 0; trial < 400 && checked < 100; ++trial) {
        const int P = std::uniform_int_distribution<int>(2, 6)(rng);
        const int t = std::uniform_int_distribution<int>(1, P - 1)(rng);
        std::vector<int> lengths(P);
        for (auto &v : lengths) v = std::uniform_int_distribution<int>(1, 6)(rng);
        std::sort(lengths.rbegin(), lengths.rend());
        const int eta = lengths[0];
        const int alpha = std::uniform_int_distribution<int>(eta, 3 * eta)(rng);
        const int K = std::accumulate(lengths.begin(), lengths.end(), 0);
        const Rational gamma(t, P);
        if (alpha % eta == 0) {
            const int Q = t + alpha / eta;
            if (Q > P) continue;
            const NetworkConfig c = design(P, gamma, alpha, eta, eta, Q, Strategy::A);
            CHECK(dof_closed_form(c, association_from_lengths(lengths, eta, eta)) == Rational(K * Q, P));
        } else {
            const int Q = t + (alpha + eta - 1) / eta;
            if (Q > P) continue;
            const NetworkConfig c = design(P, gamma, alpha, eta, eta, Q, Strategy::B);
            CHECK(dof_closed_form(c, association_from_lengths(lengths, eta, eta)) ==
                  Rational(K * (eta * t + alpha), P * eta));
        }
        ++checked;
    }
    CHECK(checked >= 50);
}

TEST_CASE("closed-form DoF peaks at eta_1", "[analytics][property]") {
    std::mt19937_64 rng(9);
    int checked = 0;
    while (checked < 120) {
        const int P = std::uniform_int_distribution<int>(2, 6)(rng);
        const int t = std::uniform_int_distribution<int>(1, P - 1)(rng);
        const int K = std::uniform_int_distribution<int>(P, 40)(rng);
        std::vector<int> lengths(P, 0);
        std::uniform_int_distribution<int> who(0, P - 1);
        for (int k = 0; k < K; ++k) ++lengths[who(rng)];
        const int eta_1 = *std::max_element(lengths.begin(), lengths.end());
        const int alpha = std::uniform_int_distribution<int>(eta_1, eta_1 + 6)(rng);
        const Rational gamma(t, P);
        auto at = [&](int eta_hat) {
            NetworkConfig c = make_config(alpha, gamma, P, alpha, eta_hat);
            c.strategy = Strategy::A;
            c.per_tx_users = eta_hat;
            c.profiles_per_tx = t + 1;
            return dof_closed_form(validate_config(c).get(), association_from_lengths(lengths, eta_hat, eta_hat));
        };
        const Rational best = at(eta_1);
        for (int e = 1; e < eta_1; ++e) CHECK(at(e) <= best);
        ++checked;
    }
}

TEST_CASE("maximum DoF search", "[analytics]") {
    const Rational g(1, 5);
    CHECK(dof_max_search({6, 6, 6, 6, 6}, 8, g).dof == Rational(14));
    CHECK(to_double(dof_max_search({9, 8, 6, 5, 2}, 8, g).dof) == Approx(11.43).margin(0.01));
    CHECK(dof_max_search({6, 6, 6, 6, 6}, 4, g).dof == Rational(8));
    CHECK(to_double(dof_max_search({9, 8, 6, 5, 2}, 4, g).dof) == Approx(6.23).margin(0.01));
    // one crowded profile gains nothing over unicast
    const DofSearchResult crowded = dof_max_search({30, 0, 0, 0, 0}, 8, g);
    CHECK(crowded.dof == Rational(8));
    CHECK(crowded.raw_dof <= Rational(8));
    CHECK_THROWS_AS(dof_max_search({0, 0}, 2, Rational(1, 2)), EmptyNetwork);
}

TEST_CASE("search ties keep the smallest design", "[analytics]") {
    // Enumerate every admissible design and keep the first maximum in
    // (eta_hat, Q, A before B) order.
    const Rational g(1, 5);
    for (const auto &lengths : std::vector<std::vector<int>>{{6, 6, 6, 6, 6}, {9, 8, 6, 5, 2}, {4, 4, 2, 0, 0}})
        for (int alpha : {2, 4, 8}) {
            Rational best(-1);
            int best_eta = 0, best_q = 0;
            Strategy best_s = Strategy::A;
            const int eta_1 = *std::max_element(lengths.begin(), lengths.end());
            for (int eta = 1; eta <= eta_1; ++eta)
                for (Strategy s : {Strategy::A, Strategy::B})
                    for (int Q = 2; Q <= 5; ++Q) {
                        NetworkConfig c = make_config(alpha, g, 5, alpha, eta);
                        c.strategy = s;
                        c.per_tx_users = s == Strategy::B ? eta : std::min(alpha, eta);
                        c.profiles_per_tx = Q;
                        try {
                            validate_config(c);
                        } catch (const ConstraintViolation &) {
                            continue;
                        }
                        const Rational d =
                            dof_closed_form(c, association_from_lengths(lengths, eta, c.per_tx_users));
                        const bool earlier = eta < best_eta || (eta == best_eta && Q < best_q);
                        if (d > best || (d == best && earlier)) {
                            best = d;
                            best_eta = eta;
                            best_q = Q;
                            best_s = s;
                        }
                    }
            const DofSearchResult r = dof_max_search(lengths, alpha, g);
            INFO("alpha=" << alpha);
            CHECK(r.raw_dof == best);
            CHECK(r.eta_hat == best_eta);
            CHECK(r.Q == best_q);
            CHECK(r.strategy == best_s);
        }
}

TEST_CASE("unicast DoF", "[analytics]") {
    CHECK(nocc_dof(30, 8) == 8);
    CHECK(nocc_dof(3, 8) == 3);
    CHECK(nocc_dof(30, 5) == 5);
}

TEST_CASE("average maximum DoF by sigma", "[analytics]") {
    const auto buckets = dof_m_average(30, 5, 8, Rational(1, 5));
    auto at_key = [&](std::int64_t key) {
        for (auto &b : buckets)
            if (b.key == key) return b;
        FAIL("missing sigma bucket " << key);
        return SigmaBucket{};
    };
    CHECK(at_key(0).dof_m == Approx(14.0).margin(1e-9));
    CHECK(at_key(20).sigma == Approx(0.894).margin(1e-3));
    CHECK(at_key(20).dof_m == Approx(12.857).margin(1e-3));
    CHECK(at_key(40).dof_m == Approx(12.2857).margin(1e-3));
    CHECK(at_key(120).dof_m == Approx(11.44).margin(0.01));
    CHECK(at_key(2500).sigma == Approx(10.0).margin(1e-9));
    CHECK(at_key(2500).dof_m == Approx(8.0).margin(1e-9));
    CHECK(std::is_sorted(buckets.begin(), buckets.end(), [](auto &a, auto &b) { return a.key < b.key; }));

    const auto alpha5 = dof_m_average(30, 5, 5, Rational(1, 5));
    CHECK(alpha5.front().dof_m == Approx(10.0).margin(1e-9));

    std::int64_t labeled = 0;
    for (auto &b : dof_m_average(12, 3, 4, Rational(1, 3), EnumerationMode::Labeled)) labeled += b.count;
    CHECK(labeled == binom(12 + 2, 2));
}

TEST_CASE("sorted compositions", "[analytics]") {
    CHECK(sorted_compositions(4, 2) == std::vector<std::vector<int>>{{4, 0}, {3, 1}, {2, 2}});
    CHECK(sorted_compositions(0, 3) == std::vector<std::vector<int>>{{0, 0, 0}});
    for (auto &c : sorted_compositions(12, 4)) {
        CHECK(std::accumulate(c.begin(), c.end(), 0) == 12);
        CHECK(std::is_sorted(c.rbegin(), c.rend()));
    }
    CHECK(sorted_compositions(12, 4).size() == 34);
}
