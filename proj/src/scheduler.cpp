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

#include "dyncache/scheduler.hpp"

#include <algorithm>
#include <numeric>

#include "dyncache/errors.hpp"

namespace dyncache {

std::string to_string(TxKind k) {
    switch (k) {
    case TxKind::CC_A: return "CC_A";
    case TxKind::CC_B: return "CC_B";
    case TxKind::UC: return "UC";
    }
    return "?";
}

bool Transmission::visible_to_profile(std::size_t j, int p) const {
    if (!cache_aided()) return true;
    return !contains(streams.at(j).lambda, p);
}

SubpacketCounters::SubpacketCounters(const MiniFileIndex &index, int K, std::int64_t S)
    : index_(index), S_(S), used_(K + 1, std::vector<int>(index.count(), 0)) {}

int SubpacketCounters::next(int user, const ProfileSet &lambda) {
    int &slot = used_.at(user).at(index_.rank(lambda));
    if (slot >= S_) {
        std::string l;
        for (int p : lambda) l += (l.empty() ? "" : "-") + std::to_string(p);
        throw CounterExhausted("user " + std::to_string(user) + " mini-file " + l +
                               " needs more than S = " + std::to_string(S_) + " subpackets");
    }
    return ++slot;
}

int SubpacketCounters::used(int user, const ProfileSet &lambda) const {
    return used_.at(user).at(index_.rank(lambda));
}

namespace {

std::vector<int> sorted_copy(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
}

ProfileSet without(const ProfileSet &set, const ProfileSet &removed) {
    ProfileSet out;
    for (int p : set)
        if (std::find(removed.begin(), removed.end(), p) == removed.end()) out.push_back(p);
    return out;
}

} // namespace

// ---------------------------------------------------------------- Strategy A

std::vector<std::vector<std::vector<int>>> elevate_A(const Association &assoc) {
    std::vector<std::vector<std::vector<int>>> out;
    const int beta = assoc.beta;
    for (int p = 1; p <= assoc.P(); ++p) {
        const auto &V = assoc.served_of(p);
        const int delta = assoc.delta_of(p);
        std::vector<std::vector<int>> windows;
        if (delta > beta) {
            for (int j = 1; j <= delta; ++j) {
                std::vector<int> w;
                for (int i = 1; i <= beta; ++i) w.push_back(V[mod1(i + j - 1, delta) - 1]);
                windows.push_back(std::move(w));
            }
        } else {
            for (int j = 1; j <= beta; ++j) windows.push_back(V);
        }
        while (static_cast<int>(windows.size()) < assoc.eta_hat) windows.emplace_back();
        out.push_back(std::move(windows));
    }
    return out;
}

std::vector<TripleA> enumerate_triples(const NetworkConfig &cfg, const Association &assoc) {
    const int P = cfg.num_profiles;
    const int Q = cfg.profiles_per_tx;
    std::vector<TripleA> out;
    for (int r = 1; r <= P - Q + 1; ++r) {
        const std::int64_t L = binom(P - r, Q - 1);
        for (int c = 1; c <= assoc.phi_of(r); ++c)
            for (int l = 1; l <= L; ++l) out.push_back({r, c, l, assoc.delta_of(r) == 0});
    }
    return out;
}

ProfileSet triple_profiles(const NetworkConfig &cfg, const TripleA &triple) {
    const int P = cfg.num_profiles;
    const int Q = cfg.profiles_per_tx;
    ProfileSet N{triple.r};
    for (int v : subset_unrank(P - triple.r, Q - 1, triple.l - 1)) N.push_back(v + triple.r);
    return N;
}

std::vector<Transmission> build_tx_A(const NetworkConfig &cfg, const Association &assoc,
                                     const std::vector<std::vector<std::vector<int>>> &windows,
                                     const TripleA &triple, SubpacketCounters &counters) {
    if (triple.silent) return {};
    const int t = cfg.t_bar;
    const ProfileSet N = triple_profiles(cfg, triple);

    auto window = [&](int p) -> const std::vector<int> & {
        static const std::vector<int> empty;
        const auto &list = windows.at(p - 1);
        return triple.c <= static_cast<int>(list.size()) ? list[triple.c - 1] : empty;
    };

    std::vector<int> served;
    for (int p : N) {
        const auto &w = window(p);
        served.insert(served.end(), w.begin(), w.end());
    }
    const std::vector<int> served_sorted = sorted_copy(served);

    // Users heard by a stream whose mini-file is Lambda: everyone in the
    // windows of N \ Lambda.
    auto exposed_users = [&](const ProfileSet &lambda) {
        std::vector<int> out;
        for (int p : without(N, lambda)) {
            const auto &w = window(p);
            out.insert(out.end(), w.begin(), w.end());
        }
        return sorted_copy(out);
    };

    std::vector<std::vector<ProfileSet>> options(served.size());
    std::size_t nu2 = 0;
    for (std::size_t i = 0; i < served.size(); ++i) {
        const int p = assoc.profile(served[i]);
        options[i] = k_subsets(without(N, {p}), t);
        nu2 = options[i].size();
    }

    std::vector<Transmission> out;
    for (std::size_t j = 0; j < nu2; ++j) {
        Transmission tx;
        tx.kind = TxKind::CC_A;
        tx.origin = {triple.r, triple.c, triple.l};
        tx.sub_index = static_cast<int>(j) + 1;
        tx.served_users = served_sorted;
        for (std::size_t i = 0; i < served.size(); ++i) {
            Stream s;
            s.user = served[i];
            s.profile = assoc.profile(s.user);
            s.lambda = options[i][j];
            s.q = counters.next(s.user, s.lambda);
            for (int u : exposed_users(s.lambda))
                if (u != s.user) s.nulling_set.push_back(u);
            tx.streams.push_back(std::move(s));
        }
        out.push_back(std::move(tx));
    }
    return out;
}

// ---------------------------------------------------------------- Strategy B

std::vector<int> padded_profile(const Association &assoc, int r) {
    std::vector<int> Y = assoc.served_of(r);
    Y.resize(assoc.eta_hat, kPhantom);
    return Y;
}

std::vector<int> e_users(const NetworkConfig &cfg, const Association &assoc, int r, int m) {
    const std::vector<int> Y = padded_profile(assoc, r);
    const int theta = design_counts(cfg).theta;
    std::vector<int> E;
    for (int i = 0; i < theta; ++i) E.push_back(Y[mod1(i + m, assoc.eta_hat) - 1]);
    return E;
}

std::vector<int> p_bar(const Association &assoc, int r) {
    std::vector<int> out;
    for (int p = 1; p <= assoc.P(); ++p)
        if (p != r) out.push_back(p);
    std::stable_sort(out.begin(), out.end(),
                     [&](int x, int y) { return assoc.delta_of(x) > assoc.delta_of(y); });
    return out;
}

ProfileSet quintuple_profiles(const NetworkConfig &cfg, const Association &assoc,
                              const QuintupleB &qt) {
    const int P = cfg.num_profiles;
    const int Q = cfg.profiles_per_tx;
    const std::vector<int> bar = p_bar(assoc, qt.r);
    ProfileSet F{bar.at(qt.c - 1)};
    for (int pos : subset_unrank(P - 1 - qt.c, Q - 2, qt.l - 1)) F.push_back(bar.at(pos + qt.c - 1));
    return F;
}

std::vector<ProfileSet> b_tuples(const NetworkConfig &cfg, const Association &assoc,
                                 const QuintupleB &qt) {
    const int a = cfg.profiles_per_tx - cfg.t_bar - 1;
    return k_subsets(quintuple_profiles(cfg, assoc, qt), a);
}

bool quintuple_active(const NetworkConfig &cfg, const Association &assoc, const QuintupleB &qt) {
    for (int u : e_users(cfg, assoc, qt.r, qt.m))
        if (u != kPhantom) return true;
    const std::vector<int> bar = p_bar(assoc, qt.r);
    return assoc.delta_of(bar.at(qt.c - 1)) > 0;
}

std::vector<QuintupleB> enumerate_quintuples(const NetworkConfig &cfg, const Association &assoc) {
    const int P = cfg.num_profiles;
    const int Q = cfg.profiles_per_tx;
    const std::int64_t nu2 = design_counts(cfg).nu2;
    std::vector<QuintupleB> out;
    for (int r = 1; r <= P; ++r)
        for (int c = 1; c <= P - Q + 1; ++c) {
            const std::int64_t L = binom(P - c - 1, Q - 2);
            for (int l = 1; l <= L; ++l)
                for (int m = 1; m <= assoc.eta_hat; ++m)
                    for (int s = 1; s <= nu2; ++s) out.push_back({r, c, l, m, s});
        }
    return out;
}

std::vector<Transmission> build_tx_B(const NetworkConfig &cfg, const Association &assoc,
                                     const QuintupleB &qt, SubpacketCounters &counters) {
    if (!quintuple_active(cfg, assoc, qt)) return {};
    const DesignCounts dc = design_counts(cfg);
    const int nu1 = static_cast<int>(dc.nu1);
    const int nu2 = static_cast<int>(dc.nu2);
    const ProfileSet F = quintuple_profiles(cfg, assoc, qt);
    const std::vector<ProfileSet> B = b_tuples(cfg, assoc, qt);

    std::vector<int> E;
    for (int u : e_users(cfg, assoc, qt.r, qt.m))
        if (u != kPhantom) E.push_back(u);

    // Per-n served list C(n), mini-file Lambda(n) and exposed users H(n).
    struct Part {
        std::vector<int> users;
        ProfileSet lambda;
        std::vector<int> exposed;
    };
    std::vector<Part> parts(nu2);
    for (int n = 1; n <= nu2; ++n) {
        Part &part = parts[n - 1];
        const bool e_real = mod1(n + qt.s - 1, nu2) <= nu1;
        if (e_real) part.users = E;
        part.exposed = E;
        for (int p : B[n - 1]) {
            const auto &V = assoc.served_of(p);
            part.users.insert(part.users.end(), V.begin(), V.end());
            part.exposed.insert(part.exposed.end(), V.begin(), V.end());
        }
        part.lambda = sorted_copy(without(F, B[n - 1]));
        part.exposed = sorted_copy(part.exposed);
    }

    // Each served user gets nu1 streams across the parts; sub-transmission j
    // carries every user's j-th one.
    std::vector<int> served;
    std::vector<std::vector<int>> parts_of_user;
    for (int n = 0; n < nu2; ++n)
        for (int u : parts[n].users) {
            auto it = std::find(served.begin(), served.end(), u);
            std::size_t idx = static_cast<std::size_t>(it - served.begin());
            if (it == served.end()) {
                served.push_back(u);
                parts_of_user.emplace_back();
            }
            parts_of_user[idx].push_back(n);
        }
    const std::vector<int> served_sorted = sorted_copy(served);

    std::vector<Transmission> out;
    for (int j = 0; j < nu1; ++j) {
        Transmission tx;
        tx.kind = TxKind::CC_B;
        tx.origin = {qt.r, qt.c, qt.l, qt.m, qt.s};
        tx.sub_index = j + 1;
        tx.served_users = served_sorted;
        std::vector<std::pair<int, int>> picks; // (part, user)
        for (std::size_t i = 0; i < served.size(); ++i)
            picks.emplace_back(parts_of_user[i].at(j), served[i]);
        std::stable_sort(picks.begin(), picks.end(),
                         [](auto &x, auto &y) { return x.first < y.first; });
        for (auto [n, u] : picks) {
            Stream s;
            s.user = u;
            s.profile = assoc.profile(u);
            s.lambda = parts[n].lambda;
            s.q = counters.next(u, s.lambda);
            for (int v : parts[n].exposed)
                if (v != u) s.nulling_set.push_back(v);
            tx.streams.push_back(std::move(s));
        }
        out.push_back(std::move(tx));
    }
    return out;
}

// ---------------------------------------------------------------- unicast

std::vector<Transmission> uc_schedule(const std::map<int, std::vector<SubpacketId>> &missing,
                                      const Association &assoc, int alpha) {
    struct Queue {
        int user;
        const std::vector<SubpacketId> *items;
        std::size_t next = 0;
        std::size_t remaining() const { return items->size() - next; }
    };
    std::vector<Queue> queues;
    for (auto &[user, items] : missing)
        if (!items.empty()) queues.push_back({user, &items});

    std::vector<Transmission> out;
    int round = 0;
    while (true) {
        std::vector<Queue *> active;
        for (auto &q : queues)
            if (q.remaining() > 0) active.push_back(&q);
        if (active.empty()) break;
        std::stable_sort(active.begin(), active.end(), [](const Queue *x, const Queue *y) {
            if (x->remaining() != y->remaining()) return x->remaining() > y->remaining();
            return x->user < y->user;
        });
        active.resize(std::min<std::size_t>(active.size(), static_cast<std::size_t>(alpha)));

        Transmission tx;
        tx.kind = TxKind::UC;
        tx.origin = {++round};
        for (Queue *q : active) tx.served_users.push_back(q->user);
        std::sort(tx.served_users.begin(), tx.served_users.end());
        for (Queue *q : active) {
            const SubpacketId &id = (*q->items)[q->next++];
            Stream s;
            s.user = id.user;
            s.profile = assoc.profile(id.user);
            s.lambda = id.lambda;
            s.q = id.q;
            for (int u : tx.served_users)
                if (u != s.user) s.nulling_set.push_back(u);
            tx.streams.push_back(std::move(s));
        }
        out.push_back(std::move(tx));
    }
    return out;
}

// ---------------------------------------------------------------- full schedule

namespace {

void finish_counts(Schedule &sch) {
    sch.J_M = sch.T_M = sch.J_U = sch.T_U = 0;
    for (auto &tx : sch.transmissions) {
        if (tx.cache_aided()) {
            ++sch.T_M;
            sch.J_M += static_cast<std::int64_t>(tx.streams.size());
        } else {
            ++sch.T_U;
            sch.J_U += static_cast<std::int64_t>(tx.streams.size());
        }
    }
}

} // namespace

Schedule full_schedule(const ValidatedConfig &vcfg, const Association &assoc,
                       const ScheduleOptions &opts) {
    const NetworkConfig &cfg = vcfg.get();
    if (assoc.P() != cfg.num_profiles)
        throw ConstraintViolation("violated: association has P = " + std::to_string(cfg.num_profiles) +
                                  " profiles");
    if (assoc.eta_hat != cfg.delivery_param || assoc.beta != cfg.per_tx_users)
        throw ConstraintViolation("violated: association eta_hat/beta match the config");

    Schedule sch;
    sch.cfg = cfg;
    sch.assoc = assoc;
    const MiniFileIndex index(cfg.num_profiles, cfg.t_bar);
    const std::int64_t S = subpacketization(cfg);
    SubpacketCounters counters(index, assoc.K, S);

    std::vector<Transmission> cc;
    if (cfg.strategy == Strategy::A) {
        const auto windows = elevate_A(assoc);
        for (const TripleA &tr : enumerate_triples(cfg, assoc))
            for (auto &tx : build_tx_A(cfg, assoc, windows, tr, counters)) cc.push_back(std::move(tx));
    } else {
        for (const QuintupleB &qt : enumerate_quintuples(cfg, assoc))
            for (auto &tx : build_tx_B(cfg, assoc, qt, counters)) cc.push_back(std::move(tx));
    }

    const std::size_t per_user = static_cast<std::size_t>(index.count() * S);
    std::vector<std::vector<char>> delivered(assoc.K + 1, std::vector<char>(per_user, 0));
    std::vector<std::vector<char>> rerouted(assoc.K + 1);
    auto slot = [&](const ProfileSet &lambda, int q) {
        return static_cast<std::size_t>(index.rank(lambda) * S + (q - 1));
    };

    for (auto &tx : cc) {
        if (opts.efficient_multicast &&
            static_cast<int>(tx.served_users.size()) < cfg.multiplexing_gain) {
            ++sch.dropped_cc;
            for (auto &s : tx.streams) {
                sch.rerouted_log.push_back({s.user, s.lambda, s.q});
                auto &r = rerouted[s.user];
                if (r.empty()) r.assign(per_user, 0);
                r[slot(s.lambda, s.q)] = 1;
            }
            continue;
        }
        for (auto &s : tx.streams) delivered[s.user][slot(s.lambda, s.q)] = 1;
        sch.transmissions.push_back(std::move(tx));
    }

    std::map<int, std::vector<SubpacketId>> queues;
    for (int k = 1; k <= assoc.K; ++k) {
        const bool cc_user = !assoc.is_excluded(k);
        std::vector<SubpacketId> pending;
        for (auto &id : missing_subpackets(cfg, assoc, k)) {
            const std::size_t at = slot(id.lambda, id.q);
            if (delivered[k][at]) continue;
            if (cc_user && (rerouted[k].empty() || !rerouted[k][at])) sch.residual_log.push_back(id);
            pending.push_back(std::move(id));
        }
        if (!pending.empty()) queues.emplace(k, std::move(pending));
    }
    for (auto &tx : uc_schedule(queues, assoc, cfg.multiplexing_gain))
        sch.transmissions.push_back(std::move(tx));
    finish_counts(sch);
    return sch;
}

Schedule nocc_schedule(const ValidatedConfig &vcfg, const Association &assoc) {
    const NetworkConfig &cfg = vcfg.get();
    Schedule sch;
    sch.cfg = cfg;
    sch.assoc = assoc;
    std::map<int, std::vector<SubpacketId>> queues;
    for (int k = 1; k <= assoc.K; ++k) queues.emplace(k, missing_subpackets(cfg, assoc, k));
    sch.transmissions = uc_schedule(queues, assoc, cfg.multiplexing_gain);
    finish_counts(sch);
    return sch;
}

} // namespace dyncache
