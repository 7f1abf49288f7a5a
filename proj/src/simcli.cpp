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

#include "dyncache/simcli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "dyncache/analytics.hpp"
#include "dyncache/beamform.hpp"
#include "dyncache/errors.hpp"
#include "dyncache/parallel.hpp"
#include "dyncache/placement.hpp"
#include "dyncache/study.hpp"
#include "dyncache/verifier.hpp"

#ifndef DYNCACHE_GIT_DESCRIBE
#define DYNCACHE_GIT_DESCRIBE "unknown"
#endif

namespace fs = std::filesystem;

namespace dyncache {

std::string git_describe() { return DYNCACHE_GIT_DESCRIBE; }

std::string join(const std::vector<int> &values, const std::string &sep) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) out += (i ? sep : "") + std::to_string(values[i]);
    return out;
}

ExampleNetwork example_network(int which) {
    if (which != 1 && which != 2) throw UsageError("--example must be 1 or 2");
    ExampleNetwork ex;
    ex.lengths = {5, 4, 3};
    NetworkConfig &c = ex.cfg;
    c.num_antennas = 6;
    c.library_size = 3;
    c.cache_files = 1;
    c.cache_ratio = Rational(1, 3);
    c.num_profiles = 3;
    c.t_bar = 1;
    c.multiplexing_gain = 6;
    c.delivery_param = 4;
    c.profiles_per_tx = 3;
    c.per_tx_users = which == 1 ? 3 : 4;
    c.strategy = which == 1 ? Strategy::A : Strategy::B;
    return ex;
}

Table schedule_table(const Schedule &schedule) {
    Table t;
    t.columns = {"tx_index", "kind", "origin", "sub_index", "user", "lambda", "q", "nulling_set"};
    for (std::size_t n = 0; n < schedule.transmissions.size(); ++n) {
        const Transmission &tx = schedule.transmissions[n];
        const std::string origin = "(" + join(tx.origin, ",") + ")";
        for (auto &s : tx.streams)
            t.add({static_cast<std::int64_t>(n + 1), to_string(tx.kind), origin, tx.sub_index, s.user,
                   join(s.lambda, "-"), s.q, join(s.nulling_set, ";")});
    }
    return t;
}

namespace {

// ------------------------------------------------------------ parameters

struct NetFlags {
    int K = -1;
    int L = -1;
    int P = -1;
    int alpha = -1;
    int eta_hat = -1;
    int beta = -1;
    int Q = -1;
    std::string gamma;
    std::string strategy;
    std::string lengths;
    double N0 = -1.0;
    double PT = -1.0;
};

struct Globals {
    std::string out = ".";
    std::string format = "csv";
    std::string config;
};

/// Parameters after merging defaults, the config file and flags.
struct Resolved {
    int K = 30;
    int L = 10;
    int P = 5;
    Rational gamma{1, 5};
    int alpha = 8;
    int eta_hat = 0;
    int beta = 0;
    int Q = 0;
    std::optional<Strategy> strategy;
    double N0 = 1.0;
    double PT = 1.0;
    std::vector<int> lengths;
    bool L_given = false;
    bool K_given = false;

    Json to_json() const {
        Json j;
        j["num_users"] = K;
        j["num_antennas"] = L;
        j["num_profiles"] = P;
        j["cache_ratio"] = dyncache::to_string(gamma);
        j["multiplexing_gain"] = alpha;
        j["delivery_param"] = eta_hat;
        j["per_tx_users"] = beta;
        j["profiles_per_tx"] = Q;
        j["strategy"] = strategy ? dyncache::to_string(*strategy) : std::string("auto");
        j["noise_power"] = N0;
        j["tx_power"] = PT;
        j["lengths"] = lengths;
        return j;
    }
};

std::vector<int> parse_int_list(const std::string &text, const std::string &what) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception &) {
            throw UsageError(what + ": '" + item + "' is not an integer");
        }
    }
    if (out.empty()) throw UsageError(what + " is empty");
    return out;
}

std::vector<double> parse_double_list(const std::string &text, const std::string &what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const double v = std::stod(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception &) {
            throw UsageError(what + ": '" + item + "' is not a number");
        }
    }
    if (out.empty()) throw UsageError(what + " is empty");
    return out;
}

std::string trim(std::string s) {
    const auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
    s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), issp));
    s.erase(std::find_if_not(s.rbegin(), s.rend(), issp).base(), s.end());
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front())
        s = s.substr(1, s.size() - 2);
    return s;
}

/// Config file contents as key -> text value.
std::map<std::string, std::string> read_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    std::map<std::string, std::string> kv;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        Json j;
        try {
            j = Json::parse(text);
        } catch (const std::exception &e) {
            throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
        }
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it.value().is_string()) {
                kv[it.key()] = it.value().get<std::string>();
            } else if (it.value().is_array()) {
                std::string s;
                for (auto &v : it.value()) s += (s.empty() ? "" : ",") + v.dump();
                kv[it.key()] = s;
            } else {
                kv[it.key()] = it.value().dump();
            }
        }
        return kv;
    }
    std::stringstream lines(text);
    std::string line;
    int number = 0;
    while (std::getline(lines, line)) {
        ++number;
        if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty() || line.front() == '[') continue;
        auto sep = line.find('=');
        if (sep == std::string::npos) sep = line.find(':');
        if (sep == std::string::npos)
            throw UsageError(path + ":" + std::to_string(number) + ": expected 'key = value'");
        std::string value = trim(line.substr(sep + 1));
        if (!value.empty() && value.front() == '[' && value.back() == ']') value = value.substr(1, value.size() - 2);
        kv[trim(line.substr(0, sep))] = value;
    }
    return kv;
}

int to_int(const std::string &key, const std::string &value) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(value, &used);
        if (used == value.size()) return v;
    } catch (const std::exception &) {
    }
    throw UsageError("config key '" + key + "' expects an integer, got '" + value + "'");
}

double to_real(const std::string &key, const std::string &value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used == value.size()) return v;
    } catch (const std::exception &) {
    }
    throw UsageError("config key '" + key + "' expects a number, got '" + value + "'");
}

Resolved resolve(const Globals &g, const NetFlags &f) {
    Resolved r;
    std::optional<int> N;
    std::optional<int> M;
    std::optional<int> t_bar;
    if (!g.config.empty()) {
        for (auto &[key, value] : read_config(g.config)) {
            if (key == "num_antennas") {
                r.L = to_int(key, value);
                r.L_given = true;
            } else if (key == "library_size") N = to_int(key, value);
            else if (key == "cache_files") M = to_int(key, value);
            else if (key == "cache_ratio") r.gamma = parse_rational(value);
            else if (key == "num_profiles") r.P = to_int(key, value);
            else if (key == "t_bar") t_bar = to_int(key, value);
            else if (key == "multiplexing_gain") r.alpha = to_int(key, value);
            else if (key == "delivery_param") r.eta_hat = to_int(key, value);
            else if (key == "per_tx_users") r.beta = to_int(key, value);
            else if (key == "profiles_per_tx") r.Q = to_int(key, value);
            else if (key == "strategy") {
                if (value != "auto") r.strategy = parse_strategy(value);
            } else if (key == "noise_power") r.N0 = to_real(key, value);
            else if (key == "tx_power") r.PT = to_real(key, value);
            else if (key == "lengths") r.lengths = parse_int_list(value, "lengths");
            else if (key == "num_users") {
                r.K = to_int(key, value);
                r.K_given = true;
            } else throw UsageError("unknown config key '" + key + "'");
        }
        if (N && M) {
            if (*N < 1) throw UsageError("library_size must be positive");
            r.gamma = Rational(*M, *N);
        }
    }
    if (f.K >= 0) {
        r.K = f.K;
        r.K_given = true;
    }
    if (f.L >= 0) {
        r.L = f.L;
        r.L_given = true;
    }
    if (f.P >= 0) r.P = f.P;
    if (!f.gamma.empty()) r.gamma = parse_rational(f.gamma);
    if (f.alpha >= 0) r.alpha = f.alpha;
    if (f.eta_hat >= 0) r.eta_hat = f.eta_hat;
    if (f.beta >= 0) r.beta = f.beta;
    if (f.Q >= 0) r.Q = f.Q;
    if (!f.strategy.empty()) {
        if (f.strategy == "auto") r.strategy.reset();
        else r.strategy = parse_strategy(f.strategy);
    }
    if (f.N0 >= 0) r.N0 = f.N0;
    if (f.PT >= 0) r.PT = f.PT;
    if (!f.lengths.empty()) r.lengths = parse_int_list(f.lengths, "--lengths");

    if (!r.lengths.empty()) {
        if (f.P >= 0 && f.P != static_cast<int>(r.lengths.size()))
            throw UsageError("--P disagrees with the number of --lengths entries");
        r.P = static_cast<int>(r.lengths.size());
        const int sum = std::accumulate(r.lengths.begin(), r.lengths.end(), 0);
        if (r.K_given && r.K != sum) throw UsageError("--K disagrees with the sum of --lengths");
        r.K = sum;
    }
    if (r.P < 1) throw UsageError("P must be at least 1");
    if (r.K < 1) throw UsageError("K must be at least 1");
    if (r.alpha < 1) throw UsageError("alpha must be at least 1");
    if (!r.L_given) r.L = std::max(r.L, r.alpha);
    if (t_bar && *t_bar != t_bar_of(r.gamma, r.P))
        throw UsageError("t_bar in the config file disagrees with P*gamma");
    return r;
}

std::vector<int> uniform_lengths(int K, int P) {
    std::vector<int> out(P, K / P);
    for (int i = 0; i < K % P; ++i) ++out[i];
    return out;
}

std::vector<int> lengths_of(const Resolved &r) { return r.lengths.empty() ? uniform_lengths(r.K, r.P) : r.lengths; }

/// Network configuration for one association from resolved parameters.
NetworkConfig network_config(const Resolved &r, const std::vector<int> &lengths) {
    const int eta_1 = *std::max_element(lengths.begin(), lengths.end());
    const int eta_hat = r.eta_hat > 0 ? r.eta_hat : std::max(1, eta_1);
    NetworkConfig cfg = make_config(r.L, r.gamma, r.P, r.alpha, eta_hat);
    const int t = cfg.t_bar;
    if (r.strategy == Strategy::B) {
        cfg.strategy = Strategy::B;
        cfg.per_tx_users = eta_hat;
        cfg.profiles_per_tx = t + (r.alpha + eta_hat - 1) / eta_hat;
    } else if (r.strategy == Strategy::A && cfg.strategy == Strategy::B) {
        cfg.strategy = Strategy::A;
        cfg.profiles_per_tx = std::min(r.P, t + r.alpha / cfg.per_tx_users);
    }
    if (r.beta > 0) cfg.per_tx_users = r.beta;
    if (r.Q > 0) {
        if (!r.strategy && r.Q != cfg.profiles_per_tx) cfg.strategy = Strategy::A;
        cfg.profiles_per_tx = r.Q;
    }
    cfg.noise_power = r.N0;
    cfg.tx_power = r.PT;
    return cfg;
}

// ------------------------------------------------------------ outputs

struct Output {
    fs::path dir;
    Format format = Format::Csv;
    Json sidecar;
    std::vector<std::string> files;

    fs::path table(const Table &t, const std::string &stem) {
        const fs::path p = dir / (stem + extension(format));
        emit_table(t, format, p);
        files.push_back(p.filename().string());
        return p;
    }
    fs::path text(const std::string &name, const std::string &content) {
        const fs::path p = dir / name;
        write_text(p, content);
        files.push_back(name);
        return p;
    }
    void finish(const std::string &subcommand) {
        sidecar["outputs"] = files;
        write_text(dir / (subcommand + ".run.json"), sidecar.dump(2) + "\n");
    }
};

Output open_output(const Globals &g, const std::string &subcommand, const std::vector<std::string> &argv) {
    Output o;
    o.dir = g.out.empty() ? fs::path(".") : fs::path(g.out);
    std::error_code ec;
    fs::create_directories(o.dir, ec);
    if (ec) throw IoError("cannot create output directory '" + o.dir.string() + "': " + ec.message());
    o.format = parse_format(g.format);
    o.sidecar["tool"] = "dyncache";
    o.sidecar["subcommand"] = subcommand;
    o.sidecar["argv"] = argv;
    o.sidecar["git_describe"] = git_describe();
    o.sidecar["threads"] = worker_count();
    return o;
}

std::string plot_script(const std::string &data_file, const std::string &x, const std::vector<std::string> &series,
                        const std::string &group, const std::string &xlabel, const std::string &ylabel) {
    std::ostringstream s;
    s << "# Plot generated by dyncache. Requires matplotlib.\n"
      << "import csv\nimport sys\nimport matplotlib\nmatplotlib.use('Agg')\nimport matplotlib.pyplot as plt\n\n"
      << "with open('" << data_file << "', newline='') as fh:\n    rows = list(csv.DictReader(fh))\n\n"
      << "fig, ax = plt.subplots()\n";
    if (group.empty()) {
        s << "xs = [float(r['" << x << "']) for r in rows]\n";
        for (auto &c : series)
            s << "ax.plot(xs, [float(r['" << c << "']) for r in rows], marker='o', label='" << c << "')\n";
    } else {
        s << "for name in sorted({r['" << group << "'] for r in rows}):\n"
          << "    sel = [r for r in rows if r['" << group << "'] == name]\n"
          << "    ax.plot([float(r['" << x << "']) for r in sel], [float(r['" << series.at(0)
          << "']) for r in sel], marker='o', label=name)\n";
    }
    s << "ax.set_xlabel('" << xlabel << "')\nax.set_ylabel('" << ylabel << "')\nax.grid(True)\nax.legend()\n"
      << "fig.savefig(sys.argv[1] if len(sys.argv) > 1 else '" << data_file.substr(0, data_file.rfind('.'))
      << ".png', dpi=150)\n";
    return s.str();
}

// ------------------------------------------------------------ subcommands

int cmd_dof(const Globals &g, const NetFlags &f, bool sweep, const std::string &mode_text,
            const std::vector<std::string> &argv, std::ostream &out) {
    const Resolved r = resolve(g, f);
    Output o = open_output(g, "dof", argv);
    o.sidecar["config"] = r.to_json();
    const EnumerationMode mode = mode_text == "labeled" ? EnumerationMode::Labeled : EnumerationMode::Sorted;
    if (mode_text != "sorted" && mode_text != "labeled") throw UsageError("--mode must be sorted or labeled");

    Table rows;
    rows.columns = {"sigma", "dof_max", "eta_hat", "Q", "strategy", "lengths"};
    auto add_search = [&](const std::vector<int> &lengths) {
        const DofSearchResult best = dof_max_search(lengths, r.alpha, r.gamma);
        rows.add({sigma(lengths, r.P), to_double(best.dof), best.eta_hat, best.Q,
                  best.nocc_fallback ? std::string("no-CC") : to_string(best.strategy), join(lengths, ";")});
    };

    if (sweep) {
        if (!r.lengths.empty()) throw UsageError("--sweep-sigma enumerates associations; drop --lengths");
        for (auto &parts : sorted_compositions(r.K, r.P)) add_search(parts);
        std::sort(rows.rows.begin(), rows.rows.end(), [](auto &a, auto &b) {
            return a[0].template get<double>() < b[0].template get<double>();
        });
        Table agg;
        agg.columns = {"sigma", "dof_m", "optimal", "nocc", "associations"};
        const double optimal = to_double(dof_max_search(uniform_lengths(r.K, r.P), r.alpha, r.gamma).dof);
        for (auto &b : dof_m_average(r.K, r.P, r.alpha, r.gamma, mode))
            agg.add({b.sigma, b.dof_m, optimal, nocc_dof(r.K, r.alpha), b.count});
        o.table(agg, "dof_fig4");
        if (o.format == Format::Csv)
            o.text("plot_dof.py", plot_script("dof_fig4.csv", "sigma", {"dof_m", "optimal", "nocc"}, "",
                                              "sigma", "DoF"));
        o.sidecar["enumeration_mode"] = to_string(mode);
    } else if (r.eta_hat > 0 || r.Q > 0 || r.beta > 0 || r.strategy) {
        const std::vector<int> lengths = lengths_of(r);
        const NetworkConfig cfg = validate_config(network_config(r, lengths)).get();
        const Association assoc = association_from_lengths(lengths, cfg.delivery_param, cfg.per_tx_users);
        rows.add({sigma(lengths, r.P), to_double(dof_closed_form(cfg, assoc)), cfg.delivery_param,
                  cfg.profiles_per_tx, to_string(cfg.strategy), join(lengths, ";")});
    } else {
        add_search(lengths_of(r));
    }
    o.table(rows, "dof");
    o.finish("dof");
    out << "wrote " << rows.rows.size() << " association rows to " << o.dir.string() << "\n";
    return kExitOk;
}

struct Prepared {
    NetworkConfig cfg;
    Association assoc;
};

Prepared prepare(const Globals &g, const NetFlags &f, int example, Resolved &r) {
    if (example != 0) {
        const ExampleNetwork ex = example_network(example);
        Prepared p{validate_config(ex.cfg).get(),
                   association_from_lengths(ex.lengths, ex.cfg.delivery_param, ex.cfg.per_tx_users)};
        r.K = 12;
        r.L = ex.cfg.num_antennas;
        r.P = 3;
        r.gamma = ex.cfg.cache_ratio;
        r.alpha = ex.cfg.multiplexing_gain;
        r.eta_hat = ex.cfg.delivery_param;
        r.beta = ex.cfg.per_tx_users;
        r.Q = ex.cfg.profiles_per_tx;
        r.strategy = ex.cfg.strategy;
        r.lengths = ex.lengths;
        return p;
    }
    r = resolve(g, f);
    const std::vector<int> lengths = lengths_of(r);
    r.lengths = lengths;
    const NetworkConfig cfg = validate_config(network_config(r, lengths)).get();
    return {cfg, association_from_lengths(lengths, cfg.delivery_param, cfg.per_tx_users)};
}

Json schedule_summary(const Schedule &s) {
    Json j;
    j["J_M"] = s.J_M;
    j["T_M"] = s.T_M;
    j["J_U"] = s.J_U;
    j["T_U"] = s.T_U;
    j["subpacketization"] = subpacketization(s.cfg);
    j["total_subpacketization"] = total_subpacketization(s.cfg);
    j["residual_log"] = s.residual_log.size();
    j["rerouted"] = s.rerouted_log.size();
    j["dropped_cc"] = s.dropped_cc;
    if (!s.transmissions.empty()) {
        const Rational dof = count_dof(s);
        j["dof"] = to_string(dof);
        j["dof_value"] = to_double(dof);
    }
    return j;
}

Json config_json(const NetworkConfig &c) {
    Json j;
    j["num_antennas"] = c.num_antennas;
    j["library_size"] = c.library_size;
    j["cache_files"] = c.cache_files;
    j["cache_ratio"] = to_string(c.cache_ratio);
    j["num_profiles"] = c.num_profiles;
    j["t_bar"] = c.t_bar;
    j["multiplexing_gain"] = c.multiplexing_gain;
    j["delivery_param"] = c.delivery_param;
    j["per_tx_users"] = c.per_tx_users;
    j["profiles_per_tx"] = c.profiles_per_tx;
    j["strategy"] = to_string(c.strategy);
    j["noise_power"] = c.noise_power;
    j["tx_power"] = c.tx_power;
    return j;
}

int cmd_schedule(const Globals &g, const NetFlags &f, int example, bool efficient,
                 const std::vector<std::string> &argv, std::ostream &out) {
    Resolved r;
    const Prepared p = prepare(g, f, example, r);
    Output o = open_output(g, "schedule", argv);
    o.sidecar["config"] = config_json(p.cfg);
    o.sidecar["lengths"] = r.lengths;
    o.sidecar["efficient_multicast"] = efficient;
    const Schedule s = full_schedule(validate_config(p.cfg), p.assoc, {efficient});
    o.table(schedule_table(s), "schedule");
    o.text("schedule_summary.json", schedule_summary(s).dump(2) + "\n");
    o.finish("schedule");
    out << "T_M=" << s.T_M << " T_U=" << s.T_U << " J_M=" << s.J_M << " J_U=" << s.J_U << "\n";
    return kExitOk;
}

Json stream_json(const Stream &s) {
    Json j;
    j["user"] = s.user;
    j["lambda"] = s.lambda;
    j["q"] = s.q;
    j["nulling_set"] = s.nulling_set;
    return j;
}

Json strategy_details(const Schedule &s) {
    Json d;
    const NetworkConfig &cfg = s.cfg;
    const Association &a = s.assoc;
    if (cfg.strategy == Strategy::A) {
        const auto windows = elevate_A(a);
        Json w = Json::object();
        for (int p = 1; p <= a.P(); ++p) w[std::to_string(p)] = windows[p - 1];
        d["windows"] = w;
        Json triples = Json::array();
        for (auto &tr : enumerate_triples(cfg, a))
            triples.push_back({{"r", tr.r}, {"c", tr.c}, {"l", tr.l}, {"silent", tr.silent}});
        d["triples"] = triples;
    } else {
        const QuintupleB first{1, 1, 1, 1, 1};
        d["Y_1"] = padded_profile(a, 1);
        d["E_1_1"] = e_users(cfg, a, 1, 1);
        d["P_bar_1"] = p_bar(a, 1);
        d["F"] = quintuple_profiles(cfg, a, first);
        d["B"] = b_tuples(cfg, a, first);
        const auto quintuples = enumerate_quintuples(cfg, a);
        d["active_quintuples"] = std::count_if(quintuples.begin(), quintuples.end(),
                                               [&](const QuintupleB &q) { return quintuple_active(cfg, a, q); });
    }
    Json txs = Json::array();
    for (std::size_t n = 0; n < s.transmissions.size() && n < 4; ++n) {
        const Transmission &tx = s.transmissions[n];
        Json t;
        t["kind"] = to_string(tx.kind);
        t["origin"] = tx.origin;
        t["sub_index"] = tx.sub_index;
        t["served_users"] = tx.served_users;
        Json streams = Json::array();
        for (auto &st : tx.streams) streams.push_back(stream_json(st));
        t["streams"] = streams;
        txs.push_back(t);
    }
    d["first_transmissions"] = txs;
    return d;
}

int cmd_verify(const Globals &g, const NetFlags &f, int example, bool efficient,
               const std::vector<std::string> &argv, std::ostream &out) {
    Resolved r;
    const Prepared p = prepare(g, f, example, r);
    Output o = open_output(g, "verify", argv);
    o.sidecar["config"] = config_json(p.cfg);
    o.sidecar["lengths"] = r.lengths;
    o.sidecar["efficient_multicast"] = efficient;
    const Schedule s = full_schedule(validate_config(p.cfg), p.assoc, {efficient});
    const DecodeReport dec = decode_check(s);
    const CoverageReport cov = coverage_check(s);
    const Rational counted = count_dof(s);
    const Rational closed = dof_closed_form(p.cfg, p.assoc);
    const bool comparable = s.residual_log.empty() && !efficient;
    const bool ok = dec.ok() && cov.ok() && (!comparable || counted == closed);

    Json report;
    report["ok"] = ok;
    report["config"] = config_json(p.cfg);
    report["lengths"] = r.lengths;
    Json dj;
    dj["transmissions_checked"] = dec.transmissions_checked;
    Json viol = Json::array();
    for (auto &v : dec.violations)
        viol.push_back({{"kind", to_string(v.kind)}, {"tx_index", v.tx_index + 1}, {"user", v.user},
                        {"stream_index", v.stream_index}});
    dj["violations"] = viol;
    report["decode"] = dj;
    Json cj;
    cj["demanded"] = cov.demanded;
    cj["delivered"] = cov.delivered;
    cj["missing"] = cov.missing.size();
    cj["duplicates"] = cov.duplicates.size();
    cj["unexpected"] = cov.unexpected.size();
    report["coverage"] = cj;
    Json dof;
    dof["counted"] = to_string(counted);
    dof["closed_form"] = to_string(closed);
    dof["comparable"] = comparable;
    dof["equal"] = counted == closed;
    report["dof"] = dof;
    report["schedule"] = schedule_summary(s);
    report["details"] = strategy_details(s);
    o.text("verify.json", report.dump(2) + "\n");
    o.finish("verify");
    out << (ok ? "PASS" : "FAIL") << ": " << dec.violations.size() << " decode violations, "
        << cov.missing.size() + cov.duplicates.size() + cov.unexpected.size()
        << " coverage errors, DoF counted " << to_string(counted) << " closed form " << to_string(closed) << "\n";
    return ok ? kExitOk : kExitVerifyFailed;
}

struct RateFlags {
    std::string snr_list = "0,5,10,15,20,25,30";
    int trials = 60;
    std::uint64_t seed = 1;
    std::string baseline = "nocc";
    std::string sampler = "multinomial";
    std::string strategy = "A";
    bool efficient = false;
};

int cmd_rate(const Globals &g, NetFlags f, const RateFlags &rf, const std::vector<std::string> &argv,
             std::ostream &out) {
    const std::vector<double> snr = parse_double_list(rf.snr_list, "--snr-list");
    const StrategyChoice choice = parse_strategy_choice(rf.strategy);
    const Baseline baseline = parse_baseline(rf.baseline);
    f.strategy.clear();
    const Resolved r = resolve(g, f);
    StudyParams sp;
    sp.K = r.K;
    sp.L = r.L;
    sp.P = r.P;
    sp.gamma = r.gamma;
    sp.alpha = r.alpha;
    sp.eta_hat = r.eta_hat;
    sp.Q = r.Q;
    sp.strategy = choice;
    sp.sampler = parse_sampler(rf.sampler);
    sp.lengths = r.lengths;
    sp.efficient_multicast = rf.efficient;
    sp.N0 = r.N0;
    if (r.alpha > r.L) throw UsageError("alpha must not exceed L");

    Output o = open_output(g, "rate", argv);
    Json cfg = r.to_json();
    cfg["strategy"] = to_string(choice);
    o.sidecar["config"] = cfg;
    o.sidecar["seed"] = rf.seed;
    o.sidecar["trials"] = rf.trials;
    o.sidecar["snr_db"] = snr;
    o.sidecar["baseline"] = to_string(baseline);
    o.sidecar["sampler"] = r.lengths.empty() ? to_string(sp.sampler) : std::string("fixed");
    o.sidecar["efficient_multicast"] = rf.efficient;

    const StudyResult res = rate_study(sp, snr, rf.trials, rf.seed, baseline);
    Table t;
    t.columns = {"snr_db", "scheme", "mean_rate", "stderr", "trials"};
    for (auto &pt : res.points) t.add({pt.snr_db, pt.scheme, pt.report.mean, pt.report.stderr_, pt.report.trials});
    o.sidecar["strategy_fallbacks"] = res.strategy_fallbacks;
    o.table(t, "rate");
    if (o.format == Format::Csv)
        o.text("plot_rate.py", plot_script("rate.csv", "snr_db", {"mean_rate"}, "scheme", "SNR [dB]",
                                           "symmetric rate [bits/s/Hz]"));
    o.finish("rate");
    for (auto &pt : res.points)
        out << pt.snr_db << " dB  " << pt.scheme << "  " << pt.report.mean << " +- " << pt.report.stderr_ << "\n";
    return kExitOk;
}

struct TableConfig {
    std::string label;
    int P;
    Strategy strategy;
    int Q;
};

int cmd_compare(const Globals &g, const NetFlags &f, const std::string &which, int trials, std::uint64_t seed,
                const std::vector<std::string> &argv, std::ostream &out) {
    Output o = open_output(g, "compare", argv);
    o.sidecar["table"] = which;
    o.sidecar["trials"] = trials;
    o.sidecar["seed"] = seed;
    Table cmp;
    cmp.columns = {"scheme", "lengths", "alpha", "dof", "eta_hat", "Q", "strategy", "subpacketization",
                   "transmissions"};
    auto nocc_row = [&](const std::vector<int> &lengths, int alpha) {
        const int K = std::accumulate(lengths.begin(), lengths.end(), 0);
        cmp.add({"no-CC", join(lengths, ";"), alpha, nocc_dof(K, alpha), nullptr, nullptr, nullptr, nullptr,
                 nullptr});
    };

    if (which == "large" || which == "small") {
        const bool large = which == "large";
        const int alpha = large ? 9 : 2;
        const std::vector<TableConfig> configs =
            large ? std::vector<TableConfig>{{"P=5 A Q=2", 5, Strategy::A, 2},
                                             {"P=5 B Q=3", 5, Strategy::B, 3},
                                             {"P=10 A Q=5", 10, Strategy::A, 5}}
                  : std::vector<TableConfig>{{"P=5 Q=2", 5, Strategy::A, 2},
                                             {"P=10 Q=3", 10, Strategy::A, 3},
                                             {"P=15 Q=4", 15, Strategy::A, 4}};
        Table t;
        t.columns = {"metric"};
        std::vector<Json> dof_row{"Maximum Achievable DoF"}, sub_row{"Subpacketization"},
            tx_row{"Number of Transmissions"}, rate_row{"Rate at 20dB (bits/s/Hz)"};
        for (auto &c : configs) {
            t.columns.push_back(c.label);
            const Rational gamma(1, 5);
            const int eta = 30 / c.P;
            NetworkConfig cfg = make_config(10, gamma, c.P, alpha, eta);
            cfg.strategy = c.strategy;
            cfg.per_tx_users = c.strategy == Strategy::B ? eta : std::min(alpha, eta);
            cfg.profiles_per_tx = c.Q;
            cfg.tx_power = 100.0;
            const ValidatedConfig v = validate_config(cfg);
            const std::vector<int> lengths(c.P, eta);
            const Association a = association_from_lengths(lengths, eta, cfg.per_tx_users);
            const Schedule s = full_schedule(v, a);
            const Rational dof = count_dof(s);
            dof_row.push_back(to_double(dof));
            sub_row.push_back(total_subpacketization(cfg));
            tx_row.push_back(s.T_M + s.T_U);
            if (trials > 0) rate_row.push_back(symmetric_rate(s, cfg, {trials, seed}).mean);
            else rate_row.push_back(nullptr);
            cmp.add({c.label, join(lengths, ";"), alpha, to_double(dof), eta, c.Q, to_string(c.strategy),
                     total_subpacketization(cfg), s.T_M + s.T_U});
        }
        t.add(dof_row);
        t.add(sub_row);
        t.add(tx_row);
        t.add(rate_row);
        o.table(t, "table_" + which);
        nocc_row(std::vector<int>(5, 6), alpha);
    } else if (which == "existing") {
        const std::vector<std::pair<std::vector<int>, int>> cases{
            {{6, 6, 6, 6, 6}, 8}, {{9, 8, 6, 5, 2}, 8}, {{6, 6, 6, 6, 6}, 4}, {{9, 8, 6, 5, 2}, 4}};
        for (auto &[lengths, alpha] : cases) {
            const DofSearchResult best = dof_max_search(lengths, alpha, Rational(1, 5));
            cmp.add({"proposed", join(lengths, ";"), alpha, to_double(best.dof), best.eta_hat, best.Q,
                     to_string(best.strategy), nullptr, nullptr});
            nocc_row(lengths, alpha);
        }
    } else if (which.empty()) {
        Resolved r = resolve(g, f);
        const std::vector<int> lengths = lengths_of(r);
        const DofSearchResult best = dof_max_search(lengths, r.alpha, r.gamma);
        Json sub = nullptr;
        Json txs = nullptr;
        if (!best.nocc_fallback) {
            Resolved rb = r;
            rb.eta_hat = best.eta_hat;
            rb.Q = best.Q;
            rb.strategy = best.strategy;
            rb.beta = 0;
            const NetworkConfig cfg = validate_config(network_config(rb, lengths)).get();
            const Association a = association_from_lengths(lengths, cfg.delivery_param, cfg.per_tx_users);
            sub = total_subpacketization(cfg);
            const DofTerms d = dof_terms(cfg, a);
            txs = d.T_M + d.N_U;
        }
        cmp.add({"proposed", join(lengths, ";"), r.alpha, to_double(best.dof), best.eta_hat, best.Q,
                 best.nocc_fallback ? std::string("no-CC") : to_string(best.strategy), sub, txs});
        if (r.eta_hat > 0) {
            const NetworkConfig cfg = validate_config(network_config(r, lengths)).get();
            const Association a = association_from_lengths(lengths, cfg.delivery_param, cfg.per_tx_users);
            const DofTerms d = dof_terms(cfg, a);
            cmp.add({"given design", join(lengths, ";"), r.alpha, to_double(dof_closed_form(cfg, a)),
                     cfg.delivery_param, cfg.profiles_per_tx, to_string(cfg.strategy), total_subpacketization(cfg),
                     d.T_M + d.N_U});
        }
        nocc_row(lengths, r.alpha);
        o.sidecar["config"] = r.to_json();
    } else {
        throw UsageError("--table must be large, small or existing");
    }
    o.table(cmp, "compare");
    o.finish("compare");
    out << "wrote " << cmp.rows.size() << " comparison rows to " << o.dir.string() << "\n";
    return kExitOk;
}

void add_net_flags(CLI::App *app, NetFlags &f) {
    app->add_option("--K", f.K, "number of users (uniform split when --lengths is absent)");
    app->add_option("--L", f.L, "transmit antennas");
    app->add_option("--P", f.P, "caching profiles");
    app->add_option("--gamma", f.gamma, "cache ratio, e.g. 0.2 or 1/5");
    app->add_option("--alpha", f.alpha, "spatial multiplexing gain");
    app->add_option("--eta-hat", f.eta_hat, "delivery parameter (default: largest profile)");
    app->add_option("--beta", f.beta, "users per profile and transmission");
    app->add_option("--Q", f.Q, "profiles per transmission");
    app->add_option("--strategy", f.strategy, "A, B or auto");
    app->add_option("--lengths", f.lengths, "comma separated profile lengths");
    app->add_option("--N0", f.N0, "noise power");
    app->add_option("--PT", f.PT, "transmit power");
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"dyncache: coded caching schedules, verification and rate studies"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--out", g.out, "output directory");
    app.add_option("--format", g.format, "table format: csv or json");
    app.add_option("--config", g.config, "JSON or key = value file with NetworkConfig fields");

    NetFlags f;
    int example = 0;
    bool efficient = false;
    bool sweep = false;
    std::string mode = "sorted";
    RateFlags rf;
    std::string table;
    int cmp_trials = 2;
    std::uint64_t cmp_seed = 1;

    CLI::App *dof = app.add_subcommand("dof", "closed-form and maximum DoF");
    add_net_flags(dof, f);
    dof->add_flag("--sweep-sigma", sweep, "enumerate every association and aggregate by sigma");
    dof->add_option("--mode", mode, "association enumeration for the sweep: sorted or labeled");

    CLI::App *sched = app.add_subcommand("schedule", "dump a delivery schedule");
    add_net_flags(sched, f);
    sched->add_option("--example", example, "worked network 1 or 2");
    sched->add_flag("--efficient-multicast", efficient, "drop CC transmissions serving fewer than alpha users");

    CLI::App *ver = app.add_subcommand("verify", "check decodability, coverage and DoF of a schedule");
    add_net_flags(ver, f);
    ver->add_option("--example", example, "worked network 1 or 2");
    ver->add_flag("--efficient-multicast", efficient, "drop CC transmissions serving fewer than alpha users");

    CLI::App *rate = app.add_subcommand("rate", "symmetric rate versus SNR");
    NetFlags rate_net;
    rate->add_option("--K", rate_net.K, "number of users");
    rate->add_option("--L", rate_net.L, "transmit antennas");
    rate->add_option("--P", rate_net.P, "caching profiles");
    rate->add_option("--gamma", rate_net.gamma, "cache ratio");
    rate->add_option("--alpha", rate_net.alpha, "spatial multiplexing gain");
    rate->add_option("--eta-hat", rate_net.eta_hat, "delivery parameter (default: largest profile)");
    rate->add_option("--Q", rate_net.Q, "profiles per transmission");
    rate->add_option("--lengths", rate_net.lengths, "fixed association instead of random ones");
    rate->add_option("--N0", rate_net.N0, "noise power");
    rate->add_option("--strategy", rf.strategy, "A, B or auto");
    rate->add_option("--snr-list", rf.snr_list, "comma separated SNR values in dB");
    rate->add_option("--trials", rf.trials, "random associations (one channel draw per transmission each)");
    rate->add_option("--seed", rf.seed, "base seed");
    rate->add_option("--baseline", rf.baseline, "nocc, zf or none");
    rate->add_option("--sampler", rf.sampler, "association sampler: uniform or multinomial");
    rate->add_flag("--efficient-multicast", rf.efficient, "drop CC transmissions serving fewer than alpha users");

    CLI::App *cmp = app.add_subcommand("compare", "DoF comparison with the unicast baseline");
    add_net_flags(cmp, f);
    cmp->add_option("--table", table, "reproduce a stored table: large, small or existing");
    cmp->add_option("--trials", cmp_trials, "channel trials for the 20 dB rate row (0 skips it)");
    cmp->add_option("--seed", cmp_seed, "base seed");

    std::vector<std::string> argv{"dyncache"};
    argv.insert(argv.end(), args.begin(), args.end());
    std::vector<char *> cargs;
    for (auto &a : argv) cargs.push_back(a.data());
    try {
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "usage error: " << e.what() << "\nrun 'dyncache --help' for the list of options\n";
        return kExitUsage;
    }

    try {
        if (dof->parsed()) return cmd_dof(g, f, sweep, mode, argv, out);
        if (sched->parsed()) return cmd_schedule(g, f, example, efficient, argv, out);
        if (ver->parsed()) return cmd_verify(g, f, example, efficient, argv, out);
        if (rate->parsed()) return cmd_rate(g, rate_net, rf, argv, out);
        if (cmp->parsed()) return cmd_compare(g, f, table, cmp_trials, cmp_seed, argv, out);
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    err << "usage error: no subcommand\n";
    return kExitUsage;
}

int run(int argc, char **argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

} // namespace dyncache
