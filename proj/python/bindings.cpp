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

#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dyncache/analytics.hpp"
#include "dyncache/beamform.hpp"
#include "dyncache/errors.hpp"
#include "dyncache/placement.hpp"
#include "dyncache/scheduler.hpp"
#include "dyncache/simcli.hpp"
#include "dyncache/study.hpp"
#include "dyncache/verifier.hpp"

namespace py = pybind11;
using namespace dyncache;

namespace {

py::object fraction(const Rational &r) {
    static py::object Fraction = py::module_::import("fractions").attr("Fraction");
    return Fraction(r.numerator(), r.denominator());
}

Rational to_rational(const py::handle &value) {
    if (py::isinstance<py::str>(value)) return parse_rational(value.cast<std::string>());
    if (py::hasattr(value, "numerator") && py::hasattr(value, "denominator") && !py::isinstance<py::float_>(value))
        return Rational(value.attr("numerator").cast<std::int64_t>(), value.attr("denominator").cast<std::int64_t>());
    return parse_rational(py::str(value).cast<std::string>());
}

py::dict subpacket(const SubpacketId &id) {
    py::dict d;
    d["user"] = id.user;
    d["lambda"] = id.lambda;
    d["q"] = id.q;
    return d;
}

py::list subpackets(const std::vector<SubpacketId> &ids) {
    py::list out;
    for (auto &id : ids) out.append(subpacket(id));
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Shared-cache multi-antenna coded caching: schedules, DoF and beamforming";

    const py::object error = py::register_exception<Error>(m, "Error", PyExc_ValueError);
    py::register_exception<ConstraintViolation>(m, "ConstraintViolation", error);
    py::register_exception<NonIntegerTBar>(m, "NonIntegerTBar", error);
    py::register_exception<EmptyNetwork>(m, "EmptyNetwork", error);
    py::register_exception<DivByZero>(m, "DivByZero", error);
    py::register_exception<RankDeficiency>(m, "RankDeficiency", error);
    py::register_exception<UsageError>(m, "UsageError", error);

    py::enum_<Strategy>(m, "Strategy").value("A", Strategy::A).value("B", Strategy::B);
    py::enum_<TxKind>(m, "TxKind").value("CC_A", TxKind::CC_A).value("CC_B", TxKind::CC_B).value("UC", TxKind::UC);

    py::class_<NetworkConfig>(m, "NetworkConfig")
        .def(py::init<>())
        .def_readwrite("num_antennas", &NetworkConfig::num_antennas)
        .def_readwrite("library_size", &NetworkConfig::library_size)
        .def_readwrite("cache_files", &NetworkConfig::cache_files)
        .def_property(
            "cache_ratio", [](const NetworkConfig &c) { return fraction(c.cache_ratio); },
            [](NetworkConfig &c, const py::object &v) { c.cache_ratio = to_rational(v); })
        .def_readwrite("num_profiles", &NetworkConfig::num_profiles)
        .def_readwrite("t_bar", &NetworkConfig::t_bar)
        .def_readwrite("multiplexing_gain", &NetworkConfig::multiplexing_gain)
        .def_readwrite("delivery_param", &NetworkConfig::delivery_param)
        .def_readwrite("per_tx_users", &NetworkConfig::per_tx_users)
        .def_readwrite("profiles_per_tx", &NetworkConfig::profiles_per_tx)
        .def_readwrite("strategy", &NetworkConfig::strategy)
        .def_readwrite("noise_power", &NetworkConfig::noise_power)
        .def_readwrite("tx_power", &NetworkConfig::tx_power)
        .def("__repr__", [](const NetworkConfig &c) {
            std::ostringstream s;
            s << "NetworkConfig(L=" << c.num_antennas << ", P=" << c.num_profiles << ", gamma="
              << to_string(c.cache_ratio) << ", alpha=" << c.multiplexing_gain << ", eta_hat=" << c.delivery_param
              << ", beta=" << c.per_tx_users << ", Q=" << c.profiles_per_tx << ", strategy=" << to_string(c.strategy)
              << ")";
            return s.str();
        });

    m.def(
        "make_config",
        [](int L, const py::object &gamma, int P, int alpha, int eta_hat, int Q) {
            return make_config(L, to_rational(gamma), P, alpha, eta_hat, Q);
        },
        py::arg("L"), py::arg("gamma"), py::arg("P"), py::arg("alpha"), py::arg("eta_hat"), py::arg("Q") = 0,
        "Network with the default design for (gamma, alpha, eta_hat); Q > 0 overrides the profile count.");
    m.def(
        "validate_config", [](const NetworkConfig &c) { return validate_config(c).get(); },
        "Returns the config unchanged or raises ConstraintViolation.");

    py::class_<Association>(m, "Association")
        .def_readonly("eta", &Association::eta)
        .def_readonly("users", &Association::users)
        .def_readonly("served", &Association::served)
        .def_readonly("delta", &Association::delta)
        .def_readonly("excluded", &Association::excluded)
        .def_readonly("eta_hat", &Association::eta_hat)
        .def_readonly("beta", &Association::beta)
        .def_readonly("K", &Association::K)
        .def_readonly("K_M", &Association::K_M)
        .def_readonly("K_U", &Association::K_U)
        .def("profile", &Association::profile, py::arg("user"));
    m.def("association_from_lengths", &association_from_lengths, py::arg("lengths"), py::arg("eta_hat"),
          py::arg("beta"));
    m.def("sigma", &sigma, py::arg("lengths"), py::arg("P"));

    py::class_<Stream>(m, "Stream")
        .def_readonly("user", &Stream::user)
        .def_readonly("profile", &Stream::profile)
        .def_readonly("lambda_", &Stream::lambda)
        .def_readonly("q", &Stream::q)
        .def_readonly("nulling_set", &Stream::nulling_set);
    py::class_<Transmission>(m, "Transmission")
        .def_readonly("kind", &Transmission::kind)
        .def_readonly("origin", &Transmission::origin)
        .def_readonly("sub_index", &Transmission::sub_index)
        .def_readonly("streams", &Transmission::streams)
        .def_readonly("served_users", &Transmission::served_users);
    py::class_<Schedule>(m, "Schedule")
        .def_readonly("cfg", &Schedule::cfg)
        .def_readonly("assoc", &Schedule::assoc)
        .def_readonly("transmissions", &Schedule::transmissions)
        .def_readonly("J_M", &Schedule::J_M)
        .def_readonly("T_M", &Schedule::T_M)
        .def_readonly("J_U", &Schedule::J_U)
        .def_readonly("T_U", &Schedule::T_U)
        .def_readonly("dropped_cc", &Schedule::dropped_cc)
        .def_property_readonly("residual_log", [](const Schedule &s) { return subpackets(s.residual_log); })
        .def("__len__", [](const Schedule &s) { return s.transmissions.size(); });

    m.def(
        "full_schedule",
        [](const NetworkConfig &cfg, const Association &a, bool efficient) {
            return full_schedule(validate_config(cfg), a, {efficient});
        },
        py::arg("cfg"), py::arg("assoc"), py::arg("efficient_multicast") = false);
    m.def(
        "nocc_schedule", [](const NetworkConfig &cfg, const Association &a) { return nocc_schedule(validate_config(cfg), a); },
        py::arg("cfg"), py::arg("assoc"));
    m.def("subpacketization", py::overload_cast<const NetworkConfig &>(&subpacketization), py::arg("cfg"));
    m.def("total_subpacketization", &total_subpacketization, py::arg("cfg"));

    m.def(
        "decode_check",
        [](const Schedule &s) {
            const DecodeReport r = decode_check(s);
            py::list v;
            for (auto &x : r.violations) {
                py::dict d;
                d["kind"] = to_string(x.kind);
                d["tx_index"] = x.tx_index;
                d["user"] = x.user;
                d["stream_index"] = x.stream_index;
                v.append(d);
            }
            py::dict d;
            d["ok"] = r.ok();
            d["violations"] = v;
            d["transmissions_checked"] = r.transmissions_checked;
            return d;
        },
        py::arg("schedule"));
    m.def(
        "coverage_check",
        [](const Schedule &s) {
            const CoverageReport r = coverage_check(s);
            py::dict d;
            d["ok"] = r.ok();
            d["demanded"] = r.demanded;
            d["delivered"] = r.delivered;
            d["missing"] = subpackets(r.missing);
            d["duplicates"] = subpackets(r.duplicates);
            d["unexpected"] = subpackets(r.unexpected);
            return d;
        },
        py::arg("schedule"));
    m.def("count_dof", [](const Schedule &s) { return fraction(count_dof(s)); }, py::arg("schedule"));

    m.def(
        "dof_closed_form", [](const NetworkConfig &c, const Association &a) { return fraction(dof_closed_form(c, a)); },
        py::arg("cfg"), py::arg("assoc"));
    m.def(
        "dof_max_search",
        [](const std::vector<int> &lengths, int alpha, const py::object &gamma) {
            const DofSearchResult r = dof_max_search(lengths, alpha, to_rational(gamma));
            py::dict d;
            d["dof"] = fraction(r.dof);
            d["raw_dof"] = fraction(r.raw_dof);
            d["eta_hat"] = r.eta_hat;
            d["Q"] = r.Q;
            d["strategy"] = r.strategy;
            d["nocc_fallback"] = r.nocc_fallback;
            return d;
        },
        py::arg("lengths"), py::arg("alpha"), py::arg("gamma"));
    m.def("nocc_dof", &nocc_dof, py::arg("K"), py::arg("alpha"));
    m.def("lemma1", &lemma1, py::arg("P"), py::arg("Q"));
    m.def(
        "dof_m_average",
        [](int K, int P, int alpha, const py::object &gamma, bool labeled) {
            py::list out;
            for (auto &b : dof_m_average(K, P, alpha, to_rational(gamma),
                                         labeled ? EnumerationMode::Labeled : EnumerationMode::Sorted)) {
                py::dict d;
                d["sigma"] = b.sigma;
                d["dof_m"] = b.dof_m;
                d["count"] = b.count;
                out.append(d);
            }
            return out;
        },
        py::arg("K"), py::arg("P"), py::arg("alpha"), py::arg("gamma"), py::arg("labeled") = false);

    py::class_<BeamSolution>(m, "BeamSolution")
        .def_readonly("w", &BeamSolution::w)
        .def_readonly("powers", &BeamSolution::powers)
        .def_readonly("sinr", &BeamSolution::sinr)
        .def_readonly("lambdas", &BeamSolution::lambdas)
        .def_readonly("target_rate", &BeamSolution::target_rate)
        .def_readonly("min_weighted_rate", &BeamSolution::min_weighted_rate)
        .def_readonly("min_rate", &BeamSolution::min_rate)
        .def_readonly("bisection_steps", &BeamSolution::bisection_steps);

    m.def(
        "draw_channels",
        [](const std::vector<int> &users, int L, std::uint64_t seed) { return draw_channels(users, L, seed).h; },
        py::arg("users"), py::arg("L"), py::arg("seed"), "i.i.d. CN(0, I) channel vectors keyed by user id.");
    auto channel_set = [](const std::map<int, CVector> &h) {
        ChannelSet ch;
        ch.h = h;
        ch.L = h.empty() ? 0 : static_cast<int>(h.begin()->second.size());
        return ch;
    };
    m.def(
        "maxmin_solve",
        [channel_set](const Transmission &tx, const std::map<int, CVector> &h, double mu, double P_T, double N0) {
            return maxmin_solve(tx, channel_set(h), mu, P_T, N0);
        },
        py::arg("tx"), py::arg("channels"), py::arg("mu") = 1.0, py::arg("P_T") = 1.0, py::arg("N0") = 1.0);
    m.def(
        "zf_precoders",
        [channel_set](const Transmission &tx, const std::map<int, CVector> &h, double P_T, double N0) {
            return zf_precoders(tx, channel_set(h), P_T, N0);
        },
        py::arg("tx"), py::arg("channels"), py::arg("P_T") = 1.0, py::arg("N0") = 1.0);
    m.def(
        "symmetric_rate",
        [](const Schedule &s, int trials, std::uint64_t seed, bool zero_forcing) {
            RateOptions o;
            o.trials = trials;
            o.seed = seed;
            o.precoder = zero_forcing ? Precoder::ZeroForcing : Precoder::Optimized;
            const RateReport r = symmetric_rate(s, s.cfg, o);
            return py::make_tuple(r.mean, r.stderr_);
        },
        py::arg("schedule"), py::arg("trials") = 1, py::arg("seed") = 1, py::arg("zero_forcing") = false,
        "(mean, standard error) of the symmetric rate at the schedule's tx_power.");

    m.def(
        "run_cli",
        [](const std::vector<std::string> &args) {
            std::ostringstream out, err;
            const int code = run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs one command line invocation in process; returns (exit_code, stdout, stderr).");
}
