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

#include <iosfwd>
#include <string>
#include <vector>

#include "dyncache/model.hpp"
#include "dyncache/scheduler.hpp"
#include "dyncache/table.hpp"

namespace dyncache {

/// Exit codes of the command line driver.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand (dof, schedule, verify, rate, compare). args excludes
/// the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);
int run(int argc, char **argv);

/// Build identifier recorded in every sidecar.
std::string git_describe();

/// The two worked networks: P = 3, gamma = 1/3, alpha = 6, eta_hat = 4 and
/// lengths (5, 4, 3); number 1 uses Strategy A with beta = 3, number 2
/// Strategy B with beta = 4.
struct ExampleNetwork {
    NetworkConfig cfg;
    std::vector<int> lengths;
};
ExampleNetwork example_network(int which);

/// One row per stream: tx_index, kind, origin, sub_index, user, lambda, q,
/// nulling_set.
Table schedule_table(const Schedule &schedule);

/// Text forms used in tables: "1-3" for a mini-file, "2;3;10" for a user set.
std::string join(const std::vector<int> &values, const std::string &sep);

} // namespace dyncache
