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
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace dyncache {

using Rational = boost::rational<std::int64_t>;

/// "p/q", or just "p" when q == 1.
std::string to_string(const Rational &r);

double to_double(const Rational &r);

/// Accepts "3", "1/5", "0.2" or "-1.25". Decimals are converted exactly.
Rational parse_rational(std::string_view text);

/// Smallest integer >= r.
std::int64_t ceil(const Rational &r);

/// Largest integer <= r.
std::int64_t floor(const Rational &r);

} // namespace dyncache
