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

#include "dyncache/rational.hpp"

#include <cctype>
#include <string>

#include "dyncache/errors.hpp"

namespace dyncache {

std::string to_string(const Rational &r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Rational &r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
    if (s.empty()) throw UsageError("not a number: '" + std::string(whole) + "'");
    std::int64_t v = 0;
    for (char ch : s) {
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw UsageError("not a number: '" + std::string(whole) + "'");
        v = v * 10 + (ch - '0');
        if (v > (std::int64_t{1} << 50)) throw UsageError("number too large: '" + std::string(whole) + "'");
    }
    return v;
}

} // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::int64_t num = parse_int(s.substr(0, slash), text);
        std::int64_t den = parse_int(s.substr(slash + 1), text);
        if (den == 0) throw UsageError("zero denominator: '" + std::string(text) + "'");
        value = Rational(num, den);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = s.substr(0, dot);
        std::string_view frac_part = s.substr(dot + 1);
        if (frac_part.size() > 15) throw UsageError("too many decimals: '" + std::string(text) + "'");
        std::int64_t scale = 1;
        for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
        std::int64_t ip = int_part.empty() ? 0 : parse_int(int_part, text);
        std::int64_t fp = frac_part.empty() ? 0 : parse_int(frac_part, text);
        if (int_part.empty() && frac_part.empty())
            throw UsageError("not a number: '" + std::string(text) + "'");
        value = Rational(ip * scale + fp, scale);
    } else {
        value = Rational(parse_int(s, text));
    }
    return negative ? -value : value;
}

std::int64_t floor(const Rational &r) {
    std::int64_t q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
    return q;
}

std::int64_t ceil(const Rational &r) {
    std::int64_t q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && r.numerator() > 0) ++q;
    return q;
}

} // namespace dyncache
