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

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace dyncache {

using Json = nlohmann::ordered_json;

/// Rectangular result set with a fixed column order. Cells are JSON scalars so
/// one table renders both as CSV and as a JSON array of objects.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Json>> rows;

    void add(std::vector<Json> row);
};

enum class Format { Csv, Json };
Format parse_format(const std::string &text);
std::string extension(Format f);

/// RFC 4180 rendering: CRLF line ends, fields quoted when they hold a comma,
/// quote, CR or LF.
std::string to_csv(const Table &table);

/// Array of objects keyed by column name, in column order.
Json to_json(const Table &table);

/// Inverse of to_json for tables whose rows all carry every column.
Table table_from_json(const Json &array);

/// Cell text used by the CSV writer.
std::string cell_text(const Json &cell);

/// Writes the table. Throws UsageError for an empty table (nothing is
/// created) and IoError when the file cannot be written.
void emit_table(const Table &table, Format format, const std::filesystem::path &path);

/// Writes text to a file, throwing IoError on failure.
void write_text(const std::filesystem::path &path, const std::string &text);

} // namespace dyncache
