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

#include "dyncache/table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "dyncache/errors.hpp"

namespace dyncache {

void Table::add(std::vector<Json> row) {
    if (row.size() != columns.size()) throw Error("row width does not match the column count");
    rows.push_back(std::move(row));
}

Format parse_format(const std::string &text) {
    if (text == "csv") return Format::Csv;
    if (text == "json") return Format::Json;
    throw UsageError("format must be csv or json, got '" + text + "'");
}

std::string extension(Format f) { return f == Format::Csv ? ".csv" : ".json"; }

std::string cell_text(const Json &cell) {
    if (cell.is_string()) return cell.get<std::string>();
    if (cell.is_null()) return "";
    if (cell.is_number_float()) {
        const double v = cell.get<double>();
        if (!std::isfinite(v)) return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.10g", v);
        return buf;
    }
    return cell.dump();
}

namespace {

std::string quote(const std::string &field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

std::string to_csv(const Table &table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) out += (c ? "," : "") + quote(table.columns[c]);
    out += "\r\n";
    for (auto &row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + quote(cell_text(row[c]));
        out += "\r\n";
    }
    return out;
}

Json to_json(const Table &table) {
    Json array = Json::array();
    for (auto &row : table.rows) {
        Json obj = Json::object();
        for (std::size_t c = 0; c < row.size(); ++c) obj[table.columns[c]] = row[c];
        array.push_back(std::move(obj));
    }
    return array;
}

Table table_from_json(const Json &array) {
    Table t;
    if (!array.is_array()) throw Error("table JSON must be an array");
    for (auto &obj : array) {
        if (t.columns.empty())
            for (auto it = obj.begin(); it != obj.end(); ++it) t.columns.push_back(it.key());
        std::vector<Json> row;
        for (auto &c : t.columns) row.push_back(obj.at(c));
        t.rows.push_back(std::move(row));
    }
    return t;
}

void write_text(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void emit_table(const Table &table, Format format, const std::filesystem::path &path) {
    if (table.rows.empty()) throw UsageError("no rows to write to '" + path.string() + "'");
    write_text(path, format == Format::Csv ? to_csv(table) : to_json(table).dump(2) + "\n");
}

} // namespace dyncache
