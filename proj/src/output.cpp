// SPDX-License-Identifier: Apache-2.0
//
// nfjrc: near-field joint radar and communication link simulator
// Copyright (C) 2026 The nfjrc authors
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

#include "nfjrc/output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

namespace nfjrc {

Table::Table(std::string name, std::vector<Column> columns) : name_(std::move(name)), columns_(std::move(columns))
{
    if (columns_.empty())
        throw std::invalid_argument("Table: need at least one column");
}

namespace {

bool cell_matches(const Cell &c, ColumnKind kind)
{
    switch (kind) {
    case ColumnKind::Real:
        return std::holds_alternative<double>(c);
    case ColumnKind::Integer:
        return std::holds_alternative<std::int64_t>(c);
    case ColumnKind::Text:
        return std::holds_alternative<std::string>(c);
    case ColumnKind::Boolean:
        return std::holds_alternative<bool>(c);
    }
    return false;
}

} // namespace

void Table::add_row(std::vector<Cell> row)
{
    if (row.size() != columns_.size())
        throw std::invalid_argument("Table " + name_ + ": row has " + std::to_string(row.size()) + " cells, expected " +
                                    std::to_string(columns_.size()));
    for (std::size_t i = 0; i < row.size(); ++i)
        if (!cell_matches(row[i], columns_[i].kind))
            throw std::invalid_argument("Table " + name_ + ": wrong type in column " + columns_[i].name);
    rows_.push_back(std::move(row));
}

std::size_t Table::column(const std::string &name) const
{
    for (std::size_t i = 0; i < columns_.size(); ++i)
        if (columns_[i].name == name)
            return i;
    throw std::out_of_range("Table " + name_ + ": no column " + name);
}

double Table::real(std::size_t row, const std::string &name) const
{
    return std::get<double>(rows_.at(row).at(column(name)));
}

std::string format_real(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    // round to 9 significant digits, then print the shortest text for that value
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 8);
    double rounded = 0.0;
    std::from_chars(buf, r.ptr, rounded);
    if (rounded == 0.0)
        rounded = 0.0;  // drop the sign of -0
    r = std::to_chars(buf, buf + sizeof buf, rounded);
    return std::string(buf, r.ptr);
}

namespace {

std::string quote_text(const std::string &s)
{
    if (s.find_first_of(",\"\n\r") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

std::string cell_text(const Cell &c)
{
    if (const auto *d = std::get_if<double>(&c))
        return format_real(*d);
    if (const auto *i = std::get_if<std::int64_t>(&c))
        return std::to_string(*i);
    if (const auto *b = std::get_if<bool>(&c))
        return *b ? "true" : "false";
    return quote_text(std::get<std::string>(c));
}

nlohmann::ordered_json cell_json(const Cell &c)
{
    if (const auto *d = std::get_if<double>(&c)) {
        if (!std::isfinite(*d))
            return nullptr;
        const std::string text = format_real(*d);
        double v = 0.0;
        std::from_chars(text.data(), text.data() + text.size(), v);
        return v;
    }
    if (const auto *i = std::get_if<std::int64_t>(&c))
        return *i;
    if (const auto *b = std::get_if<bool>(&c))
        return *b;
    return std::get<std::string>(c);
}

} // namespace

std::string to_csv(const Table &table)
{
    std::string out;
    for (std::size_t i = 0; i < table.columns().size(); ++i) {
        if (i)
            out += ',';
        out += table.columns()[i].name;
    }
    out += '\n';
    for (const auto &row : table.rows()) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i)
                out += ',';
            out += cell_text(row[i]);
        }
        out += '\n';
    }
    return out;
}

nlohmann::ordered_json to_json(const Table &table)
{
    auto arr = nlohmann::ordered_json::array();
    for (const auto &row : table.rows()) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i)
            obj[table.columns()[i].name] = cell_json(row[i]);
        arr.push_back(std::move(obj));
    }
    return arr;
}

namespace {

std::vector<std::vector<std::string>> split_csv(const std::string &text)
{
    std::vector<std::vector<std::string>> lines;
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    bool any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        if (c == '"') {
            quoted = true;
            any = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
            any = true;
        } else if (c == '\n') {
            fields.push_back(std::move(field));
            field.clear();
            lines.push_back(std::move(fields));
            fields.clear();
            any = false;
        } else if (c != '\r') {
            field += c;
            any = true;
        }
    }
    if (quoted)
        throw std::invalid_argument("parse_csv: unterminated quote");
    if (any) {
        fields.push_back(std::move(field));
        lines.push_back(std::move(fields));
    }
    return lines;
}

Cell parse_cell(const std::string &s, const Column &col)
{
    auto bad = [&] { return std::invalid_argument("parse_csv: column " + col.name + ": cannot parse '" + s + "'"); };
    switch (col.kind) {
    case ColumnKind::Real: {
        if (s == "nan")
            return std::numeric_limits<double>::quiet_NaN();
        if (s == "inf")
            return std::numeric_limits<double>::infinity();
        if (s == "-inf")
            return -std::numeric_limits<double>::infinity();
        double v = 0.0;
        const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
        if (r.ec != std::errc() || r.ptr != s.data() + s.size())
            throw bad();
        return v;
    }
    case ColumnKind::Integer: {
        std::int64_t v = 0;
        const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
        if (r.ec != std::errc() || r.ptr != s.data() + s.size())
            throw bad();
        return v;
    }
    case ColumnKind::Boolean:
        if (s == "true")
            return true;
        if (s == "false")
            return false;
        throw bad();
    case ColumnKind::Text:
        return s;
    }
    throw bad();
}

} // namespace

Table parse_csv(const std::string &text, const std::string &name, const std::vector<Column> &columns)
{
    const auto lines = split_csv(text);
    if (lines.empty())
        throw std::invalid_argument("parse_csv: missing header");
    const auto &header = lines.front();
    if (header.size() != columns.size())
        throw std::invalid_argument("parse_csv: header does not match the schema");
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] != columns[i].name)
            throw std::invalid_argument("parse_csv: expected column " + columns[i].name + ", found " + header[i]);

    Table table(name, columns);
    for (std::size_t l = 1; l < lines.size(); ++l) {
        if (lines[l].size() != columns.size())
            throw std::invalid_argument("parse_csv: line " + std::to_string(l + 1) + " has the wrong field count");
        std::vector<Cell> row;
        row.reserve(columns.size());
        for (std::size_t i = 0; i < columns.size(); ++i)
            row.push_back(parse_cell(lines[l][i], columns[i]));
        table.add_row(std::move(row));
    }
    return table;
}

void write_text(const std::filesystem::path &path, const std::string &text)
{
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec)
            throw IoError(path.parent_path().string() + ": cannot create directory: " + ec.message());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError(path.string() + ": cannot open for writing");
    out << text;
    out.flush();
    if (!out)
        throw IoError(path.string() + ": write failed");
}

std::filesystem::path write_table(const Table &table, OutputFormat format, const std::filesystem::path &dir)
{
    const bool csv = format == OutputFormat::Csv;
    const auto path = dir / (table.name() + (csv ? ".csv" : ".json"));
    write_text(path, csv ? to_csv(table) : to_json(table).dump(2) + "\n");
    return path;
}

std::filesystem::path write_manifest(const RunManifest &manifest, const std::filesystem::path &dir)
{
    nlohmann::ordered_json j;
    j["tool"] = "jrc_sim";
    j["version"] = kToolVersion;
    j["command"] = manifest.command;
    j["seed"] = manifest.seed;
    j["config_hash"] = manifest.config_hash;
    j["files"] = manifest.files;
    j["config"] = manifest.config;
    const auto path = dir / "manifest.json";
    write_text(path, j.dump(2) + "\n");
    return path;
}

} // namespace nfjrc
