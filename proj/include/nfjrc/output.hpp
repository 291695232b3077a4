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

#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace nfjrc {

/// File-system failure; the message carries the offending path.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ColumnKind { Real, Integer, Text, Boolean };

struct Column {
    std::string name;
    ColumnKind kind = ColumnKind::Real;
};

using Cell = std::variant<double, std::int64_t, std::string, bool>;

/// Record table with a fixed column order and per-column type.
class Table {
public:
    Table(std::string name, std::vector<Column> columns);

    const std::string &name() const { return name_; }
    const std::vector<Column> &columns() const { return columns_; }
    const std::vector<std::vector<Cell>> &rows() const { return rows_; }
    std::size_t size() const { return rows_.size(); }

    /// Throws std::invalid_argument on arity or type mismatch.
    void add_row(std::vector<Cell> row);

    /// Column index by name; throws std::out_of_range.
    std::size_t column(const std::string &name) const;
    double real(std::size_t row, const std::string &name) const;

private:
    std::string name_;
    std::vector<Column> columns_;
    std::vector<std::vector<Cell>> rows_;
};

/// Shortest round-trip text of v rounded to 9 significant digits; inf and
/// nan print as "inf", "-inf", "nan".
std::string format_real(double v);

/// Header row plus one line per record, '\n' line ends.
std::string to_csv(const Table &table);

/// Array of objects in column order. Reals go through format_real first, so
/// this equals the JSON of the parsed CSV. Non-finite reals become null.
nlohmann::ordered_json to_json(const Table &table);

/// Parse CSV text written by to_csv back into a table with the given schema.
Table parse_csv(const std::string &text, const std::string &name, const std::vector<Column> &columns);

enum class OutputFormat { Csv, Json };

/// Writes <dir>/<table name>.csv or .json and returns the path.
std::filesystem::path write_table(const Table &table, OutputFormat format, const std::filesystem::path &dir);

void write_text(const std::filesystem::path &path, const std::string &text);

inline constexpr const char *kToolVersion = "0.1.0";

struct RunManifest {
    std::string command;
    std::uint64_t seed = 0;
    std::string config_hash;
    std::vector<std::string> files;
    nlohmann::json config;
};

std::filesystem::path write_manifest(const RunManifest &manifest, const std::filesystem::path &dir);

} // namespace nfjrc
