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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "nfjrc/output.hpp"

using namespace nfjrc;

namespace {

std::vector<Column> schema()
{
    return {{"x", ColumnKind::Real}, {"n", ColumnKind::Integer}, {"label", ColumnKind::Text}, {"ok", ColumnKind::Boolean}};
}

std::string slurp(const std::filesystem::path &p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("real formatting")
{
    CHECK(format_real(0.1) == "0.1");
    CHECK(format_real(1.0 / 3.0) == "0.333333333");
    CHECK(format_real(-0.0) == "0");
    CHECK(format_real(1e-300) == "1e-300");
    CHECK(format_real(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_real(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(format_real(std::nan("")) == "nan");
    CHECK(format_real(123456789012.0) == "123456789000");
}

TEST_CASE("empty table has only a header")
{
    const Table t("empty", schema());
    CHECK(to_csv(t) == "x,n,label,ok\n");
    CHECK(to_json(t).dump() == "[]");
    CHECK(parse_csv(to_csv(t), "empty", schema()).size() == 0);
}

TEST_CASE("CSV round trip and JSON equivalence")
{
    Table t("demo", schema());
    t.add_row({0.1, std::int64_t{3}, std::string("plain"), true});
    t.add_row({-2.5e-7, std::int64_t{-4}, std::string("with, comma \"q\""), false});
    t.add_row({std::numeric_limits<double>::infinity(), std::int64_t{0}, std::string(""), true});
    const std::string csv = to_csv(t);
    const Table back = parse_csv(csv, "demo", schema());
    CHECK(to_csv(back) == csv);
    CHECK(to_json(back) == to_json(t));
    CHECK(to_json(t)[2]["x"].is_null());
    CHECK(to_json(t)[1]["label"] == "with, comma \"q\"");
    CHECK(t.real(0, "x") == 0.1);
}

TEST_CASE("row checks")
{
    Table t("demo", schema());
    CHECK_THROWS_AS(t.add_row({0.1}), std::invalid_argument);
    CHECK_THROWS_AS(t.add_row({std::int64_t{1}, std::int64_t{3}, std::string("a"), true}), std::invalid_argument);
    CHECK_THROWS_AS(t.column("missing"), std::out_of_range);
    CHECK_THROWS_AS(parse_csv("x,n\n", "demo", schema()), std::invalid_argument);
    CHECK_THROWS_AS(parse_csv("x,n,label,ok\nfoo,1,a,true\n", "demo", schema()), std::invalid_argument);
}

TEST_CASE("file output")
{
    const auto dir = std::filesystem::temp_directory_path() / "nfjrc_output_test";
    std::filesystem::remove_all(dir);
    Table t("demo", schema());
    t.add_row({1.5, std::int64_t{2}, std::string("a"), false});
    const auto csv = write_table(t, OutputFormat::Csv, dir);
    CHECK(csv.filename() == "demo.csv");
    CHECK(slurp(csv) == to_csv(t));
    const auto js = write_table(t, OutputFormat::Json, dir);
    CHECK(nlohmann::ordered_json::parse(slurp(js)) == to_json(t));

    RunManifest m{"optimize", 5, "0123456789abcdef", {"demo.csv"}, nlohmann::json::object()};
    const auto mp = write_manifest(m, dir);
    const auto mj = nlohmann::json::parse(slurp(mp));
    CHECK(mj["command"] == "optimize");
    CHECK(mj["seed"] == 5);
    CHECK(mj["version"] == kToolVersion);

    // a regular file where the directory should be
    const auto blocker = dir / "blocker";
    std::ofstream(blocker) << "x";
    CHECK_THROWS_AS(write_table(t, OutputFormat::Csv, blocker / "sub"), IoError);
    std::filesystem::remove_all(dir);
}
