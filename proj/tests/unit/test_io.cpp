// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors

#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "skidstack/io/csv.hpp"
#include "skidstack/io/hash.hpp"
#include "skidstack/io/ini.hpp"

using namespace skidstack::io;

TEST_CASE("csv writer/reader round-trip with full double precision") {
    namespace fs = std::filesystem;
    const auto path = (fs::temp_directory_path() / "skidstack_io_test.csv").string();
    {
        CsvWriter w(path, {"a", "b"});
        w.row({0.1, 1.0 / 3.0});
        w.row({-2.5e-17, 7.0});
    }
    const auto t = read_csv(path);
    REQUIRE(t.header.size() == 2);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.numeric_column("a")[0] == 0.1);
    CHECK(t.numeric_column("b")[0] == 1.0 / 3.0);
    CHECK(t.numeric_column("a")[1] == -2.5e-17);
    fs::remove(path);
}

TEST_CASE("ini parsing: sections, defaults, repeated keys, comments") {
    const char* text = R"(
# top comment
[scenario]
name = demo
zeta = 2.5
ok = true

[goals]
goal = -3.0, 6.0
goal = 3.0, 9.0
; trailing comment line
)";
    const auto ini = Ini::parse(text);
    CHECK(ini.get_string("scenario", "name", "x") == "demo");
    CHECK(ini.get_double("scenario", "zeta", 0.0) == 2.5);
    CHECK(ini.get_double("scenario", "missing", 9.5) == 9.5);
    CHECK(ini.get_bool("scenario", "ok", false));
    const auto goals = ini.get_all("goals", "goal");
    REQUIRE(goals.size() == 2);
    const auto xy = Ini::parse_number_list(goals[1]);
    REQUIRE(xy.size() == 2);
    CHECK(xy[0] == 3.0);
    CHECK(xy[1] == 9.0);
}

TEST_CASE("ini rejects malformed lines") {
    CHECK_THROWS(Ini::parse("[unclosed\n"));
    CHECK_THROWS(Ini::parse("[s]\nno_equals_here\n"));
    const auto ini = Ini::parse("[s]\nk = not_a_number\n");
    CHECK_THROWS(ini.get_double("s", "k", 0.0));
}

TEST_CASE("fnv1a is stable") {
    CHECK(hex64(fnv1a64("")) == "cbf29ce484222325");
    CHECK(fnv1a64("abc") != fnv1a64("abd"));
    CHECK(hex64(fnv1a64("abc")).size() == 16);
}

TEST_CASE("format_double round-trips through text") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, -7.25, 3.141592653589793}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}
