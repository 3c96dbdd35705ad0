// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors

#include "skidstack/io/csv.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace skidstack::io {

std::string format_double(double value) {
    char buf[40];
    // %.17g round-trips any finite double.
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : out_(path) {
    if (!out_) {
        throw std::runtime_error("CsvWriter: cannot open " + path);
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out_ << ',';
        out_ << header[i];
    }
    out_ << '\n';
}

CsvWriter::~CsvWriter() = default;

void CsvWriter::row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out_ << ',';
        out_ << format_double(values[i]);
    }
    out_ << '\n';
    ++rows_;
}

void CsvWriter::row_mixed(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << cells[i];
    }
    out_ << '\n';
    ++rows_;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

}  // namespace

int CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return static_cast<int>(i);
    }
    return -1;
}

std::vector<double> CsvTable::numeric_column(const std::string& name) const {
    const int idx = column(name);
    if (idx < 0) {
        throw std::runtime_error("CsvTable: no column named " + name);
    }
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        out.push_back(std::stod(r.at(static_cast<std::size_t>(idx))));
    }
    return out;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("read_csv: cannot open " + path);
    }
    CsvTable table;
    std::string line;
    if (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        table.header = split_line(line);
    }
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        table.rows.push_back(split_line(line));
    }
    return table;
}

}  // namespace skidstack::io
