// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace skidstack::io {

/// Formats a double with enough digits to round-trip exactly through text.
std::string format_double(double value);

/// Minimal append-only CSV writer. One row per call, flushed on close.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);
    ~CsvWriter();

    void row(const std::vector<double>& values);
    void row_mixed(const std::vector<std::string>& cells);
    [[nodiscard]] std::size_t rows_written() const { return rows_; }

private:
    std::ofstream out_;
    std::size_t rows_ = 0;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    [[nodiscard]] int column(const std::string& name) const;  // -1 when absent
    [[nodiscard]] std::vector<double> numeric_column(const std::string& name) const;
};

/// Reads a whole CSV file (header expected on the first line).
CsvTable read_csv(const std::string& path);

}  // namespace skidstack::io
