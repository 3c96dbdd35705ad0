// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors
//
// Sectioned key-value config files: `[section]` headers, `key = value`
// lines, `#`/`;` comments. Repeated keys are kept in order, which is how
// goal sequences are written.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace skidstack::io {

class Ini {
public:
    static Ini load(const std::string& path);
    static Ini parse(const std::string& text);

    [[nodiscard]] bool has(const std::string& section, const std::string& key) const;
    [[nodiscard]] std::optional<std::string> get(const std::string& section,
                                                 const std::string& key) const;
    [[nodiscard]] std::string get_string(const std::string& section, const std::string& key,
                                         const std::string& fallback) const;
    [[nodiscard]] double get_double(const std::string& section, const std::string& key,
                                    double fallback) const;
    [[nodiscard]] long get_int(const std::string& section, const std::string& key,
                               long fallback) const;
    [[nodiscard]] bool get_bool(const std::string& section, const std::string& key,
                                bool fallback) const;

    /// All values recorded for a repeated key, in file order.
    [[nodiscard]] std::vector<std::string> get_all(const std::string& section,
                                                   const std::string& key) const;

    /// Parses "a, b, c" into doubles.
    static std::vector<double> parse_number_list(const std::string& text);

private:
    struct Entry {
        std::string section;
        std::string key;
        std::string value;
    };
    std::vector<Entry> entries_;
};

}  // namespace skidstack::io
