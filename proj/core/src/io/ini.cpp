// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors

#include "skidstack/io/ini.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace skidstack::io {

namespace {

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

Ini Ini::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("Ini: cannot open " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

Ini Ini::parse(const std::string& text) {
    Ini ini;
    std::string section;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw std::runtime_error("Ini: malformed section header at line " +
                                         std::to_string(lineno));
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("Ini: expected key = value at line " +
                                     std::to_string(lineno));
        }
        Entry e;
        e.section = section;
        e.key = trim(line.substr(0, eq));
        e.value = trim(line.substr(eq + 1));
        ini.entries_.push_back(std::move(e));
    }
    return ini;
}

bool Ini::has(const std::string& section, const std::string& key) const {
    return get(section, key).has_value();
}

std::optional<std::string> Ini::get(const std::string& section,
                                    const std::string& key) const {
    for (const auto& e : entries_) {
        if (e.section == section && e.key == key) return e.value;
    }
    return std::nullopt;
}

std::string Ini::get_string(const std::string& section, const std::string& key,
                            const std::string& fallback) const {
    auto v = get(section, key);
    return v ? *v : fallback;
}

double Ini::get_double(const std::string& section, const std::string& key,
                       double fallback) const {
    auto v = get(section, key);
    if (!v) return fallback;
    try {
        return std::stod(*v);
    } catch (const std::exception&) {
        throw std::runtime_error("Ini: [" + section + "] " + key + " is not a number: " + *v);
    }
}

long Ini::get_int(const std::string& section, const std::string& key,
                  long fallback) const {
    auto v = get(section, key);
    if (!v) return fallback;
    try {
        return std::stol(*v);
    } catch (const std::exception&) {
        throw std::runtime_error("Ini: [" + section + "] " + key + " is not an integer: " + *v);
    }
}

bool Ini::get_bool(const std::string& section, const std::string& key,
                   bool fallback) const {
    auto v = get(section, key);
    if (!v) return fallback;
    std::string s = *v;
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    throw std::runtime_error("Ini: [" + section + "] " + key + " is not a boolean: " + *v);
}

std::vector<std::string> Ini::get_all(const std::string& section,
                                      const std::string& key) const {
    std::vector<std::string> out;
    for (const auto& e : entries_) {
        if (e.section == section && e.key == key) out.push_back(e.value);
    }
    return out;
}

std::vector<double> Ini::parse_number_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        cell = trim(cell);
        if (cell.empty()) continue;
        out.push_back(std::stod(cell));
    }
    return out;
}

}  // namespace skidstack::io
