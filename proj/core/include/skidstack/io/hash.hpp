// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors

#pragma once

#include <cstdint>
#include <string>

namespace skidstack::io {

/// FNV-1a 64-bit over a byte string.
[[nodiscard]] inline std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

[[nodiscard]] std::string hex64(std::uint64_t value);

/// Reads a whole file into a string. Throws std::runtime_error when missing.
[[nodiscard]] std::string read_file(const std::string& path);

}  // namespace skidstack::io
