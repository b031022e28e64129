#pragma once

#include <cstdio>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "feedwatch/error.hpp"

namespace feedwatch {

/// Format a double with 17 significant digits (round-trip exact).
inline std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

/// Format a double with 4 significant digits (human-facing reports).
inline std::string format_g4(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", x);
    return buf;
}

/// Split one CSV line on commas. No quoting: fields must not contain commas.
std::vector<std::string_view> split_csv_line(std::string_view line);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace feedwatch
