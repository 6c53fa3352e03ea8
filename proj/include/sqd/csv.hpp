#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace sqd::csv {

inline constexpr int kSignificantDigits = 12;

/// Shortest round-trip representation, capped at 12 significant digits.
std::string format_number(double v);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    /// Comma separated, LF line endings, one row per line.
    [[nodiscard]] std::string render() const;
};

Table parse(const std::string &text);

/// Throws DomainError if the file cannot be written.
void write_file(const std::filesystem::path &path, const std::string &contents);

} // namespace sqd::csv
