#include "sqd/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "sqd/linalg.hpp"

namespace sqd::csv {

namespace {

int significant_digits(std::string_view s) {
    int digits = 0;
    bool leading = true;
    for (char c : s) {
        if (c == 'e' || c == 'E') {
            break;
        }
        if (c < '0' || c > '9') {
            continue;
        }
        if (leading && c == '0') {
            continue;
        }
        leading = false;
        ++digits;
    }
    return digits;
}

} // namespace

std::string format_number(double v) {
    if (v == 0.0) {
        return "0"; // also folds -0
    }
    std::array<char, 64> buf;
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    std::string shortest(buf.data(), res.ptr);
    if (significant_digits(shortest) <= kSignificantDigits) {
        return shortest;
    }
    res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, kSignificantDigits);
    return {buf.data(), res.ptr};
}

std::string Table::render() const {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        out += (i == 0 ? "" : ",") + header[i];
    }
    out += '\n';
    for (const auto &row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i != 0) {
                out += ',';
            }
            out += format_number(row[i]);
        }
        out += '\n';
    }
    return out;
}

Table parse(const std::string &text) {
    Table t;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) {
            cells.push_back(cell);
        }
        if (first) {
            t.header = cells;
            first = false;
            continue;
        }
        std::vector<double> row;
        for (const auto &c : cells) {
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
            if (ec != std::errc() || ptr != c.data() + c.size()) {
                throw DomainError("csv: not a number: '" + c + "'");
            }
            row.push_back(v);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

void write_file(const std::filesystem::path &path, const std::string &contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw DomainError("cannot open '" + path.string() + "' for writing");
    }
    out << contents;
    out.close();
    if (!out) {
        throw DomainError("failed writing '" + path.string() + "'");
    }
}

} // namespace sqd::csv
