#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mprtrack {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// 12 significant digits, '.' decimal separator.
inline std::string format_cell(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

inline std::string to_csv(const CsvTable& table) {
    std::string out;
    const auto append_row = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    append_row(table.header);
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size()) {
            throw std::invalid_argument("csv row width does not match header");
        }
        append_row(row);
    }
    return out;
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    out << text;
    if (!out) {
        throw std::runtime_error("failed writing output file: " + path);
    }
}

}  // namespace mprtrack
