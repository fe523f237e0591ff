#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "seqedit/errors.hpp"

namespace seqedit {

// Minimal RFC-4180-style CSV: header row mandatory, '.' decimal separator,
// no quoting (cells produced by this library never contain commas).
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path,
              const std::vector<std::string>& header)
        : out_(path), columns_(header.size()) {
        if (!out_) {
            throw IoError("cannot write csv file: " + path.string());
        }
        write_cells(header);
    }

    void row(const std::vector<std::string>& cells) {
        if (cells.size() != columns_) {
            throw IoError("csv row width does not match header");
        }
        write_cells(cells);
    }

private:
    void write_cells(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

    std::ofstream out_;
    std::size_t columns_;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) return static_cast<int>(i);
        }
        throw IoError("csv column not found: " + name);
    }
};

inline CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open csv file: " + path.string());
    }
    CsvTable table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        if (first) {
            table.header = std::move(cells);
            first = false;
        } else {
            table.rows.push_back(std::move(cells));
        }
    }
    if (first) {
        throw IoError("csv file has no header: " + path.string());
    }
    return table;
}

}  // namespace seqedit
