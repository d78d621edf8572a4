// CSV emission for the command-line tables.  Output is RFC-4180 style:
// a header row, CRLF line endings, and quoting for cells containing commas,
// quotes, or line breaks.  Leading '#' comment lines (a common extension,
// used here for table-level annotations like certified thresholds) precede
// the header.  Numbers print with 10 significant digits through
// std::to_chars, which is locale-independent and correctly rounded with
// ties to even, so identical inputs produce byte-identical files on every
// run: the tables double as regression fixtures.

#pragma once

#include <charconv>
#include <cstddef>
#include <fstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

namespace poskit {

// Formats a double with 10 significant digits (round-half-even ties).
inline std::string csv_number(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 10);
    if (res.ec != std::errc())
        throw std::runtime_error("csv_number: formatting failed");
    return std::string(buf, res.ptr);
}

// One cell, formatted at construction: text passes through, numbers render
// with the fixed 10-digit policy, integers render exactly.
struct CsvValue {
    std::string text;
    CsvValue(std::string s) : text(std::move(s)) {}
    CsvValue(const char* s) : text(s) {}
    CsvValue(double v) : text(csv_number(v)) {}
    CsvValue(int v) : text(std::to_string(v)) {}
    CsvValue(long v) : text(std::to_string(v)) {}
    CsvValue(unsigned long v) : text(std::to_string(v)) {}
    CsvValue(bool v) : text(v ? "true" : "false") {}
};

class CsvTable {
  public:
    explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
        if (columns_.empty()) throw std::invalid_argument("CsvTable: no columns");
    }

    void add_comment(std::string line) { comments_.push_back(std::move(line)); }

    void add_row(std::vector<CsvValue> cells) {
        if (cells.size() != columns_.size())
            throw std::invalid_argument("CsvTable: row width " + std::to_string(cells.size()) +
                                        " != " + std::to_string(columns_.size()) + " columns");
        rows_.push_back(std::move(cells));
    }

    std::size_t row_count() const { return rows_.size(); }

    std::string str() const {
        std::string out;
        for (const auto& c : comments_) out += "# " + c + "\r\n";
        for (std::size_t j = 0; j < columns_.size(); ++j) {
            if (j) out += ',';
            out += quoted(columns_[j]);
        }
        out += "\r\n";
        for (const auto& row : rows_) {
            for (std::size_t j = 0; j < row.size(); ++j) {
                if (j) out += ',';
                out += quoted(row[j].text);
            }
            out += "\r\n";
        }
        return out;
    }

  private:
    static std::string quoted(const std::string& field) {
        if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
        std::string out = "\"";
        for (const char c : field) {
            if (c == '"') out += '"';
            out += c;
        }
        out += '"';
        return out;
    }

    std::vector<std::string> columns_;
    std::vector<std::string> comments_;
    std::vector<std::vector<CsvValue>> rows_;
};

// Writes the table to a file.  A table with no data rows is an error: every
// emitter in this library produces at least one row, so an empty table
// signals an upstream bug, not an empty result.
inline void emit_csv(const CsvTable& table, const std::string& path) {
    if (table.row_count() == 0) throw std::invalid_argument("emit_csv: empty table");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_csv: cannot open " + path);
    const std::string body = table.str();
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!out) throw std::runtime_error("emit_csv: write failed for " + path);
}

}  // namespace poskit
