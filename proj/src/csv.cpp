#include "fractel/csv.hpp"

#include <cstdio>
#include <fstream>

#include "fractel/errors.hpp"

namespace fractel {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_bool(bool b) { return b ? "true" : "false"; }

CsvWriter::CsvWriter(std::vector<std::string> header)
    : header_(std::move(header)) {
    if (header_.empty()) throw ShapeError("CSV header must not be empty");
}

void CsvWriter::add_row(const std::vector<std::string>& cells) {
    if (cells.size() != header_.size()) {
        throw ShapeError("CSV row width does not match header");
    }
    rows_.push_back(cells);
}

std::string CsvWriter::str() const {
    std::string out;
    const auto append_line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out.push_back(',');
            out += cells[i];
        }
        out.push_back('\n');
    };
    append_line(header_);
    for (const auto& row : rows_) append_line(row);
    return out;
}

void CsvWriter::write_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    const std::string text = str();
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace fractel
