#pragma once

#include <string>
#include <vector>

namespace fractel {

/// Round-trip-safe number formatting used for all CSV output: %.17g.
std::string format_number(double v);

/// Lowercase "true" / "false".
std::string format_bool(bool b);

/// Tiny CSV accumulator: a header row plus string cells, emitted with LF
/// line endings. Rows must match the header width.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);

    void add_row(const std::vector<std::string>& cells);

    std::string str() const;
    void write_file(const std::string& path) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace fractel
