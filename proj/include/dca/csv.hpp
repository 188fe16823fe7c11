#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace dca {

// Header-row CSV table. Fields containing commas, quotes or newlines are
// quoted on write and unquoted on read; everything is kept as strings.
class CsvTable {
public:
    CsvTable() = default;
    explicit CsvTable(std::vector<std::string> header);

    static CsvTable read_file(const std::filesystem::path& path);
    void write_file(const std::filesystem::path& path) const;
    std::string to_string() const;

    const std::vector<std::string>& header() const { return header_; }
    std::size_t rows() const { return rows_.size(); }
    const std::vector<std::string>& row(std::size_t i) const { return rows_[i]; }
    void add_row(std::vector<std::string> row);

    // Column index by name; throws DataError when the column is missing.
    std::size_t column(const std::string& name) const;
    bool has_column(const std::string& name) const;
    const std::string& cell(std::size_t row, const std::string& col) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

// Formatting helpers used for every numeric CSV field so files are stable
// across platforms.
std::string format_double(double v, int precision = 6);

} // namespace dca
