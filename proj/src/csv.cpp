#include "dca/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dca/errors.hpp"

namespace dca {

namespace {

bool needs_quoting(const std::string& field) {
    return field.find_first_of(",\"\n\r") != std::string::npos;
}

void append_field(std::string& out, const std::string& field) {
    if (!needs_quoting(field)) {
        out += field;
        return;
    }
    out += '"';
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
}

// Parses one record; handles quoted fields spanning multiple lines.
std::vector<std::string> parse_record(std::istream& in, bool& ok) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false, any = false;
    int c;
    while ((c = in.get()) != EOF) {
        any = true;
        if (quoted) {
            if (c == '"') {
                if (in.peek() == '"') {
                    field += '"';
                    in.get();
                } else {
                    quoted = false;
                }
            } else {
                field += static_cast<char>(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c == '\n') {
            break;
        } else if (c != '\r') {
            field += static_cast<char>(c);
        }
    }
    ok = any;
    if (any) fields.push_back(std::move(field));
    return fields;
}

} // namespace

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

CsvTable CsvTable::read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open CSV file " + path.string());
    CsvTable table;
    bool ok = false;
    table.header_ = parse_record(in, ok);
    if (!ok || table.header_.empty())
        throw DataError("CSV file has no header row: " + path.string());
    while (true) {
        auto fields = parse_record(in, ok);
        if (!ok) break;
        if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
        if (fields.size() != table.header_.size())
            throw DataError("CSV row width mismatch in " + path.string());
        table.rows_.push_back(std::move(fields));
    }
    return table;
}

std::string CsvTable::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < header_.size(); ++i) {
        if (i) out += ',';
        append_field(out, header_[i]);
    }
    out += '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            append_field(out, row[i]);
        }
        out += '\n';
    }
    return out;
}

void CsvTable::write_file(const std::filesystem::path& path) const {
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw DataError("cannot write CSV file " + path.string());
    out << to_string();
    if (!out)
        throw DataError("write failed for " + path.string());
}

void CsvTable::add_row(std::vector<std::string> row) {
    if (row.size() != header_.size())
        throw DataError("CSV row width does not match header");
    rows_.push_back(std::move(row));
}

std::size_t CsvTable::column(const std::string& name) const {
    const auto it = std::find(header_.begin(), header_.end(), name);
    if (it == header_.end())
        throw DataError("CSV is missing required column '" + name + "'");
    return static_cast<std::size_t>(it - header_.begin());
}

bool CsvTable::has_column(const std::string& name) const {
    return std::find(header_.begin(), header_.end(), name) != header_.end();
}

const std::string& CsvTable::cell(std::size_t row, const std::string& col) const {
    return rows_[row][column(col)];
}

std::string format_double(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
    return buf;
}

} // namespace dca
