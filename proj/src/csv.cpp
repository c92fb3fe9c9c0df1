#include "archliq/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "archliq/errors.hpp"

namespace archliq {

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
        while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
        cells.push_back(cell);
    }
    return cells;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_optional(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
}

std::vector<double> read_series_csv(const std::string& path, const std::string& column) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw IoError("'" + path + "' is empty");

    const auto header = split(line);
    std::size_t col = 0;
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == column) col = i;

    std::vector<double> values;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto cells = split(line);
        if (col >= cells.size())
            throw IoError(path + ":" + std::to_string(line_no) + ": missing column");
        const std::string& cell = cells[col];
        char* end = nullptr;
        const double v = std::strtod(cell.c_str(), &end);
        if (cell.empty() || end != cell.c_str() + cell.size())
            throw IoError(path + ":" + std::to_string(line_no) + ": not a number: '" + cell + "'");
        values.push_back(v);
    }
    return values;
}

CsvWriter::CsvWriter(const std::string& path) : path_(path), out_(path) {
    if (!out_) throw IoError("cannot open '" + path + "' for writing");
}

CsvWriter& CsvWriter::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i != 0) out_ << ',';
        out_ << cells[i];
    }
    out_ << '\n';
    if (!out_) throw IoError("write failed on '" + path_ + "'");
    return *this;
}

void CsvWriter::close() {
    out_.close();
    if (!out_) throw IoError("closing '" + path_ + "' failed");
}

}  // namespace archliq
