#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace archliq {

/// %.17g: enough digits to round-trip any double.
std::string format_double(double v);
std::string format_optional(const std::optional<double>& v);

/// Reads a CSV with a header row. Takes the column named `column` when
/// present, otherwise the first column.
std::vector<double> read_series_csv(const std::string& path,
                                    const std::string& column = "x_squared");

/// Opens `path` for writing or throws IoError.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);
    CsvWriter& row(const std::vector<std::string>& cells);
    void close();

private:
    std::string path_;
    std::ofstream out_;
};

}  // namespace archliq
