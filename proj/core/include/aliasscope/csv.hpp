#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "aliasscope/timeseries.hpp"

namespace aliasscope {

// Comma-separated, '.' decimal. One column of values, or several columns
// with the values in the last one; a single leading header line is detected
// by a non-numeric last field and skipped.
std::vector<double> read_value_column(const std::filesystem::path& path);

// read_value_column plus series metadata. With pad > 0 the first and last
// `pad` samples become running-mean padding and the series proper is the
// middle; start_label refers to the first non-pad sample.
TimeSeries read_series_csv(const std::filesystem::path& path, Spacing spacing,
                           long start_label = 0, int pad = 0);

// Shortest representation that round-trips a double.
std::string format_double(double v);

// Writes via a temp file in the same directory plus a rename, so readers
// never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

// Rows of equal length under an optional header line.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace aliasscope
