#include "aliasscope/csv.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "aliasscope/errors.hpp"

namespace aliasscope {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::string_view last_field(std::string_view line) {
  const auto pos = line.rfind(',');
  return trim(pos == std::string_view::npos ? line : line.substr(pos + 1));
}

bool parse_double(std::string_view s, double& out) {
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && !s.empty();
}

}  // namespace

std::vector<double> read_value_column(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());

  std::vector<double> values;
  std::string line;
  bool first = true;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view field = last_field(line);
    if (field.empty()) continue;  // blank line
    double v = 0.0;
    if (!parse_double(field, v)) {
      if (first) {  // header line
        first = false;
        continue;
      }
      throw DataError(path.string() + ":" + std::to_string(lineno) + ": not a number: '" +
                      std::string(field) + "'");
    }
    first = false;
    values.push_back(v);
  }
  if (values.empty()) throw DataError(path.string() + ": no values");
  return values;
}

TimeSeries read_series_csv(const std::filesystem::path& path, Spacing spacing, long start_label,
                           int pad) {
  std::vector<double> values = read_value_column(path);
  if (pad < 0) throw std::invalid_argument("read_series_csv: pad must be >= 0");
  if (pad > 0 && values.size() <= 2 * static_cast<std::size_t>(pad))
    throw DataError(path.string() + ": too short for pad " + std::to_string(pad));

  TimeSeries out;
  out.spacing = spacing;
  out.start_label = start_label;
  if (pad > 0) {
    out.pad_before.assign(values.begin(), values.begin() + pad);
    out.pad_after.assign(values.end() - pad, values.end());
    out.values.assign(values.begin() + pad, values.end() - pad);
  } else {
    out.values = std::move(values);
  }
  validate(out);
  return out;
}

std::string format_double(double v) {
  char buf[32];
  // %.17g always round-trips; prefer the shorter form when it does too
  std::snprintf(buf, sizeof buf, "%.15g", v);
  double back = 0.0;
  if (parse_double(buf, back) && back == v) return buf;
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw DataError("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw DataError("rename failed: " + path.string() + ": " + ec.message());
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ostringstream out;
  if (!header.empty()) {
    for (std::size_t i = 0; i < header.size(); ++i)
      out << (i ? "," : "") << header[i];
    out << "\n";
  }
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << format_double(row[i]);
    out << "\n";
  }
  write_file_atomic(path, out.str());
}

}  // namespace aliasscope
