#include "mscale/csv_io.hpp"

#include <glob.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <string>

#include "mscale/error.hpp"

namespace mscale::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_double(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
  return value;
}

}  // namespace

Signal read_signal_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open input file '" + path.string() + "'");

  std::vector<double> samples;
  std::string line;
  std::size_t line_no = 0;
  bool seen_row = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = trim(line);
    if (row.empty() || row.front() == '#') continue;
    const std::string_view first = row.substr(0, row.find(','));
    const auto value = parse_double(first);
    if (!value) {
      if (!seen_row) {  // header row
        seen_row = true;
        continue;
      }
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": cannot parse '" +
                    std::string(first) + "' as a number");
    }
    seen_row = true;
    samples.push_back(*value);
  }
  if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
  if (samples.empty()) throw IoError("'" + path.string() + "' contains no samples");
  try {
    return Signal(std::move(samples));
  } catch (const Error& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

std::string format_number(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) return "nan";
  return std::string(buf.data(), ptr);
}

std::vector<std::filesystem::path> expand_glob(const std::string& pattern) {
  glob_t result{};
  std::vector<std::filesystem::path> paths;
  const int rc = ::glob(pattern.c_str(), 0, nullptr, &result);
  if (rc == 0) {
    for (std::size_t i = 0; i < result.gl_pathc; ++i) paths.emplace_back(result.gl_pathv[i]);
  }
  ::globfree(&result);
  if (rc != 0 && rc != GLOB_NOMATCH) throw IoError("glob failed for '" + pattern + "'");
  std::sort(paths.begin(), paths.end());
  return paths;
}

void CsvWriter::comment(std::string_view line) { out_ << "# " << line << '\n'; }

void CsvWriter::header(const std::vector<std::string>& columns) {
  for (const auto& c : columns) cell(std::string_view(c));
  end_row();
}

void CsvWriter::separator() {
  if (row_started_) out_ << ',';
  row_started_ = true;
}

CsvWriter& CsvWriter::cell(double value) {
  separator();
  out_ << format_number(value);
  return *this;
}

CsvWriter& CsvWriter::cell(std::optional<double> value) {
  separator();
  if (value) out_ << format_number(*value);
  return *this;
}

CsvWriter& CsvWriter::cell(long long value) {
  separator();
  out_ << value;
  return *this;
}

CsvWriter& CsvWriter::cell(std::string_view text) {
  separator();
  out_ << text;
  return *this;
}

void CsvWriter::end_row() {
  out_ << '\n';
  row_started_ = false;
}

}  // namespace mscale::cli
