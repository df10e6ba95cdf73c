#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mscale/signal.hpp"

namespace mscale::cli {

/// Unreadable or malformed input file (exit code 3).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads the first column of a CSV file. Lines starting with '#' and blank
/// lines are skipped; a non-numeric first row is treated as the header.
Signal read_signal_csv(const std::filesystem::path& path);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_number(double value);

/// Files matching a shell glob, sorted by path.
std::vector<std::filesystem::path> expand_glob(const std::string& pattern);

/// Minimal CSV writer for the tool's outputs: '#' comment lines, one header row,
/// then data rows. Numbers are formatted locale-independently.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void comment(std::string_view line);
  void header(const std::vector<std::string>& columns);

  CsvWriter& cell(double value);
  CsvWriter& cell(std::optional<double> value);  // empty cell when absent
  CsvWriter& cell(long long value);
  CsvWriter& cell(std::size_t value) { return cell(static_cast<long long>(value)); }
  CsvWriter& cell(int value) { return cell(static_cast<long long>(value)); }
  CsvWriter& cell(std::string_view text);
  void end_row();

 private:
  void separator();

  std::ostream& out_;
  bool row_started_ = false;
};

}  // namespace mscale::cli
