#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "mscale/csv_io.hpp"

namespace mscale::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Provenance for one tool invocation.
///
/// The deterministic part (command, resolved configuration, seeds, version) is
/// embedded as '#' comment lines at the top of every output CSV. Wall-clock
/// stage timings are not, so that repeated runs produce byte-identical files;
/// the complete manifest, timings included, goes to a `<out>.manifest.json`
/// sidecar next to the CSV.
class RunManifest {
 public:
  explicit RunManifest(std::string command_line) : command_(std::move(command_line)) {}

  void set(std::string key, std::string value);
  void add_seed(std::uint64_t seed) { seeds_.push_back(seed); }

  template <class F>
  decltype(auto) timed(std::string stage, F&& fn) {
    const auto start = std::chrono::steady_clock::now();
    struct Record {
      RunManifest& self;
      std::string stage;
      std::chrono::steady_clock::time_point start;
      ~Record() {
        self.stages_.emplace_back(
            std::move(stage),
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
      }
    } record{*this, std::move(stage), start};
    return fn();
  }

  void write_header(CsvWriter& csv) const;
  void write_sidecar(const std::filesystem::path& csv_path) const;
  /// Stage timings as '# stage ...' lines, used when output goes to stdout.
  std::string timing_lines() const;

 private:
  std::string command_;
  std::vector<std::pair<std::string, std::string>> config_;
  std::vector<std::uint64_t> seeds_;
  std::vector<std::pair<std::string, double>> stages_;
};

}  // namespace mscale::cli
