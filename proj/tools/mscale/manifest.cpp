#include "mscale/manifest.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mscale::cli {

void RunManifest::set(std::string key, std::string value) {
  for (auto& [k, v] : config_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  config_.emplace_back(std::move(key), std::move(value));
}

void RunManifest::write_header(CsvWriter& csv) const {
  csv.comment(std::string("mscale ") + kToolVersion);
  csv.comment("command: " + command_);
  std::string config = "config:";
  for (const auto& [k, v] : config_) config += " " + k + "=" + v;
  csv.comment(config);
  if (!seeds_.empty()) {
    std::string seeds = "seeds:";
    if (seeds_.size() <= 8) {
      for (auto s : seeds_) seeds += " " + std::to_string(s);
    } else {
      seeds += " " + std::to_string(seeds_.front()) + ".." + std::to_string(seeds_.back()) +
               " (" + std::to_string(seeds_.size()) + ")";
    }
    csv.comment(seeds);
  }
}

void RunManifest::write_sidecar(const std::filesystem::path& csv_path) const {
  nlohmann::ordered_json j;
  j["tool"] = "mscale";
  j["version"] = kToolVersion;
  j["command"] = command_;
  auto& config = j["config"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : config_) config[k] = v;
  j["seeds"] = seeds_;
  auto& stages = j["wall_clock_seconds"] = nlohmann::ordered_json::object();
  for (const auto& [name, seconds] : stages_) stages[name] = seconds;

  std::filesystem::path sidecar = csv_path;
  sidecar += ".manifest.json";
  std::ofstream out(sidecar);
  if (!out) throw IoError("cannot write manifest '" + sidecar.string() + "'");
  out << j.dump(2) << '\n';
}

std::string RunManifest::timing_lines() const {
  std::ostringstream os;
  for (const auto& [name, seconds] : stages_) {
    os << "# stage " << name << " " << format_number(seconds) << " s\n";
  }
  return os.str();
}

}  // namespace mscale::cli
