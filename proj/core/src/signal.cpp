#include "mscale/signal.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "mscale/error.hpp"

namespace mscale {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidSignal: return "InvalidSignal";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::ZeroVariance: return "ZeroVariance";
    case ErrorKind::TooShort: return "TooShort";
    case ErrorKind::DegenerateScale: return "DegenerateScale";
    case ErrorKind::BadWindow: return "BadWindow";
    case ErrorKind::BadFrequency: return "BadFrequency";
    case ErrorKind::BadParam: return "BadParam";
    case ErrorKind::NumericBlowup: return "NumericBlowup";
    case ErrorKind::MixedConfigs: return "MixedConfigs";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::BadP: return "BadP";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

Signal::Signal(std::vector<double> samples, std::optional<double> sample_rate_hz)
    : samples_(std::move(samples)), sample_rate_hz_(sample_rate_hz) {
  if (samples_.empty()) {
    throw Error(ErrorKind::InvalidSignal, "signal has no samples");
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i])) {
      throw Error(ErrorKind::InvalidSignal, "sample " + std::to_string(i) + " is not finite");
    }
  }
  if (sample_rate_hz_ && !(*sample_rate_hz_ > 0.0 && std::isfinite(*sample_rate_hz_))) {
    throw Error(ErrorKind::InvalidSignal, "sample rate must be positive");
  }
}

double mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double population_sd(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  const double mu = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - mu) * (x - mu);
  return std::sqrt(ss / static_cast<double>(xs.size()));
}

}  // namespace mscale
