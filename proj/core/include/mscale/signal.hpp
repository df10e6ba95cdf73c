#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace mscale {

/// A finite, non-empty real-valued sequence with an optional sampling rate.
///
/// Construction validates the invariants (at least one sample, all samples
/// finite, sample rate positive when present) and throws
/// `Error(ErrorKind::InvalidSignal)` otherwise.
class Signal {
 public:
  explicit Signal(std::vector<double> samples,
                  std::optional<double> sample_rate_hz = std::nullopt);

  std::span<const double> samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  double operator[](std::size_t i) const noexcept { return samples_[i]; }
  std::optional<double> sample_rate_hz() const noexcept { return sample_rate_hz_; }

  // Moves the samples out; the signal is left empty and must not be reused.
  std::vector<double> release() && noexcept { return std::move(samples_); }

  bool operator==(const Signal&) const = default;

 private:
  std::vector<double> samples_;
  std::optional<double> sample_rate_hz_;
};

double mean(std::span<const double> xs);

/// Population standard deviation (divisor N).
double population_sd(std::span<const double> xs);

}  // namespace mscale
