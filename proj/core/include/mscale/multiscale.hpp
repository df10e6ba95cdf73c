#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mscale/coarse_grain.hpp"
#include "mscale/entropy.hpp"
#include "mscale/signal.hpp"

namespace mscale {

enum class Estimator { Sample, Fuzzy };

std::string_view to_string(Estimator estimator) noexcept;

struct ScaleRange {
  int min = 1;
  int max = 1;

  int count() const noexcept { return max - min + 1; }
  bool operator==(const ScaleRange&) const = default;
};

struct MultiscaleConfig {
  Estimator estimator = Estimator::Fuzzy;
  Moment moment = Moment::Mean;
  bool refined_composite = false;
  ScaleRange scales;
  EntropyParams params;

  /// Checks scale bounds against the moment (spread moments start at 2) and
  /// the entropy parameters.
  void validate() const;

  /// Short method label such as "RCMFE_mean" or "MSE_std".
  std::string method_name() const;

  /// True when estimator, moment, refined-composite flag and scale range match.
  bool same_method(const MultiscaleConfig& other) const noexcept;
};

struct ScaleEntry {
  int tau;
  EntropyValue value;
};

struct MultiscaleProfile {
  std::vector<ScaleEntry> entries;  // ascending tau, one per configured scale
  MultiscaleConfig config;
  double tolerance_used = 0.0;
};

struct WindowedProfile {
  std::size_t start_index;
  MultiscaleProfile profile;
};

struct WindowedProfiles {
  std::size_t window_len = 0;
  std::size_t hop = 0;
  std::vector<WindowedProfile> profiles;
};

/// Entropy of the coarse-grained signal at every scale in the configured range.
///
/// The tolerance is resolved once from `signal` and reused at every scale.
/// With `refined_composite`, the estimator's internal quantities (phi values or
/// match counts) are averaged over all tau shifted grains before the log ratio
/// is taken. Scales whose grain is too short for the estimator are reported as
/// Undefined(TooShort) rather than failing the profile.
///
/// Scales and shifts are evaluated in parallel (see parallel.hpp); the result
/// is bit-identical to a sequential run.
MultiscaleProfile multiscale_profile(const Signal& signal, const MultiscaleConfig& config);

/// Independent profiles of windows starting at 0 and advancing by
/// round(window_len * (1 - overlap_fraction)); the trailing partial window is
/// dropped. Throws `BadWindow` when the window does not fit or the hop is 0.
WindowedProfiles sliding_window_profiles(const Signal& signal, std::size_t window_len,
                                         double overlap_fraction,
                                         const MultiscaleConfig& config);

}  // namespace mscale
