#include "mscale/multiscale.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <variant>

#include "mscale/error.hpp"
#include "mscale/parallel.hpp"

namespace mscale {

std::string_view to_string(Estimator estimator) noexcept {
  return estimator == Estimator::Sample ? "sample" : "fuzzy";
}

void MultiscaleConfig::validate() const {
  params.validate();
  if (scales.min < 1) {
    throw Error(ErrorKind::InvalidParams, "minimum scale must be >= 1");
  }
  if (scales.max < scales.min) {
    throw Error(ErrorKind::InvalidParams, "maximum scale must be >= minimum scale");
  }
  if (moment != Moment::Mean && scales.min < 2) {
    throw Error(ErrorKind::DegenerateScale,
                "variance/std coarse-graining starts at scale 2");
  }
}

std::string MultiscaleConfig::method_name() const {
  std::string name = refined_composite ? "RC" : "";
  name += estimator == Estimator::Sample ? "MSE_" : "MFE_";
  name += to_string(moment);
  return name;
}

bool MultiscaleConfig::same_method(const MultiscaleConfig& other) const noexcept {
  return estimator == other.estimator && moment == other.moment &&
         refined_composite == other.refined_composite && scales == other.scales;
}

namespace {

// Per-grain intermediate: match counts or phi values, or "grain too short".
struct GrainResult {
  bool too_short = false;
  double first = 0.0;   // b_m or phi_m
  double second = 0.0;  // b_m1 or phi_m1
};

GrainResult evaluate_grain(const Signal& signal, const MultiscaleConfig& config, int tau,
                           int offset, double r) {
  const std::size_t needed = static_cast<std::size_t>(config.params.m) + 2;
  const std::size_t first = static_cast<std::size_t>(offset) - 1;
  const std::size_t tau_len = static_cast<std::size_t>(tau);
  if (signal.size() < first + tau_len || (signal.size() - first) / tau_len < needed) {
    return GrainResult{true};
  }
  const Signal grain = coarse_grain(signal, CoarseGrainSpec{tau, offset, config.moment});
  if (config.estimator == Estimator::Sample) {
    const MatchCounts counts = sample_match_counts(grain, config.params.m, r);
    return GrainResult{false, static_cast<double>(counts.b_m), static_cast<double>(counts.b_m1)};
  }
  const PhiPair phi = fuzzy_phi(grain, config.params, r);
  return GrainResult{false, phi.phi_m, phi.phi_m1};
}

EntropyValue combine(std::span<const GrainResult> shifts) {
  double first = 0.0;
  double second = 0.0;
  for (const GrainResult& g : shifts) {
    if (g.too_short) return EntropyValue::undefined(UndefinedCause::TooShort);
    first += g.first;
    second += g.second;
  }
  const double count = static_cast<double>(shifts.size());
  const double mean_first = first / count;
  const double mean_second = second / count;
  if (!(mean_first > 0.0) || !(mean_second > 0.0)) {
    // Zero matches for sample entropy; for fuzzy entropy only via underflow.
    return EntropyValue::undefined(UndefinedCause::NoMatches);
  }
  return EntropyValue::finite(-std::log(mean_second / mean_first));
}

}  // namespace

MultiscaleProfile multiscale_profile(const Signal& signal, const MultiscaleConfig& config) {
  config.validate();
  if (signal.size() < static_cast<std::size_t>(config.scales.max)) {
    throw Error(ErrorKind::TooShort, "signal of " + std::to_string(signal.size()) +
                                         " samples has no complete block at scale " +
                                         std::to_string(config.scales.max));
  }
  const double r = resolve_tolerance(signal, config.params);

  // One task per (scale, shift); slot layout is fixed so the reduction below
  // sees the same values in the same order regardless of scheduling.
  struct Task {
    int tau;
    int offset;
  };
  std::vector<Task> tasks;
  std::vector<std::size_t> scale_begin;
  for (int tau = config.scales.min; tau <= config.scales.max; ++tau) {
    scale_begin.push_back(tasks.size());
    const int shifts = config.refined_composite ? tau : 1;
    for (int u = 1; u <= shifts; ++u) tasks.push_back(Task{tau, u});
  }
  scale_begin.push_back(tasks.size());

  std::vector<GrainResult> results(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t i) {
    results[i] = evaluate_grain(signal, config, tasks[i].tau, tasks[i].offset, r);
  });

  MultiscaleProfile profile;
  profile.config = config;
  profile.tolerance_used = r;
  profile.entries.reserve(static_cast<std::size_t>(config.scales.count()));
  for (std::size_t s = 0; s + 1 < scale_begin.size(); ++s) {
    const std::span<const GrainResult> shifts(results.data() + scale_begin[s],
                                              scale_begin[s + 1] - scale_begin[s]);
    profile.entries.push_back(
        ScaleEntry{config.scales.min + static_cast<int>(s), combine(shifts)});
  }
  return profile;
}

WindowedProfiles sliding_window_profiles(const Signal& signal, std::size_t window_len,
                                         double overlap_fraction,
                                         const MultiscaleConfig& config) {
  if (window_len == 0 || window_len > signal.size()) {
    throw Error(ErrorKind::BadWindow, "window of " + std::to_string(window_len) +
                                          " samples does not fit a signal of " +
                                          std::to_string(signal.size()));
  }
  if (!(overlap_fraction >= 0.0 && overlap_fraction < 1.0)) {
    throw Error(ErrorKind::BadWindow, "overlap must lie in [0, 1)");
  }
  const auto hop = static_cast<std::size_t>(
      std::llround(static_cast<double>(window_len) * (1.0 - overlap_fraction)));
  if (hop == 0) {
    throw Error(ErrorKind::BadWindow, "overlap leaves a hop of 0 samples");
  }
  config.validate();

  std::vector<std::size_t> starts;
  for (std::size_t start = 0; start + window_len <= signal.size(); start += hop) {
    starts.push_back(start);
  }

  const auto x = signal.samples();
  std::vector<std::optional<MultiscaleProfile>> profiles(starts.size());
  parallel_for(starts.size(), [&](std::size_t w) {
    const auto first = x.begin() + static_cast<std::ptrdiff_t>(starts[w]);
    Signal window(std::vector<double>(first, first + static_cast<std::ptrdiff_t>(window_len)),
                  signal.sample_rate_hz());
    profiles[w] = multiscale_profile(window, config);
  });

  WindowedProfiles out;
  out.window_len = window_len;
  out.hop = hop;
  out.profiles.reserve(starts.size());
  for (std::size_t w = 0; w < starts.size(); ++w) {
    out.profiles.push_back(WindowedProfile{starts[w], std::move(*profiles[w])});
  }
  return out;
}

}  // namespace mscale
