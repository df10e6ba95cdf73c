#pragma once

#include <string_view>
#include <vector>

#include "mscale/signal.hpp"

namespace mscale {

enum class Moment { Mean, Variance, StdDev };

std::string_view to_string(Moment moment) noexcept;

struct CoarseGrainSpec {
  int tau = 1;
  int offset = 1;  // 1-based start sample, in [1, tau]
  Moment moment = Moment::Mean;
};

/// Non-overlapping blocks of `tau` samples starting at `offset`, each reduced
/// to its mean, population variance, or population SD. Trailing samples that
/// do not fill a block are dropped, so the output has
/// floor((C - offset + 1) / tau) samples.
///
/// Throws `DegenerateScale` for a spread moment at tau = 1, `TooShort` when no
/// complete block fits, and `InvalidParams` for an offset outside [1, tau].
Signal coarse_grain(const Signal& signal, const CoarseGrainSpec& spec);

/// coarse_grain for every offset 1..tau, in offset order.
std::vector<Signal> all_shifted_grains(const Signal& signal, int tau, Moment moment);

}  // namespace mscale
