#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mscale/multiscale.hpp"

namespace mscale {

struct ScaleSummary {
  int tau = 0;
  std::optional<double> mean;  // absent when no realization is defined
  std::optional<double> sd;    // sample SD; 0 for a single defined value
  std::optional<double> cv;    // sd / mean; needs n_defined >= 2 and mean != 0
  std::size_t n_defined = 0;
  std::size_t n_total = 0;
};

struct EnsembleSummary {
  std::vector<ScaleSummary> scales;
};

/// Per-scale mean, SD and CV over the finite entries of many profiles.
/// Undefined entries count toward n_total only. Throws `MixedConfigs` when the
/// profiles were computed with different methods or scale ranges.
EnsembleSummary summarize(std::span<const MultiscaleProfile> profiles);

/// Two-sided Welch t-test p-value. Each group needs at least two values and
/// nonzero variance, otherwise `Degenerate`.
double welch_t_test(std::span<const double> group_a, std::span<const double> group_b);

/// Benjamini-Hochberg step-up adjustment, returned in input order.
/// Throws `BadP` for values outside [0, 1].
std::vector<double> bh_fdr_adjust(std::span<const double> p_values);

/// Mean-centred Levene test p-value for two groups (one-way ANOVA on absolute
/// deviations from the group means).
double levene_test(std::span<const double> group_a, std::span<const double> group_b);

}  // namespace mscale
