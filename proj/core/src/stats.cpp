#include "mscale/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "mscale/error.hpp"

namespace mscale {
namespace {

struct Moments {
  double mean;
  double variance;  // sample variance, divisor n - 1
};

Moments sample_moments(std::span<const double> xs) {
  const double n = static_cast<double>(xs.size());
  const double mu = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mu) * (x - mu);
  return Moments{mu, xs.size() > 1 ? ss / (n - 1.0) : 0.0};
}

void require_group(std::span<const double> xs, const char* name) {
  if (xs.size() < 2) {
    throw Error(ErrorKind::Degenerate, std::string(name) + " needs at least 2 values");
  }
  for (double x : xs) {
    if (!std::isfinite(x)) {
      throw Error(ErrorKind::Degenerate, std::string(name) + " contains a non-finite value");
    }
  }
}

}  // namespace

EnsembleSummary summarize(std::span<const MultiscaleProfile> profiles) {
  if (profiles.empty()) {
    throw Error(ErrorKind::MixedConfigs, "no profiles to summarise");
  }
  const MultiscaleConfig& reference = profiles.front().config;
  for (const auto& p : profiles) {
    if (!p.config.same_method(reference) ||
        p.entries.size() != static_cast<std::size_t>(reference.scales.count())) {
      throw Error(ErrorKind::MixedConfigs, "profiles differ in method or scale range");
    }
  }

  EnsembleSummary summary;
  std::vector<double> values;
  for (std::size_t s = 0; s < profiles.front().entries.size(); ++s) {
    values.clear();
    for (const auto& p : profiles) {
      if (p.entries[s].value.is_finite()) values.push_back(p.entries[s].value.value());
    }
    // Sorting makes the sums independent of profile order.
    std::sort(values.begin(), values.end());

    ScaleSummary row;
    row.tau = profiles.front().entries[s].tau;
    row.n_defined = values.size();
    row.n_total = profiles.size();
    if (!values.empty()) {
      const Moments mom = sample_moments(values);
      row.mean = mom.mean;
      row.sd = std::sqrt(mom.variance);
      if (values.size() >= 2 && mom.mean != 0.0) row.cv = *row.sd / mom.mean;
    }
    summary.scales.push_back(row);
  }
  return summary;
}

double welch_t_test(std::span<const double> group_a, std::span<const double> group_b) {
  require_group(group_a, "group A");
  require_group(group_b, "group B");
  const Moments a = sample_moments(group_a);
  const Moments b = sample_moments(group_b);
  if (!(a.variance > 0.0) || !(b.variance > 0.0)) {
    throw Error(ErrorKind::Degenerate, "Welch test needs nonzero variance in both groups");
  }
  const double na = static_cast<double>(group_a.size());
  const double nb = static_cast<double>(group_b.size());
  const double va = a.variance / na;
  const double vb = b.variance / nb;
  const double t = (a.mean - b.mean) / std::sqrt(va + vb);
  const double dof = (va + vb) * (va + vb) / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
  const boost::math::students_t dist(dof);
  const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)));
  return std::clamp(p, 0.0, 1.0);
}

std::vector<double> bh_fdr_adjust(std::span<const double> p_values) {
  for (double p : p_values) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorKind::BadP, "p-value " + std::to_string(p) + " is outside [0, 1]");
    }
  }
  const std::size_t m = p_values.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return p_values[a] < p_values[b]; });

  std::vector<double> adjusted(m);
  double running_min = 1.0;
  for (std::size_t rank = m; rank >= 1; --rank) {
    const std::size_t idx = order[rank - 1];
    // m / rank rounds to >= 1, so the product never drops below p.
    const double scaled = p_values[idx] * (static_cast<double>(m) / static_cast<double>(rank));
    running_min = std::min(running_min, scaled);
    adjusted[idx] = running_min;
  }
  return adjusted;
}

double levene_test(std::span<const double> group_a, std::span<const double> group_b) {
  require_group(group_a, "group A");
  require_group(group_b, "group B");
  auto abs_deviations = [](std::span<const double> xs) {
    const double mu = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    std::vector<double> z(xs.size());
    std::transform(xs.begin(), xs.end(), z.begin(), [mu](double x) { return std::fabs(x - mu); });
    return z;
  };
  const std::vector<double> za = abs_deviations(group_a);
  const std::vector<double> zb = abs_deviations(group_b);
  const Moments ma = sample_moments(za);
  const Moments mb = sample_moments(zb);

  const double na = static_cast<double>(za.size());
  const double nb = static_cast<double>(zb.size());
  const double total = na + nb;
  const double grand = (ma.mean * na + mb.mean * nb) / total;
  const double between = na * (ma.mean - grand) * (ma.mean - grand) +
                         nb * (mb.mean - grand) * (mb.mean - grand);
  const double within = ma.variance * (na - 1.0) + mb.variance * (nb - 1.0);
  const double df_between = 1.0;
  const double df_within = total - 2.0;

  if (!(within > 0.0)) {
    if (!(between > 0.0)) {
      throw Error(ErrorKind::Degenerate, "all absolute deviations are equal");
    }
    return 0.0;  // F is infinite
  }
  const double f = (between / df_between) / (within / df_within);
  const boost::math::fisher_f dist(df_between, df_within);
  return std::clamp(boost::math::cdf(boost::math::complement(dist, f)), 0.0, 1.0);
}

}  // namespace mscale
