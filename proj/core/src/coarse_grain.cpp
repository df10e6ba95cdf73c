#include "mscale/coarse_grain.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "mscale/error.hpp"

namespace mscale {

std::string_view to_string(Moment moment) noexcept {
  switch (moment) {
    case Moment::Mean: return "mean";
    case Moment::Variance: return "var";
    case Moment::StdDev: return "std";
  }
  return "unknown";
}

Signal coarse_grain(const Signal& signal, const CoarseGrainSpec& spec) {
  if (spec.tau < 1) {
    throw Error(ErrorKind::InvalidParams, "scale factor tau must be >= 1");
  }
  if (spec.offset < 1 || spec.offset > spec.tau) {
    throw Error(ErrorKind::InvalidParams, "offset must lie in [1, tau]");
  }
  if (spec.moment != Moment::Mean && spec.tau == 1) {
    throw Error(ErrorKind::DegenerateScale,
                std::string("the ") + std::string(to_string(spec.moment)) +
                    " of a single sample is 0; spread moments need tau >= 2");
  }
  const auto x = signal.samples();
  const std::size_t tau = static_cast<std::size_t>(spec.tau);
  const std::size_t first = static_cast<std::size_t>(spec.offset) - 1;
  if (x.size() < first + tau) {
    throw Error(ErrorKind::TooShort, "no complete block of " + std::to_string(tau) +
                                         " samples from offset " + std::to_string(spec.offset));
  }
  const std::size_t blocks = (x.size() - first) / tau;

  if (spec.moment == Moment::Mean && tau == 1) {
    return Signal(std::vector<double>(x.begin(), x.end()), signal.sample_rate_hz());
  }

  std::vector<double> out(blocks);
  const double width = static_cast<double>(tau);
  for (std::size_t j = 0; j < blocks; ++j) {
    const double* block = x.data() + first + j * tau;
    double sum = 0.0;
    for (std::size_t b = 0; b < tau; ++b) sum += block[b];
    const double mu = sum / width;
    if (spec.moment == Moment::Mean) {
      out[j] = mu;
      continue;
    }
    double ss = 0.0;
    for (std::size_t b = 0; b < tau; ++b) ss += (block[b] - mu) * (block[b] - mu);
    const double var = ss / width;
    out[j] = spec.moment == Moment::Variance ? var : std::sqrt(var);
  }
  std::optional<double> rate;
  if (const auto fs = signal.sample_rate_hz()) rate = *fs / static_cast<double>(tau);
  return Signal(std::move(out), rate);
}

std::vector<Signal> all_shifted_grains(const Signal& signal, int tau, Moment moment) {
  std::vector<Signal> grains;
  grains.reserve(static_cast<std::size_t>(std::max(tau, 0)));
  for (int u = 1; u <= tau; ++u) {
    grains.push_back(coarse_grain(signal, CoarseGrainSpec{tau, u, moment}));
  }
  return grains;
}

}  // namespace mscale
