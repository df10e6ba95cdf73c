#pragma once

// Brute-force reference implementations used as test oracles. They follow
// the textbook definitions literally (ordered pairs, explicit double loops,
// no pruning or vectorisation) and share no code with the library.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace oracle {

struct Counts {
  std::uint64_t b_m = 0;
  std::uint64_t b_m1 = 0;
};

inline Counts match_counts(const std::vector<double>& x, int m, double r) {
  const std::size_t dim = static_cast<std::size_t>(m);
  const std::size_t templates = x.size() - dim;
  Counts c;
  for (std::size_t i = 0; i < templates; ++i) {
    for (std::size_t j = 0; j < templates; ++j) {
      if (i == j) continue;
      double d = 0.0;
      for (std::size_t k = 0; k < dim; ++k) d = std::max(d, std::fabs(x[i + k] - x[j + k]));
      if (d < r) ++c.b_m;
      d = std::max(d, std::fabs(x[i + dim] - x[j + dim]));
      if (d < r) ++c.b_m1;
    }
  }
  return c;
}

inline double phi(const std::vector<double>& x, std::size_t len, std::size_t templates,
                  double n, double r) {
  std::vector<std::vector<double>> u(templates, std::vector<double>(len));
  for (std::size_t t = 0; t < templates; ++t) {
    double base = 0.0;
    for (std::size_t k = 0; k < len; ++k) base += x[t + k];
    base /= static_cast<double>(len);
    for (std::size_t k = 0; k < len; ++k) u[t][k] = x[t + k] - base;
  }
  double outer = 0.0;
  for (std::size_t i = 0; i < templates; ++i) {
    double inner = 0.0;
    for (std::size_t j = 0; j < templates; ++j) {
      if (i == j) continue;
      double d = 0.0;
      for (std::size_t k = 0; k < len; ++k) d = std::max(d, std::fabs(u[i][k] - u[j][k]));
      inner += std::exp(-std::pow(d, n) / r);
    }
    outer += inner / static_cast<double>(templates - 1);
  }
  return outer / static_cast<double>(templates);
}

struct Phis {
  double phi_m;
  double phi_m1;
};

inline Phis fuzzy_phis(const std::vector<double>& x, int m, double n, double r) {
  const std::size_t dim = static_cast<std::size_t>(m);
  const std::size_t templates = x.size() - dim;
  return {phi(x, dim, templates, n, r), phi(x, dim + 1, templates, n, r)};
}

inline double population_sd(const std::vector<double>& x) {
  double mu = 0.0;
  for (double v : x) mu += v;
  mu /= static_cast<double>(x.size());
  double ss = 0.0;
  for (double v : x) ss += (v - mu) * (v - mu);
  return std::sqrt(ss / static_cast<double>(x.size()));
}

enum class Spread { Mean, Variance, StdDev };

// Blocks b = offset + tau (j - 1) .. offset + tau j - 1 (1-based), j = 1..J.
inline std::vector<double> coarse(const std::vector<double>& x, int tau, int offset, Spread s) {
  std::vector<double> out;
  for (int j = 1;; ++j) {
    const int first = offset + tau * (j - 1);
    const int last = offset + tau * j - 1;
    if (last > static_cast<int>(x.size())) break;
    double mu = 0.0;
    for (int b = first; b <= last; ++b) mu += x[b - 1];
    mu /= tau;
    double ss = 0.0;
    for (int b = first; b <= last; ++b) ss += (x[b - 1] - mu) * (x[b - 1] - mu);
    const double var = ss / tau;
    out.push_back(s == Spread::Mean ? mu : s == Spread::Variance ? var : std::sqrt(var));
  }
  return out;
}

// Refined-composite entropy at one scale: builds all tau shifted grains,
// averages counts (sample) or phi values (fuzzy), then takes -ln of the ratio.
// Returns NaN when undefined.
inline double rc_entropy(const std::vector<double>& x, int tau, int m, double n, double r,
                         bool fuzzy, Spread s) {
  double first = 0.0;
  double second = 0.0;
  for (int u = 1; u <= tau; ++u) {
    const auto grain = coarse(x, tau, u, s);
    if (grain.size() < static_cast<std::size_t>(m) + 2) return std::nan("");
    if (fuzzy) {
      const auto p = fuzzy_phis(grain, m, n, r);
      first += p.phi_m;
      second += p.phi_m1;
    } else {
      const auto c = match_counts(grain, m, r);
      first += static_cast<double>(c.b_m);
      second += static_cast<double>(c.b_m1);
    }
  }
  first /= tau;
  second /= tau;
  if (first <= 0.0 || second <= 0.0) return std::nan("");
  return -std::log(second / first);
}

}  // namespace oracle
