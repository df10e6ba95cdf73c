// Compiled with -ffast-math (see core/CMakeLists.txt). Keep this file limited
// to the fuzzy kernel so the flag does not leak into other arithmetic.

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "mscale/entropy.hpp"
#include "mscale/error.hpp"
#include "detail.hpp"

namespace mscale {
namespace {

#if defined(__x86_64__) && defined(__GNUC__) && !defined(__clang__)
// One clone per vector width; the loader picks the widest the CPU supports,
// and each clone calls the matching libmvec exp.
#define MSCALE_VECTOR_CLONES \
  __attribute__((target_clones("avx512f", "avx2", "default")))
#else
#define MSCALE_VECTOR_CLONES
#endif

constexpr std::size_t kChunk = 512;
// exp(-745) underflows to 0; clamping keeps the argument finite when r is tiny.
constexpr double kMaxExponent = 745.0;

// Baseline-removed templates of length `len` over the first `templates`
// start positions, stored component-major: out[k * templates + t].
std::vector<double> centred_templates(std::span<const double> x, std::size_t len,
                                      std::size_t templates) {
  std::vector<double> out(len * templates);
  for (std::size_t t = 0; t < templates; ++t) {
    double sum = 0.0;
    for (std::size_t k = 0; k < len; ++k) sum += x[t + k];
    const double baseline = sum / static_cast<double>(len);
    for (std::size_t k = 0; k < len; ++k) out[k * templates + t] = x[t + k] - baseline;
  }
  return out;
}

// Chebyshev distances from template i to templates [begin, end).
MSCALE_VECTOR_CLONES void chebyshev_row(const std::vector<double>& comps, std::size_t len, std::size_t templates,
                   std::size_t i, std::size_t begin, std::size_t end, double* dist) {
  const std::size_t width = end - begin;
  const double* c0 = comps.data() + begin;
  const double ref0 = comps[i];
  for (std::size_t j = 0; j < width; ++j) dist[j] = std::fabs(c0[j] - ref0);
  for (std::size_t k = 1; k < len; ++k) {
    const double* ck = comps.data() + k * templates + begin;
    const double refk = comps[k * templates + i];
    for (std::size_t j = 0; j < width; ++j) {
      const double d = std::fabs(ck[j] - refk);
      dist[j] = dist[j] > d ? dist[j] : d;
    }
  }
}

MSCALE_VECTOR_CLONES double similarity_sum(const double* dist, std::size_t width, double n, double inv_r) {
  double sum = 0.0;
  if (n == 2.0) {
    for (std::size_t j = 0; j < width; ++j) {
      const double a = std::min(dist[j] * dist[j] * inv_r, kMaxExponent);
      sum += std::exp(-a);
    }
  } else if (n == 1.0) {
    for (std::size_t j = 0; j < width; ++j) {
      const double a = std::min(dist[j] * inv_r, kMaxExponent);
      sum += std::exp(-a);
    }
  } else {
    for (std::size_t j = 0; j < width; ++j) {
      const double a = std::min(std::pow(dist[j], n) * inv_r, kMaxExponent);
      sum += std::exp(-a);
    }
  }
  return sum;
}

}  // namespace

PhiPair fuzzy_phi(const Signal& signal, const EntropyParams& params, double r) {
  params.validate();
  detail::check_kernel_args(signal, params.m, r);
  const std::size_t dim = static_cast<std::size_t>(params.m);
  const auto x = signal.samples();
  const std::size_t templates = x.size() - dim;
  const auto short_templates = centred_templates(x, dim, templates);
  const auto long_templates = centred_templates(x, dim + 1, templates);
  const double inv_r = 1.0 / r;

  std::array<double, kChunk> dist{};
  double sum_m = 0.0;
  double sum_m1 = 0.0;
  for (std::size_t i = 0; i + 1 < templates; ++i) {
    double row_m = 0.0;
    double row_m1 = 0.0;
    for (std::size_t begin = i + 1; begin < templates; begin += kChunk) {
      const std::size_t end = std::min(begin + kChunk, templates);
      chebyshev_row(short_templates, dim, templates, i, begin, end, dist.data());
      row_m += similarity_sum(dist.data(), end - begin, params.n, inv_r);
      chebyshev_row(long_templates, dim + 1, templates, i, begin, end, dist.data());
      row_m1 += similarity_sum(dist.data(), end - begin, params.n, inv_r);
    }
    sum_m += row_m;
    sum_m1 += row_m1;
  }
  // Each unordered pair stands for both orderings.
  const double pairs = static_cast<double>(templates) * static_cast<double>(templates - 1);
  return PhiPair{2.0 * sum_m / pairs, 2.0 * sum_m1 / pairs};
}

EntropyValue fuzzy_entropy(const Signal& signal, int m, double n, double r) {
  EntropyParams params;
  params.m = m;
  params.n = n;
  params.tolerance = AbsoluteTolerance{r};
  const PhiPair phi = fuzzy_phi(signal, params, r);
  // Only reachable through underflow of every similarity term.
  if (!(phi.phi_m > 0.0) || !(phi.phi_m1 > 0.0)) {
    return EntropyValue::undefined(UndefinedCause::NoMatches);
  }
  return EntropyValue::finite(-std::log(phi.phi_m1 / phi.phi_m));
}

EntropyValue fuzzy_entropy(const Signal& signal, const EntropyParams& params) {
  return fuzzy_entropy(signal, params.m, params.n, resolve_tolerance(signal, params));
}

}  // namespace mscale
