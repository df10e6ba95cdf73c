#include "mscale/synthetic.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <type_traits>
#include <complex>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "mscale/error.hpp"

namespace mscale {
namespace {

void require_length(std::size_t n, std::size_t minimum, const char* what) {
  if (n < minimum) {
    throw Error(ErrorKind::BadParam, std::string(what) + " needs at least " +
                                         std::to_string(minimum) + " samples");
  }
}

// Position of sample k on a linear sweep from `from` to `to` over n samples.
double linear_sweep(double from, double to, std::size_t k, std::size_t n) {
  if (n <= 1) return from;
  return from + (to - from) * static_cast<double>(k) / static_cast<double>(n - 1);
}

// Divides by the population SD; the mean is left in place.
void normalise_to_unit_sd(std::vector<double>& xs) {
  const double sd = population_sd(xs);
  if (!(sd > 0.0)) {
    throw Error(ErrorKind::NumericBlowup, "cannot normalise a constant segment");
  }
  for (double& x : xs) x /= sd;
}

// FFTW planning is not thread-safe; execution is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};
struct PlanDestroy {
  void operator()(fftw_plan p) const noexcept {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(p);
  }
};

}  // namespace

Signal gen_wgn(std::size_t n, Seed seed) {
  require_length(n, 1, "white noise");
  Rng rng(seed);
  std::vector<double> out(n);
  for (double& x : out) x = rng.normal();
  return Signal(std::move(out));
}

Signal gen_one_over_f(std::size_t n, Seed seed) {
  require_length(n, 2, "1/f noise");
  std::vector<double> white = gen_wgn(n, seed).release();

  const std::size_t bins = n / 2 + 1;
  std::unique_ptr<double, FftwFree> real(static_cast<double*>(fftw_malloc(sizeof(double) * n)));
  std::unique_ptr<fftw_complex, FftwFree> spectrum(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * bins)));
  std::unique_ptr<std::remove_pointer_t<fftw_plan>, PlanDestroy> forward;
  std::unique_ptr<std::remove_pointer_t<fftw_plan>, PlanDestroy> inverse;
  {
    std::lock_guard lock(fftw_planner_mutex());
    const int len = static_cast<int>(n);
    forward.reset(fftw_plan_dft_r2c_1d(len, real.get(), spectrum.get(), FFTW_ESTIMATE));
    inverse.reset(fftw_plan_dft_c2r_1d(len, spectrum.get(), real.get(), FFTW_ESTIMATE));
  }

  std::copy(white.begin(), white.end(), real.get());
  fftw_execute(forward.get());
  spectrum.get()[0][0] = 0.0;
  spectrum.get()[0][1] = 0.0;
  for (std::size_t k = 1; k < bins; ++k) {
    // Power ~ 1/f means amplitude ~ 1/sqrt(f); f = k / n up to a constant
    // that the final normalisation removes.
    const double gain = 1.0 / std::sqrt(static_cast<double>(k));
    spectrum.get()[k][0] *= gain;
    spectrum.get()[k][1] *= gain;
  }
  fftw_execute(inverse.get());

  std::vector<double> out(real.get(), real.get() + n);
  normalise_to_unit_sd(out);
  return Signal(std::move(out));
}

Signal gen_chirp(double fs, double duration_s, double f_start, double f_end) {
  if (!(fs > 0.0) || !(duration_s > 0.0)) {
    throw Error(ErrorKind::BadParam, "sampling rate and duration must be positive");
  }
  if (!(f_start > 0.0 && f_start < f_end && f_end < fs / 2.0)) {
    throw Error(ErrorKind::BadFrequency,
                "chirp needs 0 < f_start < f_end < fs/2 (Nyquist " + std::to_string(fs / 2.0) +
                    " Hz)");
  }
  const auto n = static_cast<std::size_t>(std::llround(fs * duration_s));
  require_length(n, 1, "chirp");
  // f(t) = f0 K^(t/T), K = f1/f0; phase(t) = 2 pi f0 T (K^(t/T) - 1) / ln K.
  const double ratio = f_end / f_start;
  const double log_ratio = std::log(ratio);
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / fs;
    const double phase = 2.0 * std::numbers::pi * f_start * duration_s *
                         (std::exp(log_ratio * t / duration_s) - 1.0) / log_ratio;
    out[k] = std::cos(phase);
  }
  return Signal(std::move(out), fs);
}

Signal gen_ar1_sweep(std::size_t n, double rho_start, double rho_end, Seed seed) {
  require_length(n, 1, "AR(1) sweep");
  if (!(std::fabs(rho_start) < 1.0 && std::fabs(rho_end) < 1.0)) {
    throw Error(ErrorKind::BadParam, "AR(1) coefficient must satisfy |rho| < 1");
  }
  Rng rng(seed);
  std::vector<double> out(n);
  double previous = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double rho = linear_sweep(rho_start, rho_end, k, n);
    previous = rho * previous + rng.normal();
    out[k] = previous;
  }
  return Signal(std::move(out));
}

Signal gen_mix(std::size_t n, double p_start, double p_end, Seed seed) {
  require_length(n, 1, "MIX process");
  if (!(p_start >= 0.0 && p_start <= 1.0 && p_end >= 0.0 && p_end <= 1.0)) {
    throw Error(ErrorKind::BadParam, "MIX probability must lie in [0, 1]");
  }
  const double amplitude = std::numbers::sqrt2;
  const double half_width = std::numbers::sqrt3;
  Rng rng(seed);
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double p = linear_sweep(p_start, p_end, k, n);
    // Both draws happen every sample so the stream layout does not depend on p.
    const bool noisy = rng.bernoulli(p);
    const double noise = rng.uniform(-half_width, half_width);
    out[k] = noisy ? noise
                   : amplitude * std::sin(2.0 * std::numbers::pi * static_cast<double>(k) / 12.0);
  }
  return Signal(std::move(out));
}

Signal gen_logistic_sweep(std::size_t n, double alpha_start, double alpha_end, double x0,
                          std::size_t burn_in) {
  require_length(n, 1, "logistic sweep");
  if (!(x0 > 0.0 && x0 < 1.0)) {
    throw Error(ErrorKind::BadParam, "logistic map needs 0 < x0 < 1");
  }
  if (!(alpha_start > 0.0 && alpha_start <= 4.0 && alpha_end > 0.0 && alpha_end <= 4.0)) {
    throw Error(ErrorKind::BadParam, "logistic map needs 0 < alpha <= 4");
  }
  double x = x0;
  for (std::size_t k = 0; k < burn_in; ++k) x = alpha_start * x * (1.0 - x);
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    x = linear_sweep(alpha_start, alpha_end, k, n) * x * (1.0 - x);
    out[k] = x;
  }
  return Signal(std::move(out));
}

LorenzTrajectory integrate_lorenz(const LorenzParams& params) {
  if (!(params.step > 0.0) || params.length < 1) {
    throw Error(ErrorKind::BadParam, "Lorenz integration needs step > 0 and length >= 1");
  }
  constexpr double kBlowup = 1e12;
  auto [x, y, z] = params.initial_state;
  LorenzTrajectory traj;
  traj.x.resize(params.length);
  for (std::size_t k = 0; k < params.length; ++k) {
    traj.x[k] = x;
    const double dx = params.lambda * (y - x);
    const double dy = x * (params.rho - z) - y;
    const double dz = x * y - params.beta * z;
    x += params.step * dx;
    y += params.step * dy;
    z += params.step * dz;
    if (!(std::fabs(x) <= kBlowup && std::fabs(y) <= kBlowup && std::fabs(z) <= kBlowup)) {
      throw Error(ErrorKind::NumericBlowup,
                  "Lorenz state left the 1e12 bound at step " + std::to_string(k + 1));
    }
  }
  traj.final_state = {x, y, z};
  return traj;
}

Signal gen_lorenz_two_regime(double fs, std::size_t seg_len, LorenzParams params_a,
                             LorenzParams params_b, Seed /*seed*/, TwoRegimeOptions options) {
  if (!(fs > 0.0)) throw Error(ErrorKind::BadParam, "sampling rate must be positive");
  require_length(seg_len, 1, "Lorenz segment");
  params_a.step = params_b.step = 1.0 / fs;
  params_a.length = params_b.length = seg_len;

  LorenzTrajectory a = integrate_lorenz(params_a);
  if (options.chain_segments) params_b.initial_state = a.final_state;
  LorenzTrajectory b = integrate_lorenz(params_b);
  normalise_to_unit_sd(a.x);
  normalise_to_unit_sd(b.x);

  std::vector<double> out = std::move(a.x);
  out.insert(out.end(), b.x.begin(), b.x.end());
  return Signal(std::move(out), fs);
}

Signal gen_lorenz_two_regime(Seed seed) {
  LorenzParams a;
  LorenzParams b;
  b.rho = 99.96;
  return gen_lorenz_two_regime(150.0, 7500, a, b, seed);
}

}  // namespace mscale
