#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "mscale/random.hpp"
#include "mscale/signal.hpp"

namespace mscale {

/// n i.i.d. standard normal samples.
Signal gen_wgn(std::size_t n, Seed seed);

/// 1/f noise by spectral shaping of white noise: every positive-frequency bin
/// is scaled by 1/sqrt(f), the DC bin is zeroed, and the result is normalised
/// to population SD 1. Requires n >= 2.
Signal gen_one_over_f(std::size_t n, Seed seed);

/// Unit-amplitude cosine whose frequency sweeps logarithmically from f_start
/// to f_end over duration_s, with zero initial phase. Length is
/// round(fs * duration_s). Throws `BadFrequency` unless
/// 0 < f_start < f_end < fs / 2.
Signal gen_chirp(double fs = 150.0, double duration_s = 100.0, double f_start = 0.1,
                 double f_end = 30.0);

/// AR(1) process x_k = rho_k x_{k-1} + e_k with rho_k linear from rho_start to
/// rho_end and x_0 = 0. Throws `BadParam` if |rho| >= 1 anywhere.
Signal gen_ar1_sweep(std::size_t n, double rho_start = 0.9, double rho_end = -0.9,
                     Seed seed = {});

/// MIX process: per sample, with probability p_k the value is uniform on
/// [-sqrt(3), sqrt(3)], otherwise sqrt(2) sin(2 pi k / 12). p_k is linear from
/// p_start to p_end.
Signal gen_mix(std::size_t n, double p_start = 0.01, double p_end = 0.99, Seed seed = {});

/// Logistic map x_k = alpha_k x_{k-1} (1 - x_{k-1}) with alpha_k linear from
/// alpha_start to alpha_end. `burn_in` iterations at alpha_start are discarded
/// before recording.
Signal gen_logistic_sweep(std::size_t n, double alpha_start = 3.5, double alpha_end = 3.99,
                          double x0 = 0.5, std::size_t burn_in = 1000);

struct LorenzParams {
  double lambda = 10.0;
  double beta = 8.0 / 3.0;
  double rho = 28.0;
  double step = 1.0 / 150.0;
  std::size_t length = 7500;
  std::array<double, 3> initial_state{1.0, 1.0, 1.0};
};

/// x coordinate of the Lorenz system integrated with explicit Euler steps.
/// The returned array also carries the final state for chaining.
struct LorenzTrajectory {
  std::vector<double> x;
  std::array<double, 3> final_state;
};
LorenzTrajectory integrate_lorenz(const LorenzParams& params);

struct TwoRegimeOptions {
  /// Start segment B from segment A's final state instead of
  /// params_b.initial_state.
  bool chain_segments = true;
};

/// Two Lorenz segments of seg_len samples each, step 1/fs, each normalised to
/// population SD 1 after generation and then concatenated. `seed` is accepted
/// for interface uniformity; the integration is deterministic.
Signal gen_lorenz_two_regime(double fs, std::size_t seg_len, LorenzParams params_a,
                             LorenzParams params_b, Seed seed = {},
                             TwoRegimeOptions options = {});

/// Defaults: rho = 28 then rho = 99.96, fs = 150 Hz, 7500 samples per segment.
Signal gen_lorenz_two_regime(Seed seed = {});

}  // namespace mscale
