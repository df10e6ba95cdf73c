// Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails. Pass criterion numbers as arguments to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mscale/entropy.hpp"
#include "mscale/multiscale.hpp"
#include "mscale/stats.hpp"
#include "mscale/synthetic.hpp"
#include "oracle/naive.hpp"
#include "oracle/stats_fixtures.hpp"

using namespace mscale;

namespace {

// Pinned tolerances and sizes.
constexpr int kRealizations = 40;
constexpr std::size_t kDecayLength = 10000;      // criterion 1
constexpr std::size_t kLongLength = 40000;       // criteria 2-4, 10
constexpr double kFlatnessRatio = 1.15;          // criterion 2, max/min
constexpr int kCrossingLo = 25;                  // criterion 3
constexpr int kCrossingHi = 50;
constexpr double kCvRelTol = 0.5;                // criterion 4
constexpr int kMinSeedsWithUndefined = 30;       // criterion 5
constexpr std::size_t kShortLength = 100;
constexpr std::size_t kStabilityLength = 1000;   // criterion 6
constexpr std::size_t kWindow = 2000;            // criteria 7-8
constexpr double kOverlap = 0.9;
constexpr int kOracleSignals = 200;              // criterion 9
constexpr double kOracleTol = 1e-12;
constexpr int kTimingScales = 30;                // criterion 10
constexpr double kStatsTol = 1e-6;               // criterion 11

constexpr std::uint64_t kWgnSeedBase = 0;
constexpr std::uint64_t kPinkSeedBase = 1000;

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

MultiscaleConfig method(Estimator est, Moment moment, bool rc, int lo, int hi) {
  MultiscaleConfig c;
  c.estimator = est;
  c.moment = moment;
  c.refined_composite = rc;
  c.scales = {lo, hi};
  return c;
}

std::vector<MultiscaleProfile> ensemble(const std::function<Signal(std::uint64_t)>& gen,
                                        std::uint64_t seed_base, const MultiscaleConfig& config,
                                        int count = kRealizations) {
  std::vector<MultiscaleProfile> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(multiscale_profile(gen(seed_base + static_cast<std::uint64_t>(i)), config));
  }
  return out;
}

Signal wgn(std::size_t n, std::uint64_t s) { return gen_wgn(n, Seed{s}); }
Signal pink(std::size_t n, std::uint64_t s) { return gen_one_over_f(n, Seed{s}); }

std::string fmt(double v, int digits = 4) {
  std::ostringstream o;
  o.precision(digits);
  o << v;
  return o.str();
}

double sample_sd(const std::vector<double>& v) {
  double mu = 0.0;
  for (double x : v) mu += x;
  mu /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mu) * (x - mu);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

std::vector<double> finite_at(const std::vector<MultiscaleProfile>& ps, std::size_t idx) {
  std::vector<double> v;
  for (const auto& p : ps) {
    if (p.entries[idx].value.is_finite()) v.push_back(p.entries[idx].value.value());
  }
  return v;
}

// 1. Ensemble mean of WGN profiles strictly decreases over scales 1-20.
Outcome wgn_decay() {
  bool pass = true;
  std::string detail;
  for (Estimator est : {Estimator::Sample, Estimator::Fuzzy}) {
    const auto config = method(est, Moment::Mean, false, 1, 20);
    const auto ps = ensemble([](auto s) { return wgn(kDecayLength, s); }, kWgnSeedBase, config);
    const EnsembleSummary sum = summarize(ps);
    int violations = 0;
    for (std::size_t i = 1; i < sum.scales.size(); ++i) {
      if (!sum.scales[i].mean || !sum.scales[i - 1].mean ||
          !(*sum.scales[i].mean < *sum.scales[i - 1].mean)) {
        ++violations;
      }
    }
    pass = pass && violations == 0;
    detail += config.method_name() + " " + fmt(*sum.scales.front().mean) + "->" +
              fmt(*sum.scales.back().mean) + " violations=" + std::to_string(violations) + "; ";
  }
  return {pass, detail};
}

// 2. RCMFE_mean of 1/f noise is nearly flat over scales 10-20.
Outcome pink_flatness() {
  const auto config = method(Estimator::Fuzzy, Moment::Mean, true, 10, 20);
  const auto ps = ensemble([](auto s) { return pink(kLongLength, s); }, kPinkSeedBase, config);
  const EnsembleSummary sum = summarize(ps);
  double lo = INFINITY;
  double hi = -INFINITY;
  for (const auto& row : sum.scales) {
    lo = std::min(lo, *row.mean);
    hi = std::max(hi, *row.mean);
  }
  const double ratio = hi / lo;
  return {ratio <= kFlatnessRatio,
          "max/min=" + fmt(ratio) + " (min " + fmt(lo) + ", max " + fmt(hi) + ")"};
}

// 3. Scale where the 1/f spread profile first exceeds the WGN one.
Outcome sigma_crossing() {
  bool pass = true;
  std::string detail;
  for (Estimator est : {Estimator::Sample, Estimator::Fuzzy}) {
    const auto config = method(est, Moment::StdDev, false, 2, 60);
    const auto white = summarize(
        ensemble([](auto s) { return wgn(kLongLength, s); }, kWgnSeedBase, config));
    const auto pinkp = summarize(
        ensemble([](auto s) { return pink(kLongLength, s); }, kPinkSeedBase, config));
    int crossing = -1;
    for (std::size_t i = 0; i < white.scales.size(); ++i) {
      if (white.scales[i].mean && pinkp.scales[i].mean &&
          *pinkp.scales[i].mean > *white.scales[i].mean) {
        crossing = white.scales[i].tau;
        break;
      }
    }
    pass = pass && crossing >= kCrossingLo && crossing <= kCrossingHi;
    detail += config.method_name() + " crossing tau=" + std::to_string(crossing) + "; ";
  }
  return {pass, detail};
}

// 4. CV at scale 20 on 1/f noise for the four mean-based methods.
Outcome cv_table() {
  struct Row {
    Estimator est;
    bool rc;
    double reference;
  };
  const Row rows[] = {{Estimator::Sample, false, 0.015},
                      {Estimator::Fuzzy, false, 0.013},
                      {Estimator::Sample, true, 0.011},
                      {Estimator::Fuzzy, true, 0.011}};
  std::map<std::pair<int, bool>, double> cv;
  bool pass = true;
  std::string detail;
  for (const Row& r : rows) {
    const auto config = method(r.est, Moment::Mean, r.rc, 20, 20);
    const auto ps = ensemble([](auto s) { return pink(kLongLength, s); }, kPinkSeedBase, config);
    const ScaleSummary row = summarize(ps).scales.at(0);
    const double value = row.cv.value_or(NAN);
    cv[{static_cast<int>(r.est), r.rc}] = value;
    const bool ok = std::fabs(value - r.reference) <= kCvRelTol * r.reference;
    pass = pass && ok;
    detail += config.method_name() + "=" + fmt(value, 3) + (ok ? "" : "(out)") + " ";
  }
  for (Estimator est : {Estimator::Sample, Estimator::Fuzzy}) {
    const bool ordered = cv[{static_cast<int>(est), true}] <= cv[{static_cast<int>(est), false}];
    pass = pass && ordered;
    if (!ordered) detail += std::string("RC>basic for ") + std::string(to_string(est)) + " ";
  }
  return {pass, detail};
}

// 5. Short WGN: sample entropy goes undefined, fuzzy variants never do.
Outcome short_definedness() {
  int seeds_with_undefined = 0;
  int fuzzy_undefined = 0;
  for (int s = 0; s < kRealizations; ++s) {
    const Signal x = wgn(kShortLength, kWgnSeedBase + static_cast<std::uint64_t>(s));
    const auto mse = multiscale_profile(x, method(Estimator::Sample, Moment::Mean, false, 1, 10));
    if (std::any_of(mse.entries.begin(), mse.entries.end(),
                    [](const ScaleEntry& e) { return !e.value.is_finite(); })) {
      ++seeds_with_undefined;
    }
    for (bool rc : {false, true}) {
      const auto mfe = multiscale_profile(x, method(Estimator::Fuzzy, Moment::Mean, rc, 1, 10));
      for (const auto& e : mfe.entries) fuzzy_undefined += e.value.is_finite() ? 0 : 1;
    }
  }
  return {seeds_with_undefined >= kMinSeedsWithUndefined && fuzzy_undefined == 0,
          "MSE_mean seeds with undefined=" + std::to_string(seeds_with_undefined) + "/40, " +
              "MFE/RCMFE undefined entries=" + std::to_string(fuzzy_undefined)};
}

// 6. Refined composite lowers the spread across realizations at scale 10.
Outcome rc_stability() {
  bool pass = true;
  std::string detail;
  for (Estimator est : {Estimator::Sample, Estimator::Fuzzy}) {
    const auto gen = [](auto s) { return wgn(kStabilityLength, s); };
    const auto basic = ensemble(gen, kWgnSeedBase, method(est, Moment::Mean, false, 10, 10));
    const auto refined = ensemble(gen, kWgnSeedBase, method(est, Moment::Mean, true, 10, 10));
    const auto b = finite_at(basic, 0);
    const auto r = finite_at(refined, 0);
    const double sd_b = b.size() >= 2 ? sample_sd(b) : INFINITY;
    const double sd_r = r.size() >= 2 ? sample_sd(r) : INFINITY;
    pass = pass && sd_r <= sd_b;
    detail += std::string(to_string(est)) + ": SD basic=" + fmt(sd_b) + " (n=" +
              std::to_string(b.size()) + ") RC=" + fmt(sd_r) + " (n=" + std::to_string(r.size()) +
              "); ";
  }
  return {pass, detail};
}

struct WindowMethod {
  Estimator est;
  Moment moment;
  bool rc;
};

// Entropy at first and last window must move in `direction` for every scale.
bool window_trend(const Signal& x, const WindowMethod& wm, int direction, std::string& detail) {
  const auto config = method(wm.est, wm.moment, wm.rc, 2, 15);
  const WindowedProfiles w = sliding_window_profiles(x, kWindow, kOverlap, config);
  const auto& first = w.profiles.front().profile.entries;
  const auto& last = w.profiles.back().profile.entries;
  std::string bad;
  for (std::size_t i = 0; i < first.size(); ++i) {
    const bool ok = first[i].value.is_finite() && last[i].value.is_finite() &&
                    (direction > 0 ? last[i].value.value() > first[i].value.value()
                                   : last[i].value.value() < first[i].value.value());
    if (!ok) bad += (bad.empty() ? "" : ",") + std::to_string(first[i].tau);
  }
  detail += config.method_name() + (bad.empty() ? " ok" : " wrong at tau " + bad) + "; ";
  return bad.empty();
}

// 7. Window trends on chirp, MIX and the two-regime Lorenz signal.
Outcome signal_trends() {
  bool pass = true;
  std::string detail = "chirp: ";
  const Signal chirp = gen_chirp();
  for (const WindowMethod& wm : {WindowMethod{Estimator::Fuzzy, Moment::StdDev, true},
                                 WindowMethod{Estimator::Fuzzy, Moment::Mean, true},
                                 WindowMethod{Estimator::Sample, Moment::Variance, false},
                                 WindowMethod{Estimator::Sample, Moment::Mean, false}}) {
    pass = window_trend(chirp, wm, +1, detail) && pass;
  }
  detail += "mix: ";
  // Noise probability falls along the signal: randomness to periodicity.
  const Signal mix = gen_mix(15000, 0.99, 0.01, Seed{1});
  for (const WindowMethod& wm : {WindowMethod{Estimator::Fuzzy, Moment::StdDev, true},
                                 WindowMethod{Estimator::Fuzzy, Moment::Mean, true},
                                 WindowMethod{Estimator::Fuzzy, Moment::StdDev, false},
                                 WindowMethod{Estimator::Fuzzy, Moment::Mean, false}}) {
    pass = window_trend(mix, wm, -1, detail) && pass;
  }

  const Signal lorenz = gen_lorenz_two_regime(Seed{});
  const std::size_t half = lorenz.size() / 2;
  const WindowedProfiles w = sliding_window_profiles(
      lorenz, kWindow, kOverlap, method(Estimator::Fuzzy, Moment::Mean, true, 2, 15));
  auto regime_gap = [&](std::size_t idx) {
    double sum_a = 0.0, sum_b = 0.0;
    int n_a = 0, n_b = 0;
    for (const auto& wp : w.profiles) {
      const double v = wp.profile.entries[idx].value.value();
      if (wp.start_index + kWindow <= half) {
        sum_a += v;
        ++n_a;
      } else if (wp.start_index >= half) {
        sum_b += v;
        ++n_b;
      }
    }
    return std::fabs(sum_a / n_a - sum_b / n_b);
  };
  const double gap2 = regime_gap(0);
  const double gap15 = regime_gap(13);
  pass = pass && gap15 > gap2;
  detail += "lorenz RCMFE_mean |gap| tau2=" + fmt(gap2) + " tau15=" + fmt(gap15);
  return {pass, detail};
}

// 8. RCMFE_std at scale 2 dips in the period-3 window of the logistic sweep.
Outcome logistic_dip() {
  constexpr std::size_t n = 15000;
  constexpr double a0 = 3.5;
  constexpr double a1 = 3.99;
  const Signal x = gen_logistic_sweep(n, a0, a1);
  const WindowedProfiles w = sliding_window_profiles(
      x, kWindow, kOverlap, method(Estimator::Fuzzy, Moment::StdDev, true, 2, 2));
  auto centre_alpha = [&](const WindowedProfile& wp) {
    const double k = static_cast<double>(wp.start_index) + (kWindow - 1) / 2.0;
    return a0 + (a1 - a0) * k / static_cast<double>(n - 1);
  };
  auto nearest = [&](double alpha) {
    const WindowedProfile* best = nullptr;
    for (const auto& wp : w.profiles) {
      if (!best || std::fabs(centre_alpha(wp) - alpha) < std::fabs(centre_alpha(*best) - alpha)) {
        best = &wp;
      }
    }
    return best;
  };
  const WindowedProfile* periodic = nearest(3.83);
  const WindowedProfile* below = nearest(3.74);
  const WindowedProfile* above = nearest(3.9);
  const double e_p = periodic->profile.entries[0].value.value();
  const double e_lo = below->profile.entries[0].value.value();
  const double e_hi = above->profile.entries[0].value.value();
  return {e_p < e_lo && e_p < e_hi,
          "alpha " + fmt(centre_alpha(*below)) + ":" + fmt(e_lo) + "  " +
              fmt(centre_alpha(*periodic)) + ":" + fmt(e_p) + "  " + fmt(centre_alpha(*above)) +
              ":" + fmt(e_hi)};
}

// 9. Optimised kernels against brute-force references.
Outcome oracle_equivalence() {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> len(20, 200);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  int mismatched_definedness = 0;
  int count_mismatches = 0;
  auto track = [&](double got_finite, double got, double expected) {
    if (std::isnan(expected) != !got_finite) {
      ++mismatched_definedness;
      return;
    }
    if (!std::isnan(expected)) worst = std::max(worst, std::fabs(got - expected));
  };
  const Moment moments[] = {Moment::Mean, Moment::Variance, Moment::StdDev};
  const oracle::Spread spreads[] = {oracle::Spread::Mean, oracle::Spread::Variance,
                                    oracle::Spread::StdDev};
  for (int i = 0; i < kOracleSignals; ++i) {
    std::vector<double> x(static_cast<std::size_t>(len(rng)));
    for (double& v : x) v = normal(rng);
    if (i % 4 == 3) {
      for (double& v : x) v = std::round(v * 4.0) / 4.0;  // ties in distances
    }
    const Signal sig(x);
    const int m = 1 + i % 3;
    const double r = (0.1 + 0.05 * (i % 5)) * oracle::population_sd(x);

    const auto ref_counts = oracle::match_counts(x, m, r);
    const MatchCounts got_counts = sample_match_counts(sig, m, r);
    if (got_counts.b_m != ref_counts.b_m || got_counts.b_m1 != ref_counts.b_m1) ++count_mismatches;
    const EntropyValue se = sample_entropy(sig, m, r);
    track(se.is_finite(), se.is_finite() ? se.value() : 0.0,
          ref_counts.b_m && ref_counts.b_m1
              ? -std::log(static_cast<double>(ref_counts.b_m1) / static_cast<double>(ref_counts.b_m))
              : NAN);

    const double fuzzy_n = i % 2 == 0 ? 2.0 : 1.0 + 0.25 * (i % 7);
    const auto ref_phi = oracle::fuzzy_phis(x, m, fuzzy_n, r);
    const EntropyValue fe = fuzzy_entropy(sig, m, fuzzy_n, r);
    track(fe.is_finite(), fe.is_finite() ? fe.value() : 0.0,
          -std::log(ref_phi.phi_m1 / ref_phi.phi_m));

    const int mi = i % 3;
    const bool fuzzy = (i / 3) % 2 == 0;
    MultiscaleConfig config =
        method(fuzzy ? Estimator::Fuzzy : Estimator::Sample, moments[mi], true, mi == 0 ? 1 : 2, 6);
    config.params.m = 2;
    const auto profile = multiscale_profile(sig, config);
    const double r_prof = 0.15 * oracle::population_sd(x);
    for (const auto& e : profile.entries) {
      track(e.value.is_finite(), e.value.is_finite() ? e.value.value() : 0.0,
            oracle::rc_entropy(x, e.tau, 2, 2.0, r_prof, fuzzy, spreads[mi]));
    }
  }
  return {worst <= kOracleTol && mismatched_definedness == 0 && count_mismatches == 0,
          "max |diff|=" + fmt(worst, 3) + ", definedness mismatches=" +
              std::to_string(mismatched_definedness) +
              ", count mismatches=" + std::to_string(count_mismatches)};
}

// 10. Relative cost of the eight variants on one long WGN signal.
Outcome runtime_ordering() {
  const Signal x = wgn(kLongLength, kWgnSeedBase);
  auto seconds = [&](Estimator est, Moment moment, bool rc) {
    const auto config = method(est, moment, rc, moment == Moment::Mean ? 1 : 2, kTimingScales);
    double best = INFINITY;
    for (int rep = 0; rep < 2; ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto p = multiscale_profile(x, config);
      const auto t1 = std::chrono::steady_clock::now();
      best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
      if (p.entries.empty()) std::abort();
    }
    return best;
  };
  std::map<std::tuple<int, int, bool>, double> t;
  std::string detail;
  for (Estimator est : {Estimator::Sample, Estimator::Fuzzy}) {
    for (Moment moment : {Moment::Mean, Moment::StdDev}) {
      for (bool rc : {false, true}) {
        const double s = seconds(est, moment, rc);
        t[{static_cast<int>(est), static_cast<int>(moment), rc}] = s;
        detail += method(est, moment, rc, 2, 2).method_name() + "=" + fmt(s, 3) + "s ";
      }
    }
  }
  auto at = [&](Estimator e, Moment mo, bool rc) {
    return t[{static_cast<int>(e), static_cast<int>(mo), rc}];
  };
  std::vector<std::string> violations;
  for (Moment mo : {Moment::Mean, Moment::StdDev}) {
    for (bool rc : {false, true}) {
      if (!(at(Estimator::Fuzzy, mo, rc) > at(Estimator::Sample, mo, rc))) {
        violations.push_back("fuzzy<=sample " + method(Estimator::Fuzzy, mo, rc, 2, 2).method_name());
      }
    }
  }
  for (Estimator e : {Estimator::Sample, Estimator::Fuzzy}) {
    for (Moment mo : {Moment::Mean, Moment::StdDev}) {
      if (!(at(e, mo, true) > at(e, mo, false))) {
        violations.push_back("rc<=basic " + method(e, mo, true, 2, 2).method_name());
      }
    }
    for (bool rc : {false, true}) {
      if (!(at(e, Moment::StdDev, rc) < at(e, Moment::Mean, rc))) {
        violations.push_back("std>=mean " + method(e, Moment::StdDev, rc, 2, 2).method_name());
      }
    }
  }
  for (const auto& v : violations) detail += "[" + v + "] ";
  return {violations.empty(), detail};
}

// 11. Statistics against high-precision references and hand-computed BH values.
Outcome stats_oracles() {
  double worst = 0.0;
  for (const auto& f : oracle::stats_fixtures()) {
    worst = std::max(worst, std::fabs(welch_t_test(f.a, f.b) - f.welch_p));
    worst = std::max(worst, std::fabs(levene_test(f.a, f.b) - f.levene_p));
  }
  struct BhCase {
    std::vector<double> in;
    std::vector<double> out;
  };
  const BhCase bh[] = {
      {{0.04}, {0.04}},
      {{0.01, 0.02, 0.03}, {0.03, 0.03, 0.03}},
      {{0.9, 0.001}, {0.9, 0.002}},
      {{0.5, 0.001, 0.02, 0.8}, {0.5 * (4.0 / 3.0), 0.001 * 4.0, 0.02 * 2.0, 0.8}},
      {{0.02, 0.5, 0.02}, {0.02 * 1.5, 0.5, 0.02 * 1.5}},
  };
  int bh_mismatches = 0;
  for (const auto& c : bh) {
    if (bh_fdr_adjust(c.in) != c.out) ++bh_mismatches;
  }
  return {worst <= kStatsTol && bh_mismatches == 0,
          "max |p - ref|=" + fmt(worst, 3) + " over 10 fixtures, BH mismatches=" +
              std::to_string(bh_mismatches) + "/5"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "wgn-monotone-decay", wgn_decay},
      {2, "pink-noise-flatness", pink_flatness},
      {3, "std-profile-crossing", sigma_crossing},
      {4, "cv-table", cv_table},
      {5, "short-signal-definedness", short_definedness},
      {6, "refined-composite-stability", rc_stability},
      {7, "signal-concept-trends", signal_trends},
      {8, "logistic-periodic-dip", logistic_dip},
      {9, "oracle-equivalence", oracle_equivalence},
      {10, "runtime-ordering", runtime_ordering},
      {11, "statistics-oracles", stats_oracles},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2d %-28s %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
