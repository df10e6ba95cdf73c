#include "mscale/cli.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mscale/csv_io.hpp"
#include "mscale/error.hpp"
#include "mscale/manifest.hpp"
#include "mscale/multiscale.hpp"
#include "mscale/parallel.hpp"
#include "mscale/stats.hpp"
#include "mscale/synthetic.hpp"

namespace mscale::cli {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidSignal:
      return kExitIo;
    case ErrorKind::ZeroVariance:
    case ErrorKind::NumericBlowup:
    case ErrorKind::Degenerate:
    case ErrorKind::BadP:
      return kExitNumeric;
    default:
      return kExitUsage;
  }
}

// ---------------------------------------------------------------------------
// Shared flag groups

struct EntropyFlags {
  int m = 2;
  double n = 2.0;
  std::optional<double> r_factor;
  std::optional<double> r_abs;

  void add_to(CLI::App& app) {
    app.add_option("--m", m, "Embedding dimension")->check(CLI::PositiveNumber);
    app.add_option("--n", n, "Fuzzy power")->check(CLI::PositiveNumber);
    auto* rf = app.add_option("--r-factor", r_factor, "Tolerance as a multiple of the signal SD "
                                                      "(default 0.15)")
                   ->check(CLI::PositiveNumber);
    auto* ra = app.add_option("--r-abs", r_abs, "Absolute tolerance")->check(CLI::PositiveNumber);
    rf->excludes(ra);
  }

  EntropyParams params() const {
    EntropyParams p;
    p.m = m;
    p.n = n;
    if (r_abs) {
      p.tolerance = AbsoluteTolerance{*r_abs};
    } else {
      p.tolerance = RelativeTolerance{r_factor.value_or(0.15)};
    }
    return p;
  }

  void describe(RunManifest& manifest) const {
    manifest.set("m", std::to_string(m));
    manifest.set("n", format_number(n));
    if (r_abs) {
      manifest.set("r_abs", format_number(*r_abs));
    } else {
      manifest.set("r_factor", format_number(r_factor.value_or(0.15)));
    }
  }
};

ScaleRange parse_scales(const std::string& text) {
  const auto colon = text.find(':');
  try {
    std::size_t used = 0;
    ScaleRange range;
    if (colon == std::string::npos) {
      range.min = range.max = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    } else {
      const std::string lo = text.substr(0, colon);
      const std::string hi = text.substr(colon + 1);
      range.min = std::stoi(lo, &used);
      if (used != lo.size()) throw std::invalid_argument(text);
      range.max = std::stoi(hi, &used);
      if (used != hi.size()) throw std::invalid_argument(text);
    }
    if (range.min < 1 || range.max < range.min) throw std::invalid_argument(text);
    return range;
  } catch (const std::exception&) {
    throw UsageError("--scales: expected A:B with 1 <= A <= B, got '" + text + "'");
  }
}

struct ProfileFlags {
  std::string estimator = "fuzzy";
  std::string moment = "mean";
  bool rc = false;
  std::string scales = "1:20";
  bool allow_degenerate = false;
  EntropyFlags entropy;

  void add_to(CLI::App& app) {
    app.add_option("--estimator", estimator, "sample | fuzzy")
        ->check(CLI::IsMember({"sample", "fuzzy"}));
    app.add_option("--moment", moment, "Coarse-graining moment: mean | var | std")
        ->check(CLI::IsMember({"mean", "var", "std"}));
    app.add_flag("--rc", rc, "Refined composite averaging");
    app.add_option("--scales", scales, "Inclusive scale range A:B");
    app.add_flag("--allow-degenerate", allow_degenerate,
                 "With --moment var|std, report scale 1 as undefined instead of failing");
    entropy.add_to(app);
  }

  // Requested config plus whether scale 1 must be reported as degenerate.
  struct Resolved {
    MultiscaleConfig config;      // what the engine runs
    ScaleRange requested;         // what the user asked for
    bool degenerate_first = false;
  };

  Resolved resolve() const {
    Resolved r;
    r.config.estimator = estimator == "sample" ? Estimator::Sample : Estimator::Fuzzy;
    r.config.moment = moment == "mean" ? Moment::Mean
                      : moment == "var" ? Moment::Variance
                                        : Moment::StdDev;
    r.config.refined_composite = rc;
    r.config.params = entropy.params();
    r.requested = parse_scales(scales);
    r.config.scales = r.requested;
    if (r.config.moment != Moment::Mean && r.requested.min == 1) {
      if (!allow_degenerate) {
        throw UsageError("--scales: --moment " + moment +
                         " is undefined at scale 1; start at 2 or pass --allow-degenerate");
      }
      r.degenerate_first = true;
      r.config.scales.min = 2;
    }
    return r;
  }

  void describe(RunManifest& manifest, const Resolved& resolved) const {
    manifest.set("method", resolved.config.method_name());
    manifest.set("estimator", estimator);
    manifest.set("moment", moment);
    manifest.set("rc", rc ? "1" : "0");
    manifest.set("scales", std::to_string(resolved.requested.min) + ":" +
                               std::to_string(resolved.requested.max));
    entropy.describe(manifest);
  }
};

// Applies the resolved config, handling a degenerate scale 1 request.
MultiscaleProfile profile_for(const Signal& signal, const ProfileFlags::Resolved& resolved) {
  if (resolved.degenerate_first && resolved.requested.max < 2) {
    MultiscaleProfile p;
    p.config = resolved.config;
    p.config.scales = resolved.requested;
    p.tolerance_used = resolve_tolerance(signal, resolved.config.params);
    p.entries.push_back({1, EntropyValue::undefined(UndefinedCause::DegenerateScale)});
    return p;
  }
  MultiscaleProfile p = multiscale_profile(signal, resolved.config);
  if (resolved.degenerate_first) {
    p.entries.insert(p.entries.begin(),
                     ScaleEntry{1, EntropyValue::undefined(UndefinedCause::DegenerateScale)});
    p.config.scales = resolved.requested;
  }
  return p;
}

WindowedProfiles windows_for(const Signal& signal, std::size_t window, double overlap,
                             const ProfileFlags::Resolved& resolved) {
  WindowedProfiles w;
  if (resolved.degenerate_first && resolved.requested.max < 2) {
    // Nothing to compute; still validates the window geometry.
    MultiscaleConfig probe = resolved.config;
    probe.moment = Moment::Mean;
    probe.scales = {1, 1};
    w = sliding_window_profiles(signal, window, overlap, probe);
    for (auto& wp : w.profiles) {
      wp.profile.config = resolved.config;
      wp.profile.entries = {{1, EntropyValue::undefined(UndefinedCause::DegenerateScale)}};
    }
  } else {
    w = sliding_window_profiles(signal, window, overlap, resolved.config);
  }
  if (resolved.degenerate_first) {
    for (auto& wp : w.profiles) {
      if (wp.profile.entries.empty() || wp.profile.entries.front().tau != 1) {
        wp.profile.entries.insert(
            wp.profile.entries.begin(),
            ScaleEntry{1, EntropyValue::undefined(UndefinedCause::DegenerateScale)});
      }
      wp.profile.config.scales = resolved.requested;
    }
  }
  return w;
}

struct GeneratorFlags {
  std::optional<long long> n;
  double fs = 150.0;
  double duration = 100.0;
  double f_start = 0.1;
  double f_end = 30.0;
  double rho_start = 0.9;
  double rho_end = -0.9;
  double p_start = 0.01;
  double p_end = 0.99;
  double alpha_start = 3.5;
  double alpha_end = 3.99;
  double x0 = 0.5;
  long long burn_in = 1000;
  long long seg_len = 7500;
  double rho_a = 28.0;
  double rho_b = 99.96;
  bool no_chain = false;

  void add_to(CLI::App& app) {
    app.add_option("--n", n, "Number of samples")->check(CLI::PositiveNumber);
    app.add_option("--fs", fs, "Sampling rate in Hz (chirp, lorenz)")->check(CLI::PositiveNumber);
    app.add_option("--duration", duration, "Duration in seconds (chirp)")
        ->check(CLI::PositiveNumber);
    app.add_option("--f-start", f_start, "Chirp start frequency (Hz)");
    app.add_option("--f-end", f_end, "Chirp end frequency (Hz)");
    app.add_option("--rho-start", rho_start, "AR(1) coefficient at the start");
    app.add_option("--rho-end", rho_end, "AR(1) coefficient at the end");
    app.add_option("--p-start", p_start, "MIX noise probability at the start");
    app.add_option("--p-end", p_end, "MIX noise probability at the end");
    app.add_option("--alpha-start", alpha_start, "Logistic parameter at the start");
    app.add_option("--alpha-end", alpha_end, "Logistic parameter at the end");
    app.add_option("--x0", x0, "Logistic initial value");
    app.add_option("--burn-in", burn_in, "Logistic iterations discarded before recording")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--seg-len", seg_len, "Lorenz samples per regime")->check(CLI::PositiveNumber);
    app.add_option("--rho-a", rho_a, "Lorenz rho of the first regime");
    app.add_option("--rho-b", rho_b, "Lorenz rho of the second regime");
    app.add_flag("--no-chain", no_chain,
                 "Start the second Lorenz regime from (1,1,1) instead of the first's end state");
  }

  std::size_t length_or(std::size_t fallback) const {
    return n ? static_cast<std::size_t>(*n) : fallback;
  }

  // Flags whose values the generator for `kind` validates.
  static std::string_view checked_flags(const std::string& kind) {
    if (kind == "chirp") return "--fs, --duration, --f-start, --f-end";
    if (kind == "ar1") return "--n, --rho-start, --rho-end";
    if (kind == "mix") return "--n, --p-start, --p-end";
    if (kind == "logistic") return "--n, --alpha-start, --alpha-end, --x0";
    if (kind == "lorenz") return "--fs, --seg-len, --rho-a, --rho-b";
    return "--n";
  }

  Signal generate(const std::string& kind, Seed seed) const {
    try {
      return generate_unchecked(kind, seed);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BadParam && e.kind() != ErrorKind::BadFrequency) throw;
      const std::string detail = e.what();
      throw Error(e.kind(), "check " + std::string(checked_flags(kind)) + ": " +
                                detail.substr(detail.find(": ") + 2));
    }
  }

  Signal generate_unchecked(const std::string& kind, Seed seed) const {
    if (kind == "wgn") return gen_wgn(length_or(40000), seed);
    if (kind == "1f") return gen_one_over_f(length_or(40000), seed);
    if (kind == "chirp") return gen_chirp(fs, duration, f_start, f_end);
    if (kind == "ar1") return gen_ar1_sweep(length_or(15000), rho_start, rho_end, seed);
    if (kind == "mix") return gen_mix(length_or(15000), p_start, p_end, seed);
    if (kind == "logistic") {
      return gen_logistic_sweep(length_or(15000), alpha_start, alpha_end, x0,
                                static_cast<std::size_t>(burn_in));
    }
    LorenzParams a;
    LorenzParams b;
    a.rho = rho_a;
    b.rho = rho_b;
    return gen_lorenz_two_regime(fs, static_cast<std::size_t>(seg_len), a, b, seed,
                                 TwoRegimeOptions{!no_chain});
  }

  void describe(RunManifest& manifest, const std::string& kind) const {
    manifest.set("kind", kind);
    if (kind == "wgn" || kind == "1f") {
      manifest.set("n", std::to_string(length_or(40000)));
    } else if (kind == "chirp") {
      manifest.set("fs", format_number(fs));
      manifest.set("duration", format_number(duration));
      manifest.set("f_start", format_number(f_start));
      manifest.set("f_end", format_number(f_end));
    } else if (kind == "ar1") {
      manifest.set("n", std::to_string(length_or(15000)));
      manifest.set("rho_start", format_number(rho_start));
      manifest.set("rho_end", format_number(rho_end));
    } else if (kind == "mix") {
      manifest.set("n", std::to_string(length_or(15000)));
      manifest.set("p_start", format_number(p_start));
      manifest.set("p_end", format_number(p_end));
    } else if (kind == "logistic") {
      manifest.set("n", std::to_string(length_or(15000)));
      manifest.set("alpha_start", format_number(alpha_start));
      manifest.set("alpha_end", format_number(alpha_end));
      manifest.set("x0", format_number(x0));
      manifest.set("burn_in", std::to_string(burn_in));
    } else {
      manifest.set("fs", format_number(fs));
      manifest.set("seg_len", std::to_string(seg_len));
      manifest.set("rho_a", format_number(rho_a));
      manifest.set("rho_b", format_number(rho_b));
      manifest.set("chain", no_chain ? "0" : "1");
    }
  }
};

const std::vector<std::string> kGeneratorKinds{"wgn", "1f", "chirp", "ar1", "mix", "logistic",
                                               "lorenz"};

// ---------------------------------------------------------------------------
// Output plumbing

// Writes a CSV either to a file (plus manifest sidecar) or to `stdout_stream`.
void emit_csv(const std::string& out_path, std::ostream& stdout_stream, std::ostream& err,
              RunManifest& manifest, const std::function<void(CsvWriter&)>& body) {
  if (out_path.empty() || out_path == "-") {
    CsvWriter csv(stdout_stream);
    manifest.write_header(csv);
    manifest.timed("write", [&] { body(csv); });
    err << manifest.timing_lines();
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw IoError("cannot open output file '" + out_path + "'");
  CsvWriter csv(file);
  manifest.write_header(csv);
  manifest.timed("write", [&] { body(csv); });
  file.close();
  if (!file) throw IoError("error while writing '" + out_path + "'");
  manifest.write_sidecar(out_path);
}

void write_entropy_cells(CsvWriter& csv, const EntropyValue& v) {
  if (v.is_finite()) {
    csv.cell(v.value()).cell(1);
  } else {
    csv.cell(std::optional<double>{}).cell(0);
  }
}

std::vector<Signal> load_signals(const std::vector<std::filesystem::path>& files) {
  std::vector<Signal> signals;
  signals.reserve(files.size());
  for (const auto& f : files) signals.push_back(read_signal_csv(f));
  return signals;
}

std::vector<MultiscaleProfile> profiles_for(const std::vector<Signal>& signals,
                                            const ProfileFlags::Resolved& resolved) {
  std::vector<std::optional<MultiscaleProfile>> slots(signals.size());
  parallel_for(signals.size(),
               [&](std::size_t i) { slots[i] = profile_for(signals[i], resolved); });
  std::vector<MultiscaleProfile> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::string join_command(const std::vector<std::string>& args) {
  std::string cmd = "mscale";
  for (const auto& a : args) cmd += " " + a;
  return cmd;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multiscale sample/fuzzy entropy toolkit", "mscale"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  // generate
  std::string gen_kind;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  GeneratorFlags gen_flags;
  auto* generate = app.add_subcommand("generate", "Write a synthetic test signal as CSV");
  generate->add_option("kind", gen_kind, "wgn | 1f | chirp | ar1 | mix | logistic | lorenz")
      ->required()
      ->check(CLI::IsMember(kGeneratorKinds));
  generate->add_option("--seed", gen_seed, "Random seed");
  generate->add_option("--out", gen_out, "Output CSV path (default stdout)");
  gen_flags.add_to(*generate);

  // entropy
  std::string ent_in;
  std::string ent_estimator = "fuzzy";
  EntropyFlags ent_flags;
  auto* entropy = app.add_subcommand("entropy", "Single-scale sample or fuzzy entropy");
  entropy->add_option("--in", ent_in, "Input CSV")->required();
  entropy->add_option("--estimator", ent_estimator, "sample | fuzzy")
      ->check(CLI::IsMember({"sample", "fuzzy"}));
  ent_flags.add_to(*entropy);

  // profile
  std::string prof_in;
  std::string prof_out;
  ProfileFlags prof_flags;
  auto* profile = app.add_subcommand("profile", "Multiscale entropy profile of one signal");
  profile->add_option("--in", prof_in, "Input CSV")->required();
  profile->add_option("--out", prof_out, "Output CSV path (default stdout)");
  prof_flags.add_to(*profile);

  // batch
  std::string batch_gen;
  std::string batch_glob;
  long long batch_realizations = 1;
  std::uint64_t batch_seed_base = 0;
  std::string batch_out;
  GeneratorFlags batch_gen_flags;
  ProfileFlags batch_flags;
  auto* batch = app.add_subcommand("batch", "Ensemble summary over many realizations");
  auto* batch_gen_opt = batch->add_option("--gen", batch_gen, "Generator kind")
                            ->check(CLI::IsMember(kGeneratorKinds));
  auto* batch_glob_opt = batch->add_option("--in-glob", batch_glob, "Glob of input CSV files");
  batch_gen_opt->excludes(batch_glob_opt);
  batch->add_option("--realizations", batch_realizations, "Number of generated realizations")
      ->check(CLI::PositiveNumber);
  batch->add_option("--seed-base", batch_seed_base, "Seed of the first realization");
  batch->add_option("--out", batch_out, "Output CSV path (default stdout)");
  batch_flags.add_to(*batch);
  // Generator flags other than --n clash with entropy flag names, so only the
  // length is exposed here; all other generator parameters keep their defaults.
  batch->add_option("--len", batch_gen_flags.n, "Generated signal length")
      ->check(CLI::PositiveNumber);

  // window
  std::string win_in;
  std::string win_out;
  long long win_len = 2000;
  double win_overlap = 0.9;
  ProfileFlags win_flags;
  auto* window = app.add_subcommand("window", "Sliding-window multiscale profiles");
  window->add_option("--in", win_in, "Input CSV")->required();
  window->add_option("--window", win_len, "Window length in samples");
  window->add_option("--overlap", win_overlap, "Overlap fraction in [0, 1)");
  window->add_option("--out", win_out, "Output CSV path (default stdout)");
  win_flags.add_to(*window);

  // compare
  std::string cmp_a;
  std::string cmp_b;
  std::string cmp_out;
  std::string cmp_scope = "all";
  ProfileFlags cmp_flags;
  auto* compare = app.add_subcommand("compare", "Per-scale Welch t-test between two groups");
  compare->add_option("--group-a", cmp_a, "Glob of group A CSV files")->required();
  compare->add_option("--group-b", cmp_b, "Glob of group B CSV files")->required();
  compare->add_option("--fdr-scope", cmp_scope,
                      "all: adjust jointly across emitted scales; none: no adjustment")
      ->check(CLI::IsMember({"all", "none"}));
  compare->add_option("--out", cmp_out, "Output CSV path (default stdout)");
  cmp_flags.add_to(*compare);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  RunManifest manifest(join_command(args));
  try {
    if (*generate) {
      gen_flags.describe(manifest, gen_kind);
      manifest.add_seed(gen_seed);
      const Signal signal =
          manifest.timed("generate", [&] { return gen_flags.generate(gen_kind, Seed{gen_seed}); });
      emit_csv(gen_out, out, err, manifest, [&](CsvWriter& csv) {
        csv.header({"sample"});
        for (double x : signal.samples()) {
          csv.cell(x);
          csv.end_row();
        }
      });
      return kExitOk;
    }

    if (*entropy) {
      const Signal signal = read_signal_csv(ent_in);
      const EntropyParams params = ent_flags.params();
      const EntropyValue v = ent_estimator == "sample" ? sample_entropy(signal, params)
                                                       : fuzzy_entropy(signal, params);
      if (v.is_finite()) {
        out << format_number(v.value()) << '\n';
      } else {
        out << "undefined:" << to_string(v.cause()) << '\n';
      }
      return kExitOk;
    }

    if (*profile) {
      const auto resolved = prof_flags.resolve();
      prof_flags.describe(manifest, resolved);
      manifest.set("input", prof_in);
      const Signal signal = manifest.timed("read", [&] { return read_signal_csv(prof_in); });
      const MultiscaleProfile p =
          manifest.timed("profile", [&] { return profile_for(signal, resolved); });
      manifest.set("tolerance", format_number(p.tolerance_used));
      emit_csv(prof_out, out, err, manifest, [&](CsvWriter& csv) {
        csv.header({"tau", "entropy", "defined"});
        for (const auto& e : p.entries) {
          csv.cell(e.tau);
          write_entropy_cells(csv, e.value);
          csv.end_row();
        }
      });
      return kExitOk;
    }

    if (*batch) {
      const auto resolved = batch_flags.resolve();
      if (batch_gen.empty() == batch_glob.empty()) {
        throw UsageError("batch: exactly one of --gen or --in-glob is required");
      }
      batch_flags.describe(manifest, resolved);
      std::vector<Signal> signals;
      if (!batch_gen.empty()) {
        batch_gen_flags.describe(manifest, batch_gen);
        manifest.set("realizations", std::to_string(batch_realizations));
        const auto count = static_cast<std::size_t>(batch_realizations);
        std::vector<std::optional<Signal>> slots(count);
        manifest.timed("generate", [&] {
          parallel_for(count, [&](std::size_t i) {
            slots[i] = batch_gen_flags.generate(batch_gen, Seed{batch_seed_base + i});
          });
        });
        for (std::size_t i = 0; i < count; ++i) {
          manifest.add_seed(batch_seed_base + i);
          signals.push_back(std::move(*slots[i]));
        }
      } else {
        const auto files = expand_glob(batch_glob);
        if (files.empty()) throw IoError("--in-glob '" + batch_glob + "' matched no files");
        manifest.set("inputs", batch_glob);
        manifest.set("realizations", std::to_string(files.size()));
        signals = manifest.timed("read", [&] { return load_signals(files); });
      }
      const auto profiles =
          manifest.timed("profiles", [&] { return profiles_for(signals, resolved); });
      const EnsembleSummary summary = summarize(profiles);
      emit_csv(batch_out, out, err, manifest, [&](CsvWriter& csv) {
        csv.header({"tau", "mean", "sd", "cv", "n_defined", "n_total"});
        for (const auto& row : summary.scales) {
          csv.cell(row.tau).cell(row.mean).cell(row.sd).cell(row.cv).cell(row.n_defined).cell(
              row.n_total);
          csv.end_row();
        }
      });
      return kExitOk;
    }

    if (*window) {
      const auto resolved = win_flags.resolve();
      if (win_len < 1) throw UsageError("--window: must be a positive number of samples");
      if (!(win_overlap >= 0.0 && win_overlap < 1.0)) {
        throw UsageError("--overlap: must lie in [0, 1)");
      }
      win_flags.describe(manifest, resolved);
      manifest.set("input", win_in);
      manifest.set("window", std::to_string(win_len));
      manifest.set("overlap", format_number(win_overlap));
      const Signal signal = manifest.timed("read", [&] { return read_signal_csv(win_in); });
      const WindowedProfiles w = manifest.timed("profiles", [&] {
        return windows_for(signal, static_cast<std::size_t>(win_len), win_overlap, resolved);
      });
      manifest.set("hop", std::to_string(w.hop));
      emit_csv(win_out, out, err, manifest, [&](CsvWriter& csv) {
        csv.header({"window_start", "tau", "entropy", "defined"});
        for (const auto& wp : w.profiles) {
          for (const auto& e : wp.profile.entries) {
            csv.cell(wp.start_index).cell(e.tau);
            write_entropy_cells(csv, e.value);
            csv.end_row();
          }
        }
      });
      return kExitOk;
    }

    if (*compare) {
      const auto resolved = cmp_flags.resolve();
      cmp_flags.describe(manifest, resolved);
      manifest.set("group_a", cmp_a);
      manifest.set("group_b", cmp_b);
      manifest.set("fdr_scope", cmp_scope);
      const auto files_a = expand_glob(cmp_a);
      const auto files_b = expand_glob(cmp_b);
      if (files_a.size() < 2 || files_b.size() < 2) {
        throw UsageError("compare: each group needs at least 2 files (got " +
                         std::to_string(files_a.size()) + " and " +
                         std::to_string(files_b.size()) + ")");
      }
      const auto signals_a = manifest.timed("read", [&] { return load_signals(files_a); });
      const auto signals_b = manifest.timed("read", [&] { return load_signals(files_b); });
      const auto profiles_a =
          manifest.timed("profiles", [&] { return profiles_for(signals_a, resolved); });
      const auto profiles_b =
          manifest.timed("profiles", [&] { return profiles_for(signals_b, resolved); });

      struct Row {
        int tau;
        std::optional<double> p_raw;
        std::optional<double> p_fdr;
      };
      std::vector<Row> rows;
      std::vector<double> usable;
      const std::size_t scales = profiles_a.front().entries.size();
      for (std::size_t s = 0; s < scales; ++s) {
        auto defined = [s](const std::vector<MultiscaleProfile>& ps) {
          std::vector<double> v;
          for (const auto& p : ps) {
            if (p.entries[s].value.is_finite()) v.push_back(p.entries[s].value.value());
          }
          return v;
        };
        Row row{profiles_a.front().entries[s].tau, std::nullopt, std::nullopt};
        try {
          row.p_raw = welch_t_test(defined(profiles_a), defined(profiles_b));
          usable.push_back(*row.p_raw);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::Degenerate) throw;
          err << "warning: tau=" << row.tau << " skipped: " << e.what() << '\n';
        }
        rows.push_back(row);
      }
      const std::vector<double> adjusted =
          cmp_scope == "all" ? bh_fdr_adjust(usable) : usable;
      std::size_t k = 0;
      for (auto& row : rows) {
        if (row.p_raw) row.p_fdr = adjusted[k++];
      }
      emit_csv(cmp_out, out, err, manifest, [&](CsvWriter& csv) {
        csv.header({"tau", "p_raw", "p_fdr", "log10_p_fdr"});
        for (const auto& row : rows) {
          csv.cell(row.tau).cell(row.p_raw).cell(row.p_fdr);
          csv.cell(row.p_fdr ? std::optional<double>(std::log10(*row.p_fdr)) : std::nullopt);
          csv.end_row();
        }
      });
      if (usable.empty()) {
        err << "error: no scale had at least 2 usable profiles with nonzero variance per group\n";
        return kExitUsage;
      }
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
  return kExitUsage;
}

}  // namespace mscale::cli
