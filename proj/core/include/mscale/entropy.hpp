#pragma once

#include <cstdint>
#include <string_view>
#include <variant>

#include "mscale/signal.hpp"

namespace mscale {

struct AbsoluteTolerance {
  double r;
};

/// Tolerance expressed as a multiple of the population SD of the signal.
struct RelativeTolerance {
  double factor;
};

using Tolerance = std::variant<AbsoluteTolerance, RelativeTolerance>;

struct EntropyParams {
  int m = 2;        // embedding dimension
  double n = 2.0;   // fuzzy power, ignored by sample entropy
  Tolerance tolerance = RelativeTolerance{0.15};

  /// Throws `Error(ErrorKind::InvalidParams)` on m < 1, n <= 0, or a
  /// non-positive tolerance value.
  void validate() const;
};

enum class UndefinedCause { NoMatches, TooShort, DegenerateScale };

std::string_view to_string(UndefinedCause cause) noexcept;

/// Either a finite entropy estimate or an explicit undefined marker.
class EntropyValue {
 public:
  static EntropyValue finite(double value);
  static EntropyValue undefined(UndefinedCause cause) noexcept;

  bool is_finite() const noexcept { return std::holds_alternative<double>(state_); }
  /// Precondition: is_finite().
  double value() const { return std::get<double>(state_); }
  /// Precondition: !is_finite().
  UndefinedCause cause() const { return std::get<UndefinedCause>(state_); }

  bool operator==(const EntropyValue&) const = default;

 private:
  explicit EntropyValue(std::variant<double, UndefinedCause> s) : state_(s) {}
  std::variant<double, UndefinedCause> state_;
};

/// Ordered-pair match counts for template lengths m and m+1, both taken over
/// the same N-m starting positions.
struct MatchCounts {
  std::uint64_t b_m = 0;
  std::uint64_t b_m1 = 0;
  std::uint64_t template_count = 0;

  bool operator==(const MatchCounts&) const = default;
};

struct PhiPair {
  double phi_m = 0.0;
  double phi_m1 = 0.0;
};

/// Resolves the tolerance once from the signal it will be applied to.
/// Relative tolerances use the population SD; a constant signal throws
/// `ZeroVariance`.
double resolve_tolerance(const Signal& signal, const EntropyParams& params);

/// Chebyshev-distance match counts with strict `distance < r`, self matches
/// excluded. Throws `TooShort` when N < m + 2.
MatchCounts sample_match_counts(const Signal& signal, int m, double r);

EntropyValue sample_entropy(const Signal& signal, const EntropyParams& params);
EntropyValue sample_entropy(const Signal& signal, int m, double r);

/// Average similarity exp(-d^n / r) between baseline-removed templates of
/// length m and m+1 (each template minus its own mean).
PhiPair fuzzy_phi(const Signal& signal, const EntropyParams& params, double r);

EntropyValue fuzzy_entropy(const Signal& signal, const EntropyParams& params);
EntropyValue fuzzy_entropy(const Signal& signal, int m, double n, double r);

}  // namespace mscale
