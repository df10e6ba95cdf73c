#include <cmath>
#include <string>

#include "mscale/entropy.hpp"
#include "mscale/error.hpp"

namespace mscale {

std::string_view to_string(UndefinedCause cause) noexcept {
  switch (cause) {
    case UndefinedCause::NoMatches: return "NoMatches";
    case UndefinedCause::TooShort: return "TooShort";
    case UndefinedCause::DegenerateScale: return "DegenerateScale";
  }
  return "Unknown";
}

EntropyValue EntropyValue::finite(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorKind::NumericBlowup, "entropy value is not finite");
  }
  return EntropyValue(value == 0.0 ? 0.0 : value);  // -ln(1) is -0
}

EntropyValue EntropyValue::undefined(UndefinedCause cause) noexcept {
  return EntropyValue(cause);
}

void EntropyParams::validate() const {
  if (m < 1) {
    throw Error(ErrorKind::InvalidParams, "embedding dimension m must be >= 1");
  }
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorKind::InvalidParams, "fuzzy power n must be positive");
  }
  const double value = std::visit(
      [](const auto& t) {
        if constexpr (std::is_same_v<std::decay_t<decltype(t)>, AbsoluteTolerance>) {
          return t.r;
        } else {
          return t.factor;
        }
      },
      tolerance);
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorKind::InvalidParams, "tolerance must be positive");
  }
}

double resolve_tolerance(const Signal& signal, const EntropyParams& params) {
  params.validate();
  if (const auto* abs = std::get_if<AbsoluteTolerance>(&params.tolerance)) {
    return abs->r;
  }
  const double factor = std::get<RelativeTolerance>(params.tolerance).factor;
  if (signal.size() < 2) {
    throw Error(ErrorKind::TooShort, "relative tolerance needs at least 2 samples");
  }
  const double sd = population_sd(signal.samples());
  if (!(sd > 0.0)) {
    throw Error(ErrorKind::ZeroVariance, "signal is constant; relative tolerance would be 0");
  }
  return factor * sd;
}

}  // namespace mscale
