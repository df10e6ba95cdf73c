#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mscale {

enum class ErrorKind {
  InvalidSignal,
  InvalidParams,
  ZeroVariance,
  TooShort,
  DegenerateScale,
  BadWindow,
  BadFrequency,
  BadParam,
  NumericBlowup,
  MixedConfigs,
  Degenerate,
  BadP,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries one of the kinds above so
// callers (the CLI in particular) can map it onto a stable exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mscale
