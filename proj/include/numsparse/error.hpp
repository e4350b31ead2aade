#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace numsparse {

enum class ErrorKind {
  ZeroSignal,
  LengthMismatch,
  TotalMismatch,
  InvalidQ,
  UnsupportedFamily,
  EmptyBatch,
  AllZero,
  NoEta0,
  PilotFailure,
  QTooCloseToOne,
  NonPositiveNormEstimate,
  InvalidAlpha,
  InvalidKappa,
  WrongQ,
  InvalidDims,
  InvalidArgument,
  InvalidConfig,
  Numerical,
  Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a machine-readable kind so
/// callers (the CLI, the Monte Carlo engine) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace numsparse
