#include "numsparse/error.hpp"

namespace numsparse {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ZeroSignal: return "ZeroSignal";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::TotalMismatch: return "TotalMismatch";
    case ErrorKind::InvalidQ: return "InvalidQ";
    case ErrorKind::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorKind::EmptyBatch: return "EmptyBatch";
    case ErrorKind::AllZero: return "AllZero";
    case ErrorKind::NoEta0: return "NoEta0";
    case ErrorKind::PilotFailure: return "PilotFailure";
    case ErrorKind::QTooCloseToOne: return "QTooCloseToOne";
    case ErrorKind::NonPositiveNormEstimate: return "NonPositiveNormEstimate";
    case ErrorKind::InvalidAlpha: return "InvalidAlpha";
    case ErrorKind::InvalidKappa: return "InvalidKappa";
    case ErrorKind::WrongQ: return "WrongQ";
    case ErrorKind::InvalidDims: return "InvalidDims";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::Numerical: return "Numerical";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace numsparse
