#pragma once

#include <stdexcept>
#include <string>

namespace danc {

enum class ErrorCode {
  ZeroDistance,
  TruncatedPath,
  InvalidBand,
  NonPositivePower,
  AsymmetricAdjacency,
  NotANeighbor,
  DimensionMismatch,
  InconsistentBlock,
  ZeroReference,
  ConfigError,
  IoError,
};

const char* to_string(ErrorCode code);

/// Exception carrying a machine-checkable error code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace danc
