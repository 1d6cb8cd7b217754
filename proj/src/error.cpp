#include "danc/error.hpp"

namespace danc {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroDistance: return "ZeroDistance";
    case ErrorCode::TruncatedPath: return "TruncatedPath";
    case ErrorCode::InvalidBand: return "InvalidBand";
    case ErrorCode::NonPositivePower: return "NonPositivePower";
    case ErrorCode::AsymmetricAdjacency: return "AsymmetricAdjacency";
    case ErrorCode::NotANeighbor: return "NotANeighbor";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InconsistentBlock: return "InconsistentBlock";
    case ErrorCode::ZeroReference: return "ZeroReference";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace danc
