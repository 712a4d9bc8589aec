#include "semecs/errors.hpp"

namespace semecs {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::kOracleRefused: return "OracleRefused";
    case Errc::kMalformedEncoding: return "MalformedEncoding";
    case Errc::kRngFailure: return "RngFailure";
    case Errc::kKeyExhausted: return "KeyExhausted";
    case Errc::kStatePersistFailure: return "StatePersistFailure";
    case Errc::kDuplicateBeta: return "DuplicateBeta";
    case Errc::kEmptyMessage: return "EmptyMessage";
    case Errc::kNotExtractable: return "NotExtractable";
    case Errc::kCorruptState: return "CorruptState";
    case Errc::kIoFailure: return "IoFailure";
    case Errc::kStaleState: return "StaleState";
    case Errc::kUnsupportedCombo: return "UnsupportedCombo";
    case Errc::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace semecs
