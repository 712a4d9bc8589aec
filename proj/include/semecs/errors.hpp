#pragma once

#include <stdexcept>
#include <string>

namespace semecs {

enum class Errc {
  kOracleRefused,
  kMalformedEncoding,
  kRngFailure,
  kKeyExhausted,
  kStatePersistFailure,
  kDuplicateBeta,
  kEmptyMessage,
  kNotExtractable,
  kCorruptState,
  kIoFailure,
  kStaleState,
  kUnsupportedCombo,
  kInvalidArgument,
};

const char* errc_name(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  [[nodiscard]] Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace semecs
