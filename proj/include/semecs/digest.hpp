#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string_view>

#include "semecs/bytes.hpp"

namespace semecs {

/// Underlying 256-bit digest. The numeric value is serialized in key files.
enum class DigestAlg : std::uint8_t {
  kBlake2s256 = 0x01,
  kSha256 = 0x02,
};

inline constexpr std::size_t kDigestLen = 32;
using Digest = std::array<std::uint8_t, kDigestLen>;

/// Digest of the concatenation of `parts`.
[[nodiscard]] Digest digest(DigestAlg alg, std::initializer_list<ByteView> parts);

[[nodiscard]] std::string_view digest_name(DigestAlg alg) noexcept;
[[nodiscard]] std::optional<DigestAlg> digest_from_id(std::uint8_t id) noexcept;

}  // namespace semecs
