#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace semecs {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

/// Constant-time equality. Lengths are treated as public.
[[nodiscard]] bool ct_equal(ByteView a, ByteView b) noexcept;

/// dst[i] ^= src[i]; sizes must match.
void xor_into(std::span<std::uint8_t> dst, ByteView src);

[[nodiscard]] Bytes concat(std::initializer_list<ByteView> parts);

void append(Bytes& out, ByteView part);

/// Appends v as a big-endian integer of exactly `width` octets.
void put_be(Bytes& out, std::uint64_t v, std::size_t width);
[[nodiscard]] Bytes be_bytes(std::uint64_t v, std::size_t width);
[[nodiscard]] std::uint64_t get_be(ByteView in) noexcept;

[[nodiscard]] std::string to_hex(ByteView in);
[[nodiscard]] Bytes from_hex(std::string_view hex);

[[nodiscard]] inline ByteView as_view(std::string_view s) noexcept {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}
[[nodiscard]] inline Bytes to_bytes(std::string_view s) {
  return {s.begin(), s.end()};
}

/// Zeroes memory in a way the optimizer cannot elide.
void secure_wipe(std::span<std::uint8_t> buf) noexcept;

}  // namespace semecs
