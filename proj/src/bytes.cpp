#include "semecs/bytes.hpp"

#include <sodium.h>

#include "semecs/errors.hpp"

namespace semecs {

bool ct_equal(ByteView a, ByteView b) noexcept {
  if (a.size() != b.size()) {
    return false;
  }
  volatile std::uint8_t diff = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff = diff | static_cast<std::uint8_t>(a[i] ^ b[i]);
  }
  return diff == 0;
}

void xor_into(std::span<std::uint8_t> dst, ByteView src) {
  if (dst.size() != src.size()) {
    throw Error(Errc::kInvalidArgument, "xor operands differ in length");
  }
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] ^= src[i];
  }
}

Bytes concat(std::initializer_list<ByteView> parts) {
  std::size_t total = 0;
  for (const auto& p : parts) {
    total += p.size();
  }
  Bytes out;
  out.reserve(total);
  for (const auto& p : parts) {
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

void append(Bytes& out, ByteView part) { out.insert(out.end(), part.begin(), part.end()); }

void put_be(Bytes& out, std::uint64_t v, std::size_t width) {
  for (std::size_t i = width; i > 0; --i) {
    const std::size_t shift = 8 * (i - 1);
    out.push_back(shift >= 64 ? 0 : static_cast<std::uint8_t>(v >> shift));
  }
}

Bytes be_bytes(std::uint64_t v, std::size_t width) {
  Bytes out;
  out.reserve(width);
  put_be(out, v, width);
  return out;
}

std::uint64_t get_be(ByteView in) noexcept {
  std::uint64_t v = 0;
  for (auto b : in) {
    v = (v << 8) | b;
  }
  return v;
}

std::string to_hex(ByteView in) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(in.size() * 2);
  for (auto b : in) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0f]);
  }
  return out;
}

Bytes from_hex(std::string_view hex) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  if (hex.size() % 2 != 0) {
    throw Error(Errc::kMalformedEncoding, "odd-length hex string");
  }
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int hi = nibble(hex[2 * i]);
    const int lo = nibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) {
      throw Error(Errc::kMalformedEncoding, "invalid hex digit");
    }
    out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return out;
}

void secure_wipe(std::span<std::uint8_t> buf) noexcept {
  if (!buf.empty()) {
    sodium_memzero(buf.data(), buf.size());
  }
}

}  // namespace semecs
