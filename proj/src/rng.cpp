#include "semecs/rng.hpp"

#include <sodium.h>

#include "semecs/errors.hpp"

namespace semecs {

SystemRandom::SystemRandom() {
  if (sodium_init() < 0) {
    throw Error(Errc::kRngFailure, "libsodium initialisation failed");
  }
}

void SystemRandom::fill(std::span<std::uint8_t> out) { randombytes_buf(out.data(), out.size()); }

SeededRandom::SeededRandom(std::uint64_t seed) {
  if (sodium_init() < 0) {
    throw Error(Errc::kRngFailure, "libsodium initialisation failed");
  }
  for (int i = 0; i < 8; ++i) {
    key_[i] = static_cast<std::uint8_t>(seed >> (8 * i));
  }
}

void SeededRandom::fill(std::span<std::uint8_t> out) {
  // A fresh nonce per request keeps successive outputs independent.
  std::array<std::uint8_t, randombytes_SEEDBYTES> block_key = key_;
  for (int i = 0; i < 8; ++i) {
    block_key[24 + i] = static_cast<std::uint8_t>(counter_ >> (8 * i));
  }
  ++counter_;
  randombytes_buf_deterministic(out.data(), out.size(), block_key.data());
}

}  // namespace semecs
