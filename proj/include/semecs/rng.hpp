#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace semecs {

/// Source of uniform random octets. Implementations throw Error(kRngFailure)
/// when they cannot deliver.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual void fill(std::span<std::uint8_t> out) = 0;
};

/// Operating-system randomness (libsodium randombytes).
class SystemRandom final : public RandomSource {
 public:
  SystemRandom();
  void fill(std::span<std::uint8_t> out) override;
};

/// ChaCha20 stream keyed from a 64-bit seed; reproducible runs for tests and benchmarks.
class SeededRandom final : public RandomSource {
 public:
  explicit SeededRandom(std::uint64_t seed);
  void fill(std::span<std::uint8_t> out) override;

 private:
  std::array<std::uint8_t, 32> key_{};
  std::uint64_t counter_ = 0;
};

}  // namespace semecs
