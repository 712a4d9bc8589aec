#pragma once

#include <cstdint>

namespace semecs {

/// Durable home of a signer's counter. Stateful signers call advance()
/// before a signature leaves the signer; a failed or interrupted advance
/// means the signature is never released.
class CounterStore {
 public:
  virtual ~CounterStore() = default;
  /// Moves the persisted counter from expected_j to expected_j + 1.
  /// Throws Error(kStaleState) if the persisted value is not expected_j.
  virtual void advance(std::uint64_t expected_j) = 0;
};

/// No persistence; the in-memory counter is the only record.
class MemoryCounterStore final : public CounterStore {
 public:
  void advance(std::uint64_t) override {}
};

namespace detail {
/// Runs store.advance. kStaleState and kKeyExhausted pass through; any
/// other failure becomes kStatePersistFailure.
void persist_advance(CounterStore* store, std::uint64_t expected_j);
}  // namespace detail

}  // namespace semecs
