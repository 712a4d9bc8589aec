#include "semecs/counter_store.hpp"

#include "semecs/errors.hpp"

namespace semecs {

namespace detail {

void persist_advance(CounterStore* store, std::uint64_t expected_j) {
  if (store == nullptr) {
    return;
  }
  try {
    store->advance(expected_j);
  } catch (const Error& e) {
    if (e.code() == Errc::kStaleState || e.code() == Errc::kKeyExhausted) {
      throw;
    }
    throw Error(Errc::kStatePersistFailure, e.what());
  } catch (const std::exception& e) {
    throw Error(Errc::kStatePersistFailure, e.what());
  }
}

}  // namespace detail

}  // namespace semecs
