#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "semecs/bytes.hpp"
#include "semecs/group.hpp"

namespace semecs::detail {

/// Result buffer; the first scalar_len / element_len octets are meaningful.
using Buf = std::array<std::uint8_t, 32>;

class GroupBackend {
 public:
  virtual ~GroupBackend() = default;

  virtual GroupId id() const noexcept = 0;
  virtual std::optional<ToyParams> toy_params() const noexcept { return std::nullopt; }
  virtual std::string describe() const = 0;
  virtual std::size_t scalar_len() const noexcept = 0;
  virtual std::size_t element_len() const noexcept = 0;
  virtual unsigned order_bits() const noexcept = 0;
  virtual Buf order() const = 0;

  virtual Buf generator() const = 0;
  virtual Buf identity() const = 0;
  virtual Buf exp(ByteView base, ByteView k) const = 0;
  virtual Buf double_exp(ByteView y, ByteView e, ByteView s) const = 0;
  virtual Buf mul(ByteView a, ByteView b) const = 0;

  virtual Buf scalar_from_u64(std::uint64_t v) const = 0;
  virtual Buf scalar_add(ByteView a, ByteView b) const = 0;
  virtual Buf scalar_sub(ByteView a, ByteView b) const = 0;
  virtual Buf scalar_mul(ByteView a, ByteView b) const = 0;
  /// Precondition: a != 0.
  virtual Buf scalar_inverse(ByteView a) const = 0;
  virtual Buf reduce_wide(ByteView be) const = 0;

  virtual bool scalar_canonical(ByteView s) const = 0;
  virtual bool element_valid(ByteView e) const = 0;
};

std::shared_ptr<const GroupBackend> make_toy_backend(const ToyParams& params);
std::shared_ptr<const GroupBackend> production_backend();

}  // namespace semecs::detail
