#pragma once

// Full-domain hashes H0, H1 : {0,1}* -> Z_q^*.
//
// Construction (expand-then-reduce):
//   seed  = D(id || msg [|| 0xFF ...])          id = 0x00 for H0, 0x01 for H1
//   block = D(seed || be32(0)) || D(seed || be32(1)) || ...
//   take the first ceil(2*|q|/8) octets, clear bits above 2*|q|,
//   reduce mod q as a big-endian integer. A zero result appends one more
//   0xFF octet to the input and derives again.

#include <cstdint>

#include "semecs/bytes.hpp"
#include "semecs/digest.hpp"
#include "semecs/group.hpp"

namespace semecs {

enum class HashId : std::uint8_t {
  kH0 = 0x00,
  kH1 = 0x01,
};

class Fdh {
 public:
  Fdh(Group group, HashId id, DigestAlg alg = DigestAlg::kBlake2s256);

  /// Deterministic output in [1, q-1].
  [[nodiscard]] Scalar eval(ByteView msg) const;
  /// encode(eval(msg)); exactly scalar_len octets.
  [[nodiscard]] Bytes eval_encoded(ByteView msg) const;

  [[nodiscard]] HashId id() const noexcept { return id_; }
  [[nodiscard]] DigestAlg alg() const noexcept { return alg_; }
  [[nodiscard]] const Group& group() const noexcept { return group_; }

 private:
  Group group_;
  HashId id_;
  DigestAlg alg_;
  std::size_t wide_len_;
  unsigned excess_bits_;
};

/// Group plus digest choice: everything a scheme needs to instantiate H0/H1.
struct Suite {
  Group group;
  DigestAlg digest = DigestAlg::kBlake2s256;

  [[nodiscard]] Fdh h0() const { return Fdh(group, HashId::kH0, digest); }
  [[nodiscard]] Fdh h1() const { return Fdh(group, HashId::kH1, digest); }
};

}  // namespace semecs
