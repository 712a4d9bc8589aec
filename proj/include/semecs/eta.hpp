#pragma once

// ETA: Schnorr-style K-time signatures with hash-chained ephemeral scalars
// and per-signature randomness x_j.
//
//   keygen: r_{j+1} = H0(encode(r_j)), R_j = alpha^{r_j}, v_j = H1enc(encode(R_j))
//   sign:   e_j = H0(M || be64(j) || x_j), s_j = r_j - e_j*y, sigma = (s_j, x_j, j)
//   verify: R' = Y^{e_j} alpha^{s_j}; accept iff v_j == H1enc(encode(R'))

#include <array>
#include <cstdint>
#include <vector>

#include "semecs/bytes.hpp"
#include "semecs/counter_store.hpp"
#include "semecs/fdh.hpp"
#include "semecs/group.hpp"
#include "semecs/rng.hpp"

namespace semecs {

inline constexpr std::size_t kEtaRandomnessLen = 16;  // kappa = 128
inline constexpr std::size_t kEtaIndexLen = 4;

/// Signer state: y, the current chain value r_j, and the counter. Earlier
/// chain values are overwritten on every signature.
struct EtaSigningState {
  Suite suite;
  Scalar y;
  Scalar r_cur;
  std::uint64_t j = 0;
  std::uint64_t K = 0;
};

struct EtaPublicKey {
  Suite suite;
  Element Y;
  std::uint64_t K = 0;
  /// v_0 || v_1 || ... , scalar_len octets each.
  Bytes tokens;

  [[nodiscard]] ByteView token(std::uint64_t j) const;
};

struct EtaSignature {
  Scalar s;
  std::array<std::uint8_t, kEtaRandomnessLen> x{};
  std::uint32_t j = 0;
};

struct EtaKeyPair {
  EtaSigningState state;
  EtaPublicKey pk;
};

[[nodiscard]] EtaKeyPair eta_keygen(const Suite& suite, std::uint64_t K, RandomSource& rng);
[[nodiscard]] EtaKeyPair eta_keygen_from(const Suite& suite, const Scalar& y, const Scalar& r0,
                                         std::uint64_t K);

/// Throws kKeyExhausted once j reaches K. A failed counter advance still
/// consumes the index and erases r_j.
[[nodiscard]] EtaSignature eta_sign(EtaSigningState& state, ByteView msg, RandomSource& rng,
                                    CounterStore* store = nullptr);
[[nodiscard]] EtaSignature eta_sign_with_randomness(
    EtaSigningState& state, ByteView msg, const std::array<std::uint8_t, kEtaRandomnessLen>& x,
    CounterStore* store = nullptr);

[[nodiscard]] bool eta_verify(const EtaPublicKey& pk, ByteView msg, const EtaSignature& sig);

/// Chain step r -> H0(encode(r)).
[[nodiscard]] Scalar eta_chain_next(const Suite& suite, const Scalar& r);

/// s || x || be32(j)
[[nodiscard]] Bytes encode_eta_signature(const Group& group, const EtaSignature& sig);
[[nodiscard]] EtaSignature decode_eta_signature(const Group& group, ByteView in);

}  // namespace semecs
