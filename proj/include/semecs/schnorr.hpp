#pragma once

// Classical Schnorr signatures with (s, e) transmitted:
//   R = alpha^r, e = H0(M || encode(R)), s = r - e*y mod q.

#include "semecs/bytes.hpp"
#include "semecs/fdh.hpp"
#include "semecs/group.hpp"
#include "semecs/rng.hpp"

namespace semecs {

struct SchnorrKeyPair {
  Suite suite;
  Scalar y;
  Element Y;
};

struct SchnorrSignature {
  Scalar s;
  Scalar e;
};

[[nodiscard]] SchnorrKeyPair schnorr_keygen(const Suite& suite, RandomSource& rng);
/// Deterministic keypair for a given secret (test seam and key import).
[[nodiscard]] SchnorrKeyPair schnorr_keypair_from_secret(const Suite& suite, const Scalar& y);

[[nodiscard]] SchnorrSignature schnorr_sign(const SchnorrKeyPair& kp, ByteView msg, RandomSource& rng);
/// Signs with a caller-chosen nonce r; optionally exposes the commitment R.
[[nodiscard]] SchnorrSignature schnorr_sign_with_nonce(const SchnorrKeyPair& kp, ByteView msg,
                                                       const Scalar& r, Element* commitment = nullptr);

[[nodiscard]] bool schnorr_verify(const Suite& suite, const Element& Y, ByteView msg,
                                  const SchnorrSignature& sig, Element* commitment = nullptr);

/// s || e
[[nodiscard]] Bytes encode_schnorr_signature(const Group& group, const SchnorrSignature& sig);
[[nodiscard]] SchnorrSignature decode_schnorr_signature(const Group& group, ByteView in);

}  // namespace semecs
