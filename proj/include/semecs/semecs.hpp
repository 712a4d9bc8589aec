#pragma once

// SEMECS: K-time Schnorr-type signatures whose signer performs no group
// operation.
//
// With L = scalar_len and jj = be64(j):
//   keygen  r_j = H0(encode(y) || jj)          R_j = alpha^{r_j}
//           z_j = H1(encode(y) || jj)
//           gamma_j = encode(z_j) XOR H0enc(encode(R_j))
//           beta_j  = H1enc(encode(R_j))
//   sign    (m_bar, m_tilde) = split(M)
//           c = m_bar XOR encode(z_j);  e = H0(pad || c || m_tilde);  s = r_j - e*y
//   verify  R' = Y^e alpha^s;  beta_j == H1enc(encode(R'))
//           m_bar = gamma_j XOR H0enc(encode(R')) XOR c
//
// The first L octets of the message ride inside c, so the only
// cryptographic overhead on the wire is s. `pad` is the envelope's padding
// flag octet; hashing it keeps a short padded message and an L-octet
// message ending in 0x80 0x00... from sharing one signature.

#include <cstdint>
#include <optional>
#include <vector>

#include "semecs/bytes.hpp"
#include "semecs/counter_store.hpp"
#include "semecs/fdh.hpp"
#include "semecs/group.hpp"
#include "semecs/rng.hpp"

namespace semecs {

inline constexpr std::uint8_t kEnvelopeVersion = 0x01;
/// version(1) || j(4) || padded(1)
inline constexpr std::size_t kEnvelopeHeaderLen = 6;
inline constexpr std::uint8_t kPadMarker = 0x80;

struct SemecsSigningState {
  Suite suite;
  Scalar y;
  std::uint64_t j = 0;
  std::uint64_t K = 0;
};

class SemecsPublicKey {
 public:
  Suite suite;
  Element Y;
  std::uint64_t K = 0;
  /// gamma_0 || beta_0 || gamma_1 || beta_1 || ..., L octets each.
  Bytes tokens;
  /// Token indices ordered by ascending beta; absent when betas collide.
  std::optional<std::vector<std::uint32_t>> search_index;

  [[nodiscard]] ByteView gamma(std::uint64_t j) const;
  [[nodiscard]] ByteView beta(std::uint64_t j) const;
  /// Rebuilds search_index from the tokens; leaves it empty on collision.
  void rebuild_search_index();
};

struct SemecsKeyPair {
  SemecsSigningState state;
  SemecsPublicKey pk;
};

struct SemecsKeygenOptions {
  /// Fail (kDuplicateBeta) rather than publish a key whose betas collide.
  bool require_distinct_betas = true;
  /// Fresh secrets drawn before giving up when betas collide.
  unsigned max_attempts = 8;
};

/// Signature plus the transmitted remainder of the message.
struct SignedEnvelope {
  std::uint8_t version = kEnvelopeVersion;
  std::optional<std::uint32_t> j;
  bool padded = false;
  Bytes s;
  Bytes c;
  Bytes m_tilde;
};

struct MessageSplit {
  Bytes m_bar;
  Bytes m_tilde;
  bool padded = false;
};

struct VerifyResult {
  bool accepted = false;
  std::optional<std::uint32_t> j;
  Bytes message;
  /// beta comparisons made by search-based verification.
  unsigned comparisons = 0;
};

struct Transcript {
  Scalar e;
  Scalar s;
};

[[nodiscard]] SemecsKeyPair semecs_keygen(const Suite& suite, std::uint64_t K, RandomSource& rng,
                                          const SemecsKeygenOptions& options = {});
/// Deterministic in y: the same secret always yields the same public key.
[[nodiscard]] SemecsKeyPair semecs_keygen_from_secret(const Suite& suite, const Scalar& y,
                                                      std::uint64_t K,
                                                      const SemecsKeygenOptions& options = {});

/// Throws kEmptyMessage for an empty message.
[[nodiscard]] MessageSplit split_message(ByteView msg, std::size_t scalar_len);
/// Inverse of split_message; nullopt if the padding is malformed.
[[nodiscard]] std::optional<Bytes> join_message(ByteView m_bar, ByteView m_tilde, bool padded);

/// Advances the counter (through `store`, when given) before returning.
/// A failed advance still consumes the index. Performs no group operation.
/// Throws kKeyExhausted once j reaches K.
[[nodiscard]] SignedEnvelope semecs_sign(SemecsSigningState& state, ByteView msg,
                                         CounterStore* store = nullptr);

[[nodiscard]] VerifyResult semecs_verify_indexed(const SemecsPublicKey& pk, const SignedEnvelope& env);
/// Ignores env.j; locates beta by binary search over the sorted betas.
[[nodiscard]] VerifyResult semecs_verify_search(const SemecsPublicKey& pk, const SignedEnvelope& env);

/// e = H0(pad || c || m_tilde)
[[nodiscard]] Scalar semecs_challenge(const Suite& suite, const SignedEnvelope& env);

/// Recovers y from two transcripts valid against one beta_j:
/// y = (s* - s) / (e - e*) mod q. Throws kNotExtractable when e == e* or the
/// result does not match Y.
[[nodiscard]] Scalar extract_private_key(const Group& group, const Element& Y, const Transcript& a,
                                         const Transcript& b);

[[nodiscard]] Bytes encode_envelope(const SignedEnvelope& env);
[[nodiscard]] SignedEnvelope decode_envelope(ByteView in, std::size_t scalar_len);

}  // namespace semecs
