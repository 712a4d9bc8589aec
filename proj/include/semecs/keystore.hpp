#pragma once

// On-disk formats. Every multi-octet integer is big-endian.
//
//   header   "SMKS" | version(1) | scheme(1) | group(1) | role(1)
//   params   digest_id(1) [ toy only: p(4) | q(4) | alpha(4) ]
//
//   public key     header | params | [K(8), K-time schemes] | Y | payload
//       schnorr    payload empty
//       eta        v_0 .. v_{K-1}                      (L octets each)
//       semecs     gamma_0 beta_0 .. gamma_{K-1} beta_{K-1}  (L octets each)
//
//   signer state   header | params | secret | j(8) | K(8) | tag(32)
//       schnorr    secret = y         role = secret, j = K = 0
//       eta        secret = y || r_j  role = state
//       semecs     secret = y         role = state
//       tag = BLAKE2s-256 of every preceding octet

#include <cstdint>
#include <filesystem>
#include <variant>

#include "semecs/bytes.hpp"
#include "semecs/counter_store.hpp"
#include "semecs/eta.hpp"
#include "semecs/fdh.hpp"
#include "semecs/schnorr.hpp"
#include "semecs/semecs.hpp"

namespace semecs {

enum class SchemeTag : std::uint8_t {
  kSchnorr = 0x01,
  kEta = 0x02,
  kSemecs = 0x03,
};

enum class KeyRole : std::uint8_t {
  kSecret = 0x01,
  kPublic = 0x02,
  kState = 0x03,
};

inline constexpr std::uint8_t kKeyFileVersion = 0x01;
inline constexpr std::size_t kKeyFileHeaderLen = 8;
inline constexpr std::size_t kIntegrityTagLen = 32;

struct KeyFileHeader {
  std::uint8_t version = kKeyFileVersion;
  SchemeTag scheme = SchemeTag::kSemecs;
  GroupId group = GroupId::kProduction;
  KeyRole role = KeyRole::kPublic;
};

[[nodiscard]] const char* scheme_name(SchemeTag tag) noexcept;

/// Reads and checks magic, version and tags. kMalformedEncoding otherwise.
[[nodiscard]] KeyFileHeader parse_header(ByteView file);

struct SignerStateRecord {
  SchemeTag scheme = SchemeTag::kSemecs;
  Suite suite;
  Bytes secret;
  std::uint64_t j = 0;
  std::uint64_t K = 0;
};

[[nodiscard]] Bytes encode_state(const SignerStateRecord& record);
/// kCorruptState on any inconsistency, including a bad tag or j > K.
[[nodiscard]] SignerStateRecord decode_state(ByteView file);

/// Atomic replace: write temp file, fsync, rename, fsync directory.
void save_state(const std::filesystem::path& path, const SignerStateRecord& record);
/// kIoFailure if unreadable, kCorruptState if invalid.
[[nodiscard]] SignerStateRecord load_state(const std::filesystem::path& path);

/// Compare-and-set j: expected_j -> expected_j + 1 under an exclusive lock.
/// kStaleState if the file holds another value, kKeyExhausted if
/// expected_j >= K.
void advance_counter(const std::filesystem::path& path, std::uint64_t expected_j);

/// advance_counter that also replaces the secret payload in the same
/// atomic write. kCorruptState if the new payload has the wrong length.
void advance_state(const std::filesystem::path& path, std::uint64_t expected_j, ByteView new_secret);

class FileCounterStore final : public CounterStore {
 public:
  explicit FileCounterStore(std::filesystem::path path) : path_(std::move(path)) {}
  void advance(std::uint64_t expected_j) override { advance_counter(path_, expected_j); }

 private:
  std::filesystem::path path_;
};

/// Persists an ETA signer: the counter together with the current chain
/// value, so the file never holds an erased r_j. Reads `state` at advance
/// time, after eta_sign has stepped it.
class EtaFileStore final : public CounterStore {
 public:
  EtaFileStore(std::filesystem::path path, const EtaSigningState& state)
      : path_(std::move(path)), state_(state) {}
  void advance(std::uint64_t expected_j) override;

 private:
  std::filesystem::path path_;
  const EtaSigningState& state_;
};

[[nodiscard]] SignerStateRecord to_record(const SchnorrKeyPair& kp);
[[nodiscard]] SignerStateRecord to_record(const EtaSigningState& state);
[[nodiscard]] SignerStateRecord to_record(const SemecsSigningState& state);
[[nodiscard]] SchnorrKeyPair schnorr_from_record(const SignerStateRecord& record);
[[nodiscard]] EtaSigningState eta_from_record(const SignerStateRecord& record);
[[nodiscard]] SemecsSigningState semecs_from_record(const SignerStateRecord& record);

struct SchnorrPublicKey {
  Suite suite;
  Element Y;
};

using PublicKey = std::variant<SchnorrPublicKey, EtaPublicKey, SemecsPublicKey>;

[[nodiscard]] Bytes encode_public_key(const SchnorrPublicKey& pk);
[[nodiscard]] Bytes encode_public_key(const EtaPublicKey& pk);
[[nodiscard]] Bytes encode_public_key(const SemecsPublicKey& pk);
/// kMalformedEncoding on any inconsistency. SEMECS keys come back with
/// their search index rebuilt (empty if betas collide).
[[nodiscard]] PublicKey decode_public_key(ByteView file);

/// Octets preceding Y in a public key file of this scheme and group.
[[nodiscard]] std::size_t public_key_header_len(SchemeTag scheme, const Group& group);
/// Octets of a signer state file excluding the secret payload.
[[nodiscard]] std::size_t state_overhead_len(const Group& group);

[[nodiscard]] Bytes read_file(const std::filesystem::path& path);
/// Same atomic replace discipline as save_state.
void write_file_atomic(const std::filesystem::path& path, ByteView data);

}  // namespace semecs
