#include <unistd.h>

#include <filesystem>
#include <functional>

#include "doctest.h"
#include "semecs/errors.hpp"
#include "semecs/keystore.hpp"
#include "semecs/rng.hpp"

using namespace semecs;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("semecs_ks_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::kInvalidArgument;
}

}  // namespace

TEST_CASE("signer state round-trips for every scheme and group") {
  SeededRandom rng(1);
  for (const Group& g : {Group::toy_default(), Group::generate_toy(20, 4), Group::production()}) {
    const Suite suite{g, DigestAlg::kSha256};
    const auto skp = schnorr_keygen(suite, rng);
    auto ekp = eta_keygen(suite, 5, rng);
    (void)eta_sign(ekp.state, to_bytes("m"), rng);
    SemecsKeygenOptions lenient;
    lenient.require_distinct_betas = false;
    auto mkp = semecs_keygen(suite, 5, rng, lenient);
    (void)semecs_sign(mkp.state, to_bytes("m"));

    const auto s1 = schnorr_from_record(decode_state(encode_state(to_record(skp))));
    CHECK(s1.y == skp.y);
    CHECK(s1.Y == skp.Y);
    CHECK(s1.suite.group.same_group(g));
    CHECK(s1.suite.digest == DigestAlg::kSha256);

    const auto e1 = eta_from_record(decode_state(encode_state(to_record(ekp.state))));
    CHECK(e1.y == ekp.state.y);
    CHECK(e1.r_cur == ekp.state.r_cur);
    CHECK(e1.j == 1);
    CHECK(e1.K == 5);

    const auto m1 = semecs_from_record(decode_state(encode_state(to_record(mkp.state))));
    CHECK(m1.y == mkp.state.y);
    CHECK(m1.j == 1);
    CHECK(m1.K == 5);

    const Bytes file = encode_state(to_record(mkp.state));
    CHECK(file.size() == state_overhead_len(g) + g.scalar_len());
    CHECK(parse_header(file).scheme == SchemeTag::kSemecs);
    CHECK(parse_header(file).role == KeyRole::kState);
  }
}

TEST_CASE("production SEMECS secret is 32 octets") {
  SeededRandom rng(2);
  const Suite suite{Group::production()};
  auto kp = semecs_keygen(suite, 2, rng);
  CHECK(to_record(kp.state).secret.size() == 32);
}

TEST_CASE("any corruption of a state file is detected") {
  SeededRandom rng(3);
  const Suite suite{Group::production()};
  auto kp = semecs_keygen(suite, 3, rng);
  const Bytes file = encode_state(to_record(kp.state));
  for (std::size_t i = 0; i < file.size(); ++i) {
    Bytes bad = file;
    bad[i] ^= 0x04;
    CHECK(code_of([&] { (void)decode_state(bad); }) == Errc::kCorruptState);
  }
  CHECK(code_of([&] { (void)decode_state(ByteView(file).first(file.size() - 1)); }) == Errc::kCorruptState);
  CHECK(code_of([&] { (void)decode_state(Bytes{}); }) == Errc::kCorruptState);
}

TEST_CASE("state with j beyond K or a foreign scheme is refused") {
  SeededRandom rng(4);
  const Suite suite{Group::toy_default()};
  SignerStateRecord rec{SchemeTag::kSemecs, suite, Bytes{3}, 5, 4};
  CHECK(code_of([&] { (void)decode_state(encode_state(rec)); }) == Errc::kCorruptState);
  rec.j = 4;
  const auto ok = decode_state(encode_state(rec));
  CHECK(ok.j == 4);
  CHECK(code_of([&] { (void)eta_from_record(ok); }) == Errc::kInvalidArgument);
  SignerStateRecord zero{SchemeTag::kSemecs, suite, Bytes{0}, 0, 4};
  CHECK(code_of([&] { (void)decode_state(encode_state(zero)); }) == Errc::kCorruptState);
  SignerStateRecord wrong_len{SchemeTag::kEta, suite, Bytes{3}, 0, 4};
  CHECK(code_of([&] { (void)encode_state(wrong_len); }) == Errc::kInvalidArgument);
}

TEST_CASE("public keys round-trip and have the documented size") {
  SeededRandom rng(5);
  const Group g = Group::toy_default();
  const Suite suite{g};
  SemecsKeygenOptions lenient;
  lenient.require_distinct_betas = false;
  const auto kp = semecs_keygen(suite, 8, rng, lenient);
  const Bytes file = encode_public_key(kp.pk);
  CHECK(file.size() == public_key_header_len(SchemeTag::kSemecs, g) + 17 * g.scalar_len());
  const auto pk = std::get<SemecsPublicKey>(decode_public_key(file));
  CHECK(pk.Y == kp.pk.Y);
  CHECK(pk.tokens == kp.pk.tokens);
  CHECK(pk.K == 8);
  CHECK(pk.search_index.has_value() == kp.pk.search_index.has_value());

  const auto ekp = eta_keygen(suite, 6, rng);
  const auto epk = std::get<EtaPublicKey>(decode_public_key(encode_public_key(ekp.pk)));
  CHECK(epk.tokens == ekp.pk.tokens);
  CHECK(epk.K == 6);

  const auto skp = schnorr_keygen(suite, rng);
  const auto spk = std::get<SchnorrPublicKey>(decode_public_key(encode_public_key(SchnorrPublicKey{suite, skp.Y})));
  CHECK(spk.Y == skp.Y);
}

TEST_CASE("production SEMECS public key rebuilds its search index") {
  SeededRandom rng(6);
  const Suite suite{Group::production()};
  const auto kp = semecs_keygen(suite, 16, rng);
  const auto pk = std::get<SemecsPublicKey>(decode_public_key(encode_public_key(kp.pk)));
  REQUIRE(pk.search_index.has_value());
  CHECK(*pk.search_index == *kp.pk.search_index);
}

TEST_CASE("malformed public keys are rejected") {
  SeededRandom rng(7);
  const Suite suite{Group::production()};
  const auto kp = semecs_keygen(suite, 2, rng);
  const Bytes file = encode_public_key(kp.pk);
  auto code = [&](const Bytes& b) { return code_of([&] { (void)decode_public_key(b); }); };
  CHECK(code(Bytes(file.begin(), file.end() - 1)) == Errc::kMalformedEncoding);
  Bytes longer = file;
  longer.push_back(0);
  CHECK(code(longer) == Errc::kMalformedEncoding);
  for (std::size_t i : {0u, 4u, 5u, 6u, 7u, 8u}) {
    Bytes bad = file;
    bad[i] = 0x7e;
    CHECK(code(bad) == Errc::kMalformedEncoding);
  }
  // K field claims zero.
  Bytes zero_k = file;
  std::fill(zero_k.begin() + 9, zero_k.begin() + 17, 0);
  CHECK(code(zero_k) == Errc::kMalformedEncoding);
  // Y not a group element.
  Bytes bad_y = file;
  bad_y[17] |= 0x01;
  bad_y[48] |= 0x80;
  CHECK(code(bad_y) == Errc::kMalformedEncoding);
  // A state file is not a public key.
  CHECK(code(encode_state(to_record(kp.state))) == Errc::kMalformedEncoding);
  // Toy parameters that do not form a group.
  const Bytes toy = encode_public_key(SchnorrPublicKey{Suite{Group::toy_default()}, Group::toy_default().generator()});
  Bytes bad_p = toy;
  bad_p[12] = 22;
  CHECK(code(bad_p) == Errc::kMalformedEncoding);
}

TEST_CASE("save and load use atomic replacement") {
  TempDir dir;
  const fs::path path = dir.path / "key.sk";
  const Suite suite{Group::toy_default()};
  SignerStateRecord rec{SchemeTag::kSemecs, suite, Bytes{3}, 0, 4};
  save_state(path, rec);
  CHECK(load_state(path).j == 0);
  rec.j = 2;
  save_state(path, rec);
  CHECK(load_state(path).j == 2);
  CHECK_FALSE(fs::exists(dir.path / "key.sk.tmp"));
  CHECK((fs::status(path).permissions() & fs::perms::others_read) == fs::perms::none);
  CHECK(code_of([&] { (void)load_state(dir.path / "missing.sk"); }) == Errc::kIoFailure);
}

TEST_CASE("advance_counter is a compare-and-set") {
  TempDir dir;
  const fs::path path = dir.path / "key.sk";
  const Suite suite{Group::toy_default()};
  save_state(path, SignerStateRecord{SchemeTag::kSemecs, suite, Bytes{3}, 0, 2});
  advance_counter(path, 0);
  CHECK(load_state(path).j == 1);
  CHECK(code_of([&] { advance_counter(path, 0); }) == Errc::kStaleState);
  CHECK(load_state(path).j == 1);
  FileCounterStore store(path);
  store.advance(1);
  CHECK(load_state(path).j == 2);
  CHECK(code_of([&] { advance_counter(path, 2); }) == Errc::kKeyExhausted);
  CHECK(load_state(path).j == 2);
}

TEST_CASE("two signers on one state file never share an index") {
  TempDir dir;
  const fs::path path = dir.path / "key.sk";
  SeededRandom rng(8);
  const Suite suite{Group::production()};
  auto kp = semecs_keygen(suite, 6, rng);
  save_state(path, to_record(kp.state));
  FileCounterStore store(path);
  SemecsSigningState a = semecs_from_record(load_state(path));
  SemecsSigningState b = semecs_from_record(load_state(path));
  const auto env = semecs_sign(a, to_bytes("first"), &store);
  CHECK(env.j == 0);
  CHECK(code_of([&] { (void)semecs_sign(b, to_bytes("second"), &store); }) == Errc::kStaleState);
  // The stale signer reloads and continues after the fresh index.
  b = semecs_from_record(load_state(path));
  CHECK(semecs_sign(b, to_bytes("second"), &store).j == 1);
}

TEST_CASE("write_file_atomic replaces contents") {
  TempDir dir;
  const fs::path path = dir.path / "blob";
  write_file_atomic(path, Bytes{1, 2, 3});
  write_file_atomic(path, Bytes{4});
  CHECK(read_file(path) == Bytes{4});
  CHECK(code_of([&] { write_file_atomic(dir.path / "no" / "such" / "dir", Bytes{1}); }) == Errc::kIoFailure);
}

TEST_CASE("ETA file store persists the stepped chain value with the counter") {
  TempDir dir;
  const fs::path path = dir.path / "eta.sk";
  SeededRandom rng(9);
  const Suite suite{Group::production()};
  auto kp = eta_keygen(suite, 5, rng);
  save_state(path, to_record(kp.state));
  for (int i = 0; i < 5; ++i) {
    EtaSigningState state = eta_from_record(load_state(path));
    EtaFileStore store(path, state);
    const Bytes msg = be_bytes(static_cast<std::uint64_t>(i), 2);
    const auto sig = eta_sign(state, msg, rng, &store);
    CHECK(sig.j == static_cast<std::uint32_t>(i));
    CHECK(eta_verify(kp.pk, msg, sig));
    const auto reloaded = eta_from_record(load_state(path));
    CHECK(reloaded.j == state.j);
    CHECK(reloaded.r_cur == state.r_cur);
  }
  EtaSigningState state = eta_from_record(load_state(path));
  CHECK(code_of([&] { (void)eta_sign(state, to_bytes("m"), rng); }) == Errc::kKeyExhausted);
  CHECK(code_of([&] { advance_state(path, 5, Bytes(64, 1)); }) == Errc::kKeyExhausted);
  save_state(path, to_record(kp.state));
  CHECK(code_of([&] { advance_state(path, 0, Bytes(3, 1)); }) == Errc::kCorruptState);
}
