#include <cmath>
#include <functional>
#include <tuple>

#include "doctest.h"
#include "oracles.hpp"
#include "semecs/errors.hpp"
#include "semecs/rng.hpp"
#include "semecs/semecs.hpp"

using namespace semecs;

namespace {

using oracle::Octets;

Octets oct(ByteView b) { return {b.begin(), b.end()}; }

Octets xor_oct(Octets a, const Octets& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] ^= b[i];
  return a;
}

// Naive model of the scheme over any group, parameterised by the group
// operations so it can run against modpow or libsodium.
struct Model {
  Octets q;
  std::function<Octets(const Octets&)> base_exp;  // alpha^k, k big-endian
  std::function<Octets(const Octets&, const Octets&, const Octets&)> sub_mul;
  std::size_t L;

  Octets r(const Octets& y, std::uint64_t j) const { return oracle::fdh(q, 0, oracle::cat({y, oracle::be(j, 8)})); }
  Octets z(const Octets& y, std::uint64_t j) const { return oracle::fdh(q, 1, oracle::cat({y, oracle::be(j, 8)})); }
  Octets gamma(const Octets& y, std::uint64_t j) const {
    const Octets R = base_exp(r(y, j));
    return xor_oct(z(y, j), oracle::fdh(q, 0, R));
  }
  Octets beta(const Octets& y, std::uint64_t j) const { return oracle::fdh(q, 1, base_exp(r(y, j))); }

  // Returns (s, c, m_tilde, padded).
  std::tuple<Octets, Octets, Octets, bool> sign(const Octets& y, std::uint64_t j, const Octets& msg) const {
    Octets m_bar, m_tilde;
    bool padded = msg.size() < L;
    if (padded) {
      m_bar = msg;
      m_bar.push_back(0x80);
      m_bar.resize(L, 0);
    } else {
      m_bar.assign(msg.begin(), msg.begin() + static_cast<std::ptrdiff_t>(L));
      m_tilde.assign(msg.begin() + static_cast<std::ptrdiff_t>(L), msg.end());
    }
    const Octets c = xor_oct(m_bar, z(y, j));
    const Octets e = oracle::fdh(q, 0, oracle::cat({Octets{static_cast<std::uint8_t>(padded)}, c, m_tilde}));
    return {sub_mul(r(y, j), e, y), c, m_tilde, padded};
  }
};

Model toy_model() {
  Model m;
  m.q = {11};
  m.L = 1;
  m.base_exp = [](const Octets& k) { return oracle::be(oracle::modpow(2, oracle::to_u64(k), 23), 1); };
  m.sub_mul = [](const Octets& a, const Octets& b, const Octets& c) {
    const auto v = (oracle::to_u64(a) + 121 - oracle::to_u64(b) * oracle::to_u64(c) % 11) % 11;
    return oracle::be(v, 1);
  };
  return m;
}

Model prod_model() {
  Model m;
  m.q = oracle::ristretto_order();
  m.L = 32;
  m.base_exp = oracle::rist_base;
  m.sub_mul = oracle::scalar_sub_mul;
  return m;
}

SemecsKeygenOptions lenient() {
  SemecsKeygenOptions o;
  o.require_distinct_betas = false;
  return o;
}

}  // namespace

TEST_CASE("toy public key and transcripts match the naive model") {
  const Suite suite{Group::toy_default()};
  const Group& g = suite.group;
  const Model m = toy_model();
  for (std::uint64_t y = 1; y <= 10; ++y) {
    auto kp = semecs_keygen_from_secret(suite, g.scalar(y), 16, lenient());
    const Octets yo = oracle::be(y, 1);
    CHECK(g.toy_value(kp.pk.Y) == oracle::modpow(2, y, 23));
    REQUIRE(kp.pk.tokens.size() == 32);
    for (std::uint64_t j = 0; j < 16; ++j) {
      CHECK(oct(kp.pk.gamma(j)) == m.gamma(yo, j));
      CHECK(oct(kp.pk.beta(j)) == m.beta(yo, j));
    }
    for (std::uint64_t j = 0; j < 16; ++j) {
      const Octets msg = oracle::be(j * 37 + y, 1 + j % 3);
      const auto env = semecs_sign(kp.state, msg);
      const auto [s, c, mt, padded] = m.sign(yo, j, msg);
      CHECK(oct(env.s) == s);
      CHECK(oct(env.c) == c);
      CHECK(oct(env.m_tilde) == mt);
      CHECK(env.padded == padded);
      const auto res = semecs_verify_indexed(kp.pk, env);
      CHECK(res.accepted);
      CHECK(oct(res.message) == msg);
    }
  }
}

TEST_CASE("production public key and transcripts match the libsodium model") {
  const Suite suite{Group::production()};
  const Group& g = suite.group;
  const Model m = prod_model();
  SeededRandom rng(1);
  const Scalar y = g.random_scalar(rng);
  auto kp = semecs_keygen_from_secret(suite, y, 8);
  const Octets yo = oct(y.bytes());
  CHECK(oct(kp.pk.Y.bytes()) == oracle::rist_base(yo));
  for (std::uint64_t j = 0; j < 8; ++j) {
    CHECK(oct(kp.pk.gamma(j)) == m.gamma(yo, j));
    CHECK(oct(kp.pk.beta(j)) == m.beta(yo, j));
  }
  for (std::size_t len : {1u, 5u, 31u, 32u, 33u, 100u}) {
    Bytes msg(len);
    rng.fill(msg);
    const std::uint64_t j = kp.state.j;
    const auto env = semecs_sign(kp.state, msg);
    const auto [s, c, mt, padded] = m.sign(yo, j, oct(msg));
    CHECK(oct(env.s) == s);
    CHECK(oct(env.c) == c);
    CHECK(oct(env.m_tilde) == mt);
    CHECK(env.padded == padded);
  }
}

TEST_CASE("message split and join") {
  for (std::size_t len : {1u, 31u, 32u, 33u, 96u}) {
    Bytes msg(len, 0x5a);
    const auto split = split_message(msg, 32);
    CHECK(split.m_bar.size() == 32);
    CHECK(split.padded == (len < 32));
    CHECK(split.m_tilde.size() == (len < 32 ? 0 : len - 32));
    CHECK(join_message(split.m_bar, split.m_tilde, split.padded) == msg);
  }
  // Trailing zero octets survive padding.
  const Bytes zeros{0x01, 0x00, 0x00};
  const auto split = split_message(zeros, 8);
  CHECK(join_message(split.m_bar, split.m_tilde, true) == zeros);
  // Malformed padding.
  CHECK_FALSE(join_message(Bytes(8, 0), {}, true).has_value());
  CHECK_FALSE(join_message(Bytes{0x80, 0, 0, 1}, {}, true).has_value());
  CHECK_FALSE(join_message(Bytes{0x80, 0, 0, 0}, Bytes{1}, true).has_value());
  CHECK(join_message(Bytes{0x80, 0, 0, 0}, {}, true) == Bytes{});
  CHECK_THROWS_AS((void)split_message({}, 32), Error);
}

TEST_CASE("round trip over lengths on production; both verification paths agree") {
  const Suite suite{Group::production()};
  SeededRandom rng(2);
  const std::uint64_t K = 64;
  auto kp = semecs_keygen(suite, K, rng);
  REQUIRE(kp.pk.search_index.has_value());
  const auto bound = static_cast<unsigned>(std::ceil(std::log2(static_cast<double>(K)))) + 1;
  for (std::uint64_t j = 0; j < K; ++j) {
    Bytes msg(1 + (j * 13) % 100);
    rng.fill(msg);
    const auto env = semecs_sign(kp.state, msg);
    CHECK(env.j == j);
    const auto a = semecs_verify_indexed(kp.pk, env);
    const auto b = semecs_verify_search(kp.pk, env);
    CHECK(a.accepted);
    CHECK(b.accepted);
    CHECK(a.message == msg);
    CHECK(b.message == msg);
    CHECK(b.j == j);
    CHECK(b.comparisons <= bound);
    const auto back = decode_envelope(encode_envelope(env), 32);
    CHECK(semecs_verify_indexed(kp.pk, back).message == msg);
  }
}

TEST_CASE("every single-field mangling is rejected") {
  const Suite suite{Group::production()};
  SeededRandom rng(3);
  auto kp = semecs_keygen(suite, 8, rng);
  for (std::size_t len : {10u, 40u}) {
    Bytes msg(len);
    rng.fill(msg);
    const auto env = semecs_sign(kp.state, msg);
    const Bytes wire = encode_envelope(env);
    for (std::size_t i = 0; i < wire.size(); ++i) {
      for (std::uint8_t bit : {0x01, 0x80}) {
        Bytes w = wire;
        w[i] ^= bit;
        SignedEnvelope mangled;
        try {
          mangled = decode_envelope(w, 32);
        } catch (const Error&) {
          continue;
        }
        const auto a = semecs_verify_indexed(kp.pk, mangled);
        const auto b = semecs_verify_search(kp.pk, mangled);
        if (i >= 1 && i < 5) {
          // j is not authenticated by the search path, only located.
          CHECK_FALSE(a.accepted);
          CHECK(b.accepted);
          CHECK(b.message == msg);
        } else {
          CHECK_FALSE(a.accepted);
          CHECK_FALSE(b.accepted);
        }
      }
    }
    // Removing or adding a trailing octet.
    if (!env.m_tilde.empty()) {
      SignedEnvelope shorter = env;
      shorter.m_tilde.pop_back();
      CHECK_FALSE(semecs_verify_indexed(kp.pk, shorter).accepted);
    }
    SignedEnvelope longer = env;
    longer.m_tilde.push_back(0);
    CHECK_FALSE(semecs_verify_indexed(kp.pk, longer).accepted);
  }
}

TEST_CASE("padding flag is bound into the challenge") {
  const Suite suite{Group::production()};
  SeededRandom rng(4);
  auto kp = semecs_keygen(suite, 2, rng);
  // A 31-octet message whose last octet is 0x80 could otherwise be read
  // either way.
  Bytes msg(32, 0x11);
  msg[31] = 0x80;
  const auto env = semecs_sign(kp.state, msg);
  CHECK_FALSE(env.padded);
  SignedEnvelope flipped = env;
  flipped.padded = true;
  CHECK_FALSE(semecs_verify_indexed(kp.pk, flipped).accepted);
  CHECK(semecs_challenge(suite, flipped) != semecs_challenge(suite, env));
}

TEST_CASE("signing performs no group operation; verify one double_exp; keygen K+1 exps") {
  const Group g = Group::production().with_fresh_counter();
  const Suite suite{g};
  SeededRandom rng(5);
  OpCounts before = g.counter().snapshot();
  auto kp = semecs_keygen(suite, 20, rng);
  CHECK(g.counter().snapshot() - before == OpCounts{21, 0, 0});
  before = g.counter().snapshot();
  std::vector<SignedEnvelope> envs;
  for (int i = 0; i < 20; ++i) envs.push_back(semecs_sign(kp.state, to_bytes("payload")));
  CHECK(g.counter().snapshot() - before == OpCounts{});
  before = g.counter().snapshot();
  CHECK(semecs_verify_indexed(kp.pk, envs[3]).accepted);
  CHECK(g.counter().snapshot() - before == OpCounts{0, 1, 0});
  before = g.counter().snapshot();
  CHECK(semecs_verify_search(kp.pk, envs[4]).accepted);
  CHECK(g.counter().snapshot() - before == OpCounts{0, 1, 0});
}

TEST_CASE("exhaustion and empty messages") {
  const Suite suite{Group::toy_default()};
  auto kp = semecs_keygen_from_secret(suite, suite.group.scalar(3), 4, lenient());
  try {
    (void)semecs_sign(kp.state, {});
    FAIL("expected EmptyMessage");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kEmptyMessage);
  }
  CHECK(kp.state.j == 0);
  for (int i = 0; i < 4; ++i) (void)semecs_sign(kp.state, to_bytes("m"));
  try {
    (void)semecs_sign(kp.state, to_bytes("m"));
    FAIL("expected KeyExhausted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kKeyExhausted);
    CHECK(std::string(e.what()).find('4') != std::string::npos);
  }
}

TEST_CASE("colliding betas: strict keygen fails, lenient keygen drops the index") {
  const Suite suite{Group::toy_default()};
  SeededRandom rng(6);
  try {
    (void)semecs_keygen(suite, 16, rng);
    FAIL("expected DuplicateBeta");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kDuplicateBeta);
  }
  auto kp = semecs_keygen(suite, 16, rng, lenient());
  CHECK_FALSE(kp.pk.search_index.has_value());
  const auto env = semecs_sign(kp.state, to_bytes("hi"));
  CHECK(semecs_verify_indexed(kp.pk, env).accepted);
  CHECK_FALSE(semecs_verify_search(kp.pk, env).accepted);
}

TEST_CASE("keygen is deterministic in the secret") {
  const Suite suite{Group::production()};
  const Scalar y = suite.group.scalar(123456789);
  const auto a = semecs_keygen_from_secret(suite, y, 4);
  const auto b = semecs_keygen_from_secret(suite, y, 4);
  CHECK(a.pk.tokens == b.pk.tokens);
  CHECK(a.pk.Y == b.pk.Y);
  CHECK(a.pk.tokens.size() == 2 * 4 * 32);
  CHECK_THROWS_AS((void)semecs_keygen_from_secret(suite, y, 0), Error);
  CHECK_THROWS_AS((void)semecs_keygen_from_secret(suite, suite.group.scalar(0), 1), Error);
}

TEST_CASE("extraction recovers y from two transcripts at one index") {
  const Suite suite{Group::toy_default()};
  const Group& g = suite.group;
  for (std::uint64_t y = 1; y <= 10; ++y) {
    auto kp = semecs_keygen_from_secret(suite, g.scalar(y), 4, lenient());
    SemecsSigningState copy = kp.state;
    bool found = false;
    for (std::uint8_t m = 1; m < 40 && !found; ++m) {
      SemecsSigningState s1 = copy, s2 = copy;
      const auto a = semecs_sign(s1, Bytes{0x00});
      const auto b = semecs_sign(s2, Bytes{m});
      const Transcript ta{semecs_challenge(suite, a), g.decode_scalar(a.s)};
      const Transcript tb{semecs_challenge(suite, b), g.decode_scalar(b.s)};
      if (ta.e == tb.e) {
        CHECK_THROWS_AS((void)extract_private_key(g, kp.pk.Y, ta, tb), Error);
        continue;
      }
      const Scalar got = extract_private_key(g, kp.pk.Y, ta, tb);
      CHECK(g.toy_value(got) == y);
      CHECK(g.exp(g.generator(), got) == kp.pk.Y);
      found = true;
    }
    CHECK(found);
  }
}

TEST_CASE("extraction refuses transcripts from different indices") {
  const Suite suite{Group::production()};
  const Group& g = suite.group;
  SeededRandom rng(7);
  auto kp = semecs_keygen(suite, 4, rng);
  const auto a = semecs_sign(kp.state, to_bytes("one"));
  const auto b = semecs_sign(kp.state, to_bytes("two"));
  const Transcript ta{semecs_challenge(suite, a), g.decode_scalar(a.s)};
  const Transcript tb{semecs_challenge(suite, b), g.decode_scalar(b.s)};
  try {
    (void)extract_private_key(g, kp.pk.Y, ta, tb);
    FAIL("expected NotExtractable");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kNotExtractable);
  }
  try {
    (void)extract_private_key(g, kp.pk.Y, ta, ta);
    FAIL("expected NotExtractable");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kNotExtractable);
  }
}

TEST_CASE("envelope wire format") {
  SignedEnvelope env;
  env.j = 0x01020304;
  env.padded = true;
  env.s = Bytes(32, 0xaa);
  env.c = Bytes(32, 0xbb);
  const Bytes wire = encode_envelope(env);
  REQUIRE(wire.size() == kEnvelopeHeaderLen + 64);
  CHECK(Bytes(wire.begin(), wire.begin() + 6) == Bytes{0x01, 0x01, 0x02, 0x03, 0x04, 0x01});
  const auto back = decode_envelope(wire, 32);
  CHECK(back.j == env.j);
  CHECK(back.padded);
  CHECK(back.s == env.s);
  CHECK(back.c == env.c);
  CHECK(back.m_tilde.empty());

  Bytes bad = wire;
  bad[0] = 0x02;
  CHECK_THROWS_AS((void)decode_envelope(bad, 32), Error);
  bad = wire;
  bad[5] = 0x02;
  CHECK_THROWS_AS((void)decode_envelope(bad, 32), Error);
  bad = wire;
  bad.push_back(0x00);  // remainder on a padded envelope
  CHECK_THROWS_AS((void)decode_envelope(bad, 32), Error);
  CHECK_THROWS_AS((void)decode_envelope(ByteView(wire).first(wire.size() - 1), 32), Error);
  SignedEnvelope no_j = env;
  no_j.j.reset();
  CHECK_THROWS_AS((void)encode_envelope(no_j), Error);
}

TEST_CASE("verification rejects envelopes with out-of-range index or wrong sizes") {
  const Suite suite{Group::production()};
  SeededRandom rng(8);
  auto kp = semecs_keygen(suite, 4, rng);
  auto env = semecs_sign(kp.state, to_bytes("z"));
  SignedEnvelope e1 = env;
  e1.j = 4;
  CHECK_FALSE(semecs_verify_indexed(kp.pk, e1).accepted);
  SignedEnvelope e2 = env;
  e2.j.reset();
  CHECK_FALSE(semecs_verify_indexed(kp.pk, e2).accepted);
  CHECK(semecs_verify_search(kp.pk, e2).accepted);
  SignedEnvelope e3 = env;
  e3.s.pop_back();
  CHECK_FALSE(semecs_verify_indexed(kp.pk, e3).accepted);
  SignedEnvelope e4 = env;
  e4.s = Bytes(32, 0xff);  // non-canonical scalar
  CHECK_FALSE(semecs_verify_indexed(kp.pk, e4).accepted);
}
