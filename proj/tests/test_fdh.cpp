#include <map>

#include "doctest.h"
#include "oracles.hpp"
#include "semecs/fdh.hpp"
#include "semecs/rng.hpp"

using namespace semecs;

namespace {

oracle::Octets oct(ByteView b) { return {b.begin(), b.end()}; }

}  // namespace

TEST_CASE("golden values on the production group") {
  const Group g = Group::production();
  const Fdh h0(g, HashId::kH0), h1(g, HashId::kH1);
  const Fdh s0(g, HashId::kH0, DigestAlg::kSha256), s1(g, HashId::kH1, DigestAlg::kSha256);
  const Bytes abc = to_bytes("abc");
  CHECK(to_hex(h0.eval_encoded(abc)) == "0e7d01541e6b7982dcd8d619cdb8730795a25db42fd8bc0482e39437243f2507");
  CHECK(to_hex(h0.eval_encoded({})) == "0a80c6c4a9e903712dbb12e2e8b9e3f9df5a4f8d848c3a1b03b6fa727007809a");
  CHECK(to_hex(h1.eval_encoded(abc)) == "0ec11baf2e96d4369b3272bb105e72b18c841e2e42eb6baaddd6d385076ba44e");
  CHECK(to_hex(h1.eval_encoded({})) == "0c195396c0f44ebe7c4dee7f5d30c63ff4ee13642a6628fa890a669a24c14759");
  CHECK(to_hex(s0.eval_encoded(abc)) == "06dc71ef55d8ebd06e5eda3621cc3319c6b60cbcee39f9b979be534ab66fe195");
  CHECK(to_hex(s0.eval_encoded({})) == "0060d20409c67630bf6035cf632a79f31643eba10428ef01d360793aceb18a48");
  CHECK(to_hex(s1.eval_encoded(abc)) == "0b562cfad08b4f87ba755deb6af85fdf7524b694b4cc03bc4d58569b16959a1e");
  CHECK(to_hex(s1.eval_encoded({})) == "016a7225271913edb3c547845f652e4093e95d8919efc2b833ea759f8b635ecd");
}

TEST_CASE("golden values on the canonical toy group") {
  const Group g = Group::toy_default();
  const Fdh h0(g, HashId::kH0), h1(g, HashId::kH1);
  const std::uint64_t want0[] = {3, 3, 5, 2, 4, 1};
  const std::uint64_t want1[] = {7, 2, 6, 8, 10, 8};
  for (std::uint8_t m = 0; m < 6; ++m) {
    CHECK(g.toy_value(h0.eval(Bytes{m})) == want0[m]);
    CHECK(g.toy_value(h1.eval(Bytes{m})) == want1[m]);
  }
}

TEST_CASE("agrees with the independent oracle on many inputs") {
  SeededRandom rng(11);
  const Group toys[] = {Group::toy_default(), Group::generate_toy(24, 1), Group::generate_toy(30, 2)};
  const Group prod = Group::production();
  for (int i = 0; i < 300; ++i) {
    Bytes msg(static_cast<std::size_t>(i % 97));
    rng.fill(msg);
    const int alg_id = 1 + i % 2;
    const DigestAlg alg = alg_id == 1 ? DigestAlg::kBlake2s256 : DigestAlg::kSha256;
    const auto id = static_cast<std::uint8_t>(i % 3 == 0);
    for (const Group& g : toys) {
      const Fdh h(g, static_cast<HashId>(id), alg);
      CHECK(oct(h.eval_encoded(msg)) == oracle::fdh(oct(g.order_bytes()), id, oct(msg), alg_id));
    }
    const Fdh h(prod, static_cast<HashId>(id), alg);
    CHECK(oct(h.eval_encoded(msg)) == oracle::fdh(oracle::ristretto_order(), id, oct(msg), alg_id));
  }
}

TEST_CASE("zero reductions are retried and match the oracle") {
  const Group g = Group::toy_default();
  const Fdh h0(g, HashId::kH0);
  int retried = 0;
  for (unsigned m = 0; m < 256; ++m) {
    const oracle::Octets msg{static_cast<std::uint8_t>(m)};
    const auto seed = oracle::hash(1, oracle::cat({{0x00}, msg}));
    const auto block = oracle::hash(1, oracle::cat({seed, oracle::be(0, 4)}));
    if (block[0] % 11 == 0) ++retried;
    const Scalar out = h0.eval(Bytes{static_cast<std::uint8_t>(m)});
    CHECK_FALSE(out.is_zero());
    CHECK(oct(out.bytes()) == oracle::fdh({11}, 0x00, msg));
  }
  CHECK(retried > 0);
}

TEST_CASE("outputs stay in [1, q-1] and cover the toy range") {
  const Group g = Group::toy_default();
  const Fdh h1(g, HashId::kH1);
  std::map<std::uint64_t, int> hist;
  for (unsigned m = 0; m < 2000; ++m) {
    const std::uint64_t v = g.toy_value(h1.eval(be_bytes(m, 4)));
    CHECK(v >= 1);
    CHECK(v <= 10);
    ++hist[v];
  }
  CHECK(hist.size() == 10);
  for (const auto& [v, n] : hist) {
    CHECK(n > 120);  // expected 200 each
  }
}

TEST_CASE("domain separation between H0, H1 and digests") {
  const Group g = Group::production();
  const Bytes msg = to_bytes("same input");
  const Fdh h0(g, HashId::kH0), h1(g, HashId::kH1), s0(g, HashId::kH0, DigestAlg::kSha256);
  CHECK(h0.eval(msg) != h1.eval(msg));
  CHECK(h0.eval(msg) != s0.eval(msg));
  CHECK(h0.eval(msg) == Fdh(g, HashId::kH0).eval(msg));
  CHECK(h0.eval_encoded(msg).size() == 32);
}

TEST_CASE("hashing performs no group operation") {
  const Group g = Group::production().with_fresh_counter();
  const Fdh h(g, HashId::kH0);
  for (int i = 0; i < 50; ++i) (void)h.eval(be_bytes(static_cast<std::uint64_t>(i), 8));
  CHECK(g.counter().snapshot() == OpCounts{});
}

TEST_CASE("suite builds both hashes on its group and digest") {
  const Suite suite{Group::toy_default(), DigestAlg::kSha256};
  CHECK(suite.h0().id() == HashId::kH0);
  CHECK(suite.h1().id() == HashId::kH1);
  CHECK(suite.h0().alg() == DigestAlg::kSha256);
}
