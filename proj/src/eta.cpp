#include "semecs/eta.hpp"

#include <algorithm>

#include "semecs/errors.hpp"

namespace semecs {

namespace {

Scalar eta_challenge(const Suite& suite, ByteView msg, std::uint64_t j, ByteView x) {
  return suite.h0().eval(concat({msg, be_bytes(j, 8), x}));
}

}  // namespace

ByteView EtaPublicKey::token(std::uint64_t j) const {
  const std::size_t n = suite.group.scalar_len();
  return ByteView(tokens).subspan(j * n, n);
}

Scalar eta_chain_next(const Suite& suite, const Scalar& r) {
  return suite.h0().eval(r.bytes());
}

EtaKeyPair eta_keygen(const Suite& suite, std::uint64_t K, RandomSource& rng) {
  Scalar y = suite.group.random_scalar(rng);
  Scalar r0 = suite.group.random_scalar(rng);
  EtaKeyPair kp = eta_keygen_from(suite, y, r0, K);
  y.wipe();
  r0.wipe();
  return kp;
}

EtaKeyPair eta_keygen_from(const Suite& suite, const Scalar& y, const Scalar& r0, std::uint64_t K) {
  if (K < 1 || K > (std::uint64_t{1} << 32)) {
    throw Error(Errc::kInvalidArgument, "K must lie in [1, 2^32]");
  }
  if (y.is_zero() || r0.is_zero()) {
    throw Error(Errc::kInvalidArgument, "y and r_0 must be non-zero");
  }
  const Group& g = suite.group;
  const Fdh h1 = suite.h1();
  const Element alpha = g.generator();

  EtaPublicKey pk{suite, g.exp(alpha, y), K, {}};
  pk.tokens.reserve(K * g.scalar_len());
  Scalar r = r0;
  for (std::uint64_t j = 0; j < K; ++j) {
    const Element R = g.exp(alpha, r);
    append(pk.tokens, h1.eval_encoded(R.bytes()));
    Scalar next = eta_chain_next(suite, r);
    r.wipe();
    r = next;
  }
  r.wipe();
  return EtaKeyPair{EtaSigningState{suite, y, r0, 0, K}, std::move(pk)};
}

EtaSignature eta_sign(EtaSigningState& state, ByteView msg, RandomSource& rng, CounterStore* store) {
  std::array<std::uint8_t, kEtaRandomnessLen> x{};
  rng.fill(x);
  return eta_sign_with_randomness(state, msg, x, store);
}

EtaSignature eta_sign_with_randomness(EtaSigningState& state, ByteView msg,
                                      const std::array<std::uint8_t, kEtaRandomnessLen>& x,
                                      CounterStore* store) {
  if (state.j >= state.K) {
    throw Error(Errc::kKeyExhausted,
                "all " + std::to_string(state.K) + " signatures of this key have been used");
  }
  const Group& g = state.suite.group;
  const std::uint64_t j = state.j;

  const Scalar e = eta_challenge(state.suite, msg, j, x);
  EtaSignature sig{g.scalar_sub_mul(state.r_cur, e, state.y), x, static_cast<std::uint32_t>(j)};

  // r_j is erased and index j spent even if persistence fails below.
  Scalar next = eta_chain_next(state.suite, state.r_cur);
  state.r_cur.wipe();
  state.r_cur = next;
  next.wipe();
  state.j = j + 1;
  detail::persist_advance(store, j);
  return sig;
}

bool eta_verify(const EtaPublicKey& pk, ByteView msg, const EtaSignature& sig) {
  if (sig.j >= pk.K) {
    return false;
  }
  const Group& g = pk.suite.group;
  const Scalar e = eta_challenge(pk.suite, msg, sig.j, sig.x);
  const Element R = g.double_exp(pk.Y, e, sig.s);
  return ct_equal(pk.token(sig.j), pk.suite.h1().eval_encoded(R.bytes()));
}

Bytes encode_eta_signature(const Group& group, const EtaSignature& sig) {
  Bytes out = group.encode(sig.s);
  append(out, sig.x);
  put_be(out, sig.j, kEtaIndexLen);
  return out;
}

EtaSignature decode_eta_signature(const Group& group, ByteView in) {
  const std::size_t n = group.scalar_len();
  if (in.size() != n + kEtaRandomnessLen + kEtaIndexLen) {
    throw Error(Errc::kMalformedEncoding, "eta signature has wrong length");
  }
  EtaSignature sig;
  sig.s = group.decode_scalar(in.first(n));
  std::copy_n(in.begin() + static_cast<std::ptrdiff_t>(n), kEtaRandomnessLen, sig.x.begin());
  sig.j = static_cast<std::uint32_t>(get_be(in.subspan(n + kEtaRandomnessLen)));
  return sig;
}

}  // namespace semecs
