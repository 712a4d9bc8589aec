#include "semecs/schnorr.hpp"

#include "semecs/errors.hpp"

namespace semecs {

SchnorrKeyPair schnorr_keygen(const Suite& suite, RandomSource& rng) {
  return schnorr_keypair_from_secret(suite, suite.group.random_scalar(rng));
}

SchnorrKeyPair schnorr_keypair_from_secret(const Suite& suite, const Scalar& y) {
  if (y.is_zero()) {
    throw Error(Errc::kInvalidArgument, "private key must be non-zero");
  }
  const Group& g = suite.group;
  return SchnorrKeyPair{suite, y, g.exp(g.generator(), y)};
}

SchnorrSignature schnorr_sign(const SchnorrKeyPair& kp, ByteView msg, RandomSource& rng) {
  Scalar r = kp.suite.group.random_scalar(rng);
  SchnorrSignature sig = schnorr_sign_with_nonce(kp, msg, r);
  r.wipe();
  return sig;
}

SchnorrSignature schnorr_sign_with_nonce(const SchnorrKeyPair& kp, ByteView msg, const Scalar& r,
                                         Element* commitment) {
  const Group& g = kp.suite.group;
  const Element R = g.exp(g.generator(), r);
  const Scalar e = kp.suite.h0().eval(concat({msg, R.bytes()}));
  if (commitment != nullptr) {
    *commitment = R;
  }
  return SchnorrSignature{g.scalar_sub_mul(r, e, kp.y), e};
}

bool schnorr_verify(const Suite& suite, const Element& Y, ByteView msg, const SchnorrSignature& sig,
                    Element* commitment) {
  const Group& g = suite.group;
  const Element R = g.double_exp(Y, sig.e, sig.s);
  if (commitment != nullptr) {
    *commitment = R;
  }
  const Scalar e = suite.h0().eval(concat({msg, R.bytes()}));
  return e == sig.e;
}

Bytes encode_schnorr_signature(const Group& group, const SchnorrSignature& sig) {
  return concat({group.encode(sig.s), group.encode(sig.e)});
}

SchnorrSignature decode_schnorr_signature(const Group& group, ByteView in) {
  const std::size_t n = group.scalar_len();
  if (in.size() != 2 * n) {
    throw Error(Errc::kMalformedEncoding, "schnorr signature has wrong length");
  }
  return SchnorrSignature{group.decode_scalar(in.first(n)), group.decode_scalar(in.subspan(n))};
}

}  // namespace semecs
