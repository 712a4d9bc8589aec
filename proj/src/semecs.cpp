#include "semecs/semecs.hpp"

#include <cstring>

#include "semecs/errors.hpp"
#include "semecs/search_index.hpp"

namespace semecs {
namespace {

Bytes secret_input(const Scalar& y, std::uint64_t j) {
  Bytes in(y.bytes().begin(), y.bytes().end());
  put_be(in, j, 8);
  return in;
}

// Steps shared by both verification routes once R' and j are known.
VerifyResult finish_verify(const SemecsPublicKey& pk, std::uint64_t j, const Bytes& beta_candidate,
                           const Element& R, const SignedEnvelope& env) {
  VerifyResult out;
  if (!ct_equal(pk.beta(j), beta_candidate)) {
    return out;
  }
  Bytes m_bar(pk.gamma(j).begin(), pk.gamma(j).end());
  xor_into(m_bar, pk.suite.h0().eval_encoded(R.bytes()));
  xor_into(m_bar, env.c);
  auto message = join_message(m_bar, env.m_tilde, env.padded);
  if (!message) {
    return out;
  }
  out.accepted = true;
  out.j = static_cast<std::uint32_t>(j);
  out.message = std::move(*message);
  return out;
}

// R' = Y^e alpha^s, or nullopt when the envelope is malformed.
std::optional<Element> recompute_commitment(const SemecsPublicKey& pk, const SignedEnvelope& env) {
  const Group& g = pk.suite.group;
  const std::size_t n = g.scalar_len();
  if (env.version != kEnvelopeVersion || env.c.size() != n || env.s.size() != n) {
    return std::nullopt;
  }
  if (env.padded && !env.m_tilde.empty()) {
    return std::nullopt;
  }
  Scalar s;
  try {
    s = g.decode_scalar(env.s);
  } catch (const Error&) {
    return std::nullopt;
  }
  return g.double_exp(pk.Y, semecs_challenge(pk.suite, env), s);
}

}  // namespace

ByteView SemecsPublicKey::gamma(std::uint64_t j) const {
  const std::size_t n = suite.group.scalar_len();
  return ByteView(tokens).subspan(2 * n * j, n);
}

ByteView SemecsPublicKey::beta(std::uint64_t j) const {
  const std::size_t n = suite.group.scalar_len();
  return ByteView(tokens).subspan(2 * n * j + n, n);
}

void SemecsPublicKey::rebuild_search_index() {
  const std::size_t n = suite.group.scalar_len();
  try {
    search_index = build_search_index(tokens, 2 * n, n, n);
  } catch (const Error& e) {
    if (e.code() != Errc::kDuplicateBeta) throw;
    search_index.reset();
  }
}

SemecsKeyPair semecs_keygen(const Suite& suite, std::uint64_t K, RandomSource& rng,
                            const SemecsKeygenOptions& options) {
  for (unsigned attempt = 1;; ++attempt) {
    Scalar y = suite.group.random_scalar(rng);
    try {
      SemecsKeyPair kp = semecs_keygen_from_secret(suite, y, K, options);
      y.wipe();
      return kp;
    } catch (const Error& e) {
      y.wipe();
      if (e.code() != Errc::kDuplicateBeta || attempt >= options.max_attempts) throw;
    }
  }
}

SemecsKeyPair semecs_keygen_from_secret(const Suite& suite, const Scalar& y, std::uint64_t K,
                                        const SemecsKeygenOptions& options) {
  if (K < 1 || K > (std::uint64_t{1} << 32)) {
    throw Error(Errc::kInvalidArgument, "K must lie in [1, 2^32]");
  }
  if (y.is_zero()) {
    throw Error(Errc::kInvalidArgument, "private key must be non-zero");
  }
  const Group& g = suite.group;
  const std::size_t n = g.scalar_len();
  const Fdh h0 = suite.h0();
  const Fdh h1 = suite.h1();
  const Element alpha = g.generator();

  SemecsPublicKey pk{suite, g.exp(alpha, y), K, Bytes(2 * n * K), std::nullopt};
  for (std::uint64_t j = 0; j < K; ++j) {
    Bytes in = secret_input(y, j);
    Scalar r = h0.eval(in);
    Scalar z = h1.eval(in);
    const Element R = g.exp(alpha, r);

    std::uint8_t* gamma = pk.tokens.data() + 2 * n * j;
    std::uint8_t* beta = gamma + n;
    const Bytes mask = h0.eval_encoded(R.bytes());
    for (std::size_t i = 0; i < n; ++i) {
      gamma[i] = z.bytes()[i] ^ mask[i];
    }
    const Bytes b = h1.eval_encoded(R.bytes());
    std::memcpy(beta, b.data(), n);

    r.wipe();
    z.wipe();
    secure_wipe(in);
  }
  if (options.require_distinct_betas) {
    pk.search_index = build_search_index(pk.tokens, 2 * n, n, n);
  } else {
    pk.rebuild_search_index();
  }
  return SemecsKeyPair{SemecsSigningState{suite, y, 0, K}, std::move(pk)};
}

MessageSplit split_message(ByteView msg, std::size_t scalar_len) {
  if (msg.empty()) {
    throw Error(Errc::kEmptyMessage, "cannot sign an empty message");
  }
  MessageSplit out;
  if (msg.size() >= scalar_len) {
    out.m_bar.assign(msg.begin(), msg.begin() + static_cast<std::ptrdiff_t>(scalar_len));
    out.m_tilde.assign(msg.begin() + static_cast<std::ptrdiff_t>(scalar_len), msg.end());
    out.padded = false;
  } else {
    out.m_bar.assign(msg.begin(), msg.end());
    out.m_bar.push_back(kPadMarker);
    out.m_bar.resize(scalar_len, 0x00);
    out.padded = true;
  }
  return out;
}

std::optional<Bytes> join_message(ByteView m_bar, ByteView m_tilde, bool padded) {
  if (!padded) {
    return concat({m_bar, m_tilde});
  }
  if (!m_tilde.empty()) {
    return std::nullopt;
  }
  std::size_t end = m_bar.size();
  while (end > 0 && m_bar[end - 1] == 0x00) {
    --end;
  }
  if (end == 0 || m_bar[end - 1] != kPadMarker) {
    return std::nullopt;
  }
  return Bytes(m_bar.begin(), m_bar.begin() + static_cast<std::ptrdiff_t>(end - 1));
}

SignedEnvelope semecs_sign(SemecsSigningState& state, ByteView msg, CounterStore* store) {
  if (state.j >= state.K) {
    throw Error(Errc::kKeyExhausted,
                "all " + std::to_string(state.K) + " signatures of this key have been used");
  }
  const Group& g = state.suite.group;
  const std::uint64_t j = state.j;
  MessageSplit split = split_message(msg, g.scalar_len());

  // Index j is spent even if persistence fails below.
  state.j = j + 1;
  detail::persist_advance(store, j);

  Bytes in = secret_input(state.y, j);
  Scalar r = state.suite.h0().eval(in);
  Scalar z = state.suite.h1().eval(in);
  secure_wipe(in);

  SignedEnvelope env;
  env.j = static_cast<std::uint32_t>(j);
  env.padded = split.padded;
  env.c = std::move(split.m_bar);
  xor_into(env.c, z.bytes());
  env.m_tilde = std::move(split.m_tilde);
  const Scalar e = semecs_challenge(state.suite, env);
  env.s = g.encode(g.scalar_sub_mul(r, e, state.y));

  r.wipe();
  z.wipe();
  return env;
}

Scalar semecs_challenge(const Suite& suite, const SignedEnvelope& env) {
  const std::uint8_t flag = env.padded ? 0x01 : 0x00;
  return suite.h0().eval(concat({ByteView(&flag, 1), env.c, env.m_tilde}));
}

VerifyResult semecs_verify_indexed(const SemecsPublicKey& pk, const SignedEnvelope& env) {
  if (!env.j || *env.j >= pk.K) {
    return {};
  }
  const auto R = recompute_commitment(pk, env);
  if (!R) {
    return {};
  }
  return finish_verify(pk, *env.j, pk.suite.h1().eval_encoded(R->bytes()), *R, env);
}

VerifyResult semecs_verify_search(const SemecsPublicKey& pk, const SignedEnvelope& env) {
  if (!pk.search_index) {
    return {};
  }
  const auto R = recompute_commitment(pk, env);
  if (!R) {
    return {};
  }
  const Bytes candidate = pk.suite.h1().eval_encoded(R->bytes());
  const auto& index = *pk.search_index;

  unsigned comparisons = 0;
  std::size_t lo = 0;
  std::size_t hi = index.size();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const ByteView beta = pk.beta(index[mid]);
    ++comparisons;
    const int cmp = std::memcmp(candidate.data(), beta.data(), beta.size());
    if (cmp == 0) {
      VerifyResult out = finish_verify(pk, index[mid], candidate, *R, env);
      out.comparisons = comparisons;
      return out;
    }
    if (cmp < 0) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  VerifyResult miss;
  miss.comparisons = comparisons;
  return miss;
}

Scalar extract_private_key(const Group& group, const Element& Y, const Transcript& a,
                           const Transcript& b) {
  if (a.e == b.e) {
    throw Error(Errc::kNotExtractable, "transcripts share the challenge e; system is singular");
  }
  const Scalar y = group.mul(group.sub(b.s, a.s), group.inverse(group.sub(a.e, b.e)));
  if (!(group.exp(group.generator(), y) == Y)) {
    throw Error(Errc::kNotExtractable, "transcripts do not open the same commitment under Y");
  }
  return y;
}

Bytes encode_envelope(const SignedEnvelope& env) {
  if (!env.j) {
    throw Error(Errc::kInvalidArgument, "envelope without index cannot be serialized");
  }
  Bytes out;
  out.reserve(kEnvelopeHeaderLen + env.s.size() + env.c.size() + env.m_tilde.size());
  out.push_back(env.version);
  put_be(out, *env.j, 4);
  out.push_back(env.padded ? 0x01 : 0x00);
  append(out, env.s);
  append(out, env.c);
  append(out, env.m_tilde);
  return out;
}

SignedEnvelope decode_envelope(ByteView in, std::size_t scalar_len) {
  if (in.size() < kEnvelopeHeaderLen + 2 * scalar_len) {
    throw Error(Errc::kMalformedEncoding, "envelope truncated");
  }
  if (in[0] != kEnvelopeVersion) {
    throw Error(Errc::kMalformedEncoding, "unknown envelope version");
  }
  if (in[5] > 0x01) {
    throw Error(Errc::kMalformedEncoding, "invalid padding flag");
  }
  SignedEnvelope env;
  env.version = in[0];
  env.j = static_cast<std::uint32_t>(get_be(in.subspan(1, 4)));
  env.padded = in[5] == 0x01;
  auto body = in.subspan(kEnvelopeHeaderLen);
  env.s.assign(body.begin(), body.begin() + static_cast<std::ptrdiff_t>(scalar_len));
  env.c.assign(body.begin() + static_cast<std::ptrdiff_t>(scalar_len),
               body.begin() + static_cast<std::ptrdiff_t>(2 * scalar_len));
  env.m_tilde.assign(body.begin() + static_cast<std::ptrdiff_t>(2 * scalar_len), body.end());
  if (env.padded && !env.m_tilde.empty()) {
    throw Error(Errc::kMalformedEncoding, "padded envelope carries a remainder");
  }
  return env;
}

}  // namespace semecs
