#include "semecs/digest.hpp"

#include <openssl/evp.h>

#include <memory>

#include "semecs/errors.hpp"

namespace semecs {
namespace {

const EVP_MD* fetch(DigestAlg alg) {
  // Fetched once; EVP_MD objects are immutable and thread-safe to share.
  static const EVP_MD* blake2s = EVP_MD_fetch(nullptr, "BLAKE2S-256", nullptr);
  static const EVP_MD* sha256 = EVP_MD_fetch(nullptr, "SHA256", nullptr);
  const EVP_MD* md = alg == DigestAlg::kBlake2s256 ? blake2s : sha256;
  if (md == nullptr) {
    throw Error(Errc::kUnsupportedCombo, std::string("digest unavailable: ") + std::string(digest_name(alg)));
  }
  return md;
}

struct CtxDeleter {
  void operator()(EVP_MD_CTX* ctx) const noexcept { EVP_MD_CTX_free(ctx); }
};

}  // namespace

Digest digest(DigestAlg alg, std::initializer_list<ByteView> parts) {
  thread_local std::unique_ptr<EVP_MD_CTX, CtxDeleter> ctx(EVP_MD_CTX_new());
  Digest out{};
  unsigned int len = 0;
  bool ok = ctx != nullptr && EVP_DigestInit_ex(ctx.get(), fetch(alg), nullptr) == 1;
  for (const auto& p : parts) {
    ok = ok && EVP_DigestUpdate(ctx.get(), p.data(), p.size()) == 1;
  }
  ok = ok && EVP_DigestFinal_ex(ctx.get(), out.data(), &len) == 1 && len == kDigestLen;
  if (!ok) {
    throw Error(Errc::kUnsupportedCombo, "digest computation failed");
  }
  return out;
}

std::string_view digest_name(DigestAlg alg) noexcept {
  switch (alg) {
    case DigestAlg::kBlake2s256: return "blake2s-256";
    case DigestAlg::kSha256: return "sha-256";
  }
  return "unknown";
}

std::optional<DigestAlg> digest_from_id(std::uint8_t id) noexcept {
  switch (id) {
    case 0x01: return DigestAlg::kBlake2s256;
    case 0x02: return DigestAlg::kSha256;
    default: return std::nullopt;
  }
}

}  // namespace semecs
