#include "semecs/fdh.hpp"

namespace semecs {

Fdh::Fdh(Group group, HashId id, DigestAlg alg)
    : group_(std::move(group)), id_(id), alg_(alg) {
  const unsigned wide_bits = 2 * group_.order_bits();
  wide_len_ = (wide_bits + 7) / 8;
  excess_bits_ = static_cast<unsigned>(8 * wide_len_ - wide_bits);
}

Scalar Fdh::eval(ByteView msg) const {
  const std::uint8_t domain = static_cast<std::uint8_t>(id_);
  Bytes suffix;
  Bytes wide(wide_len_);
  for (;;) {
    const Digest seed = digest(alg_, {ByteView(&domain, 1), msg, suffix});
    std::size_t filled = 0;
    for (std::uint32_t block = 0; filled < wide_len_; ++block) {
      const Bytes ctr = be_bytes(block, 4);
      const Digest d = digest(alg_, {seed, ctr});
      const std::size_t take = std::min(kDigestLen, wide_len_ - filled);
      std::copy_n(d.begin(), take, wide.begin() + static_cast<std::ptrdiff_t>(filled));
      filled += take;
    }
    wide[0] &= static_cast<std::uint8_t>(0xff >> excess_bits_);
    Scalar out = group_.reduce_wide(wide);
    if (!out.is_zero()) {
      return out;
    }
    suffix.push_back(0xff);
  }
}

Bytes Fdh::eval_encoded(ByteView msg) const { return group_.encode(eval(msg)); }

}  // namespace semecs
