#pragma once

#include <cstdint>
#include <vector>

#include "semecs/bytes.hpp"

namespace semecs {

/// Permutation of 0..K-1 ordering the K fixed-width digests in `betas`
/// strictly ascending (lexicographic octet order). `betas` holds the
/// digests at a stride of `stride` octets, the digest itself being the
/// first `width` octets of each record. Throws kDuplicateBeta if two
/// digests are equal.
[[nodiscard]] std::vector<std::uint32_t> build_search_index(ByteView records, std::size_t stride,
                                                            std::size_t offset, std::size_t width);

}  // namespace semecs
