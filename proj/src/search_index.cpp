#include "semecs/search_index.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>

#include "semecs/errors.hpp"

namespace semecs {

std::vector<std::uint32_t> build_search_index(ByteView records, std::size_t stride,
                                              std::size_t offset, std::size_t width) {
  if (stride == 0 || records.size() % stride != 0 || offset + width > stride) {
    throw Error(Errc::kInvalidArgument, "inconsistent token layout");
  }
  const std::size_t count = records.size() / stride;
  auto key = [&](std::uint32_t i) { return records.data() + i * stride + offset; };

  std::vector<std::uint32_t> perm(count);
  std::iota(perm.begin(), perm.end(), 0U);
  std::sort(perm.begin(), perm.end(), [&](std::uint32_t a, std::uint32_t b) {
    return std::memcmp(key(a), key(b), width) < 0;
  });
  for (std::size_t i = 1; i < count; ++i) {
    if (std::memcmp(key(perm[i - 1]), key(perm[i]), width) == 0) {
      throw Error(Errc::kDuplicateBeta, "tokens " + std::to_string(perm[i - 1]) + " and " +
                                            std::to_string(perm[i]) + " share a beta value");
    }
  }
  return perm;
}

}  // namespace semecs
