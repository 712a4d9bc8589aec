#include <bit>
#include <sstream>

#include "group_backend.hpp"
#include "semecs/errors.hpp"

namespace semecs::detail {
namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m) noexcept {
  std::uint64_t acc = 1 % m;
  base %= m;
  while (e != 0) {
    if (e & 1) acc = mulmod(acc, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return acc;
}

std::size_t octets_for(std::uint64_t v) noexcept {
  return std::max<std::size_t>(1, (std::bit_width(v) + 7) / 8);
}

class ToyBackend final : public GroupBackend {
 public:
  explicit ToyBackend(const ToyParams& params)
      : params_(params),
        scalar_len_(octets_for(params.q)),
        element_len_(octets_for(params.p)),
        order_bits_(static_cast<unsigned>(std::bit_width(params.q))) {}

  GroupId id() const noexcept override { return GroupId::kToy; }
  std::optional<ToyParams> toy_params() const noexcept override { return params_; }
  std::string describe() const override {
    std::ostringstream os;
    os << "toy(p=" << params_.p << ", q=" << params_.q << ", alpha=" << params_.alpha << ")";
    return os.str();
  }
  std::size_t scalar_len() const noexcept override { return scalar_len_; }
  std::size_t element_len() const noexcept override { return element_len_; }
  unsigned order_bits() const noexcept override { return order_bits_; }
  Buf order() const override { return put(params_.q, scalar_len_); }

  Buf generator() const override { return put(params_.alpha, element_len_); }
  Buf identity() const override { return put(1, element_len_); }

  Buf exp(ByteView base, ByteView k) const override {
    return put(powmod(get_be(base), get_be(k), params_.p), element_len_);
  }

  Buf double_exp(ByteView y, ByteView e, ByteView s) const override {
    // Shamir's trick: one shared squaring chain over the bits of e and s.
    const std::uint64_t p = params_.p;
    const std::uint64_t yv = get_be(y);
    const std::uint64_t ev = get_be(e);
    const std::uint64_t sv = get_be(s);
    const std::uint64_t both = mulmod(yv, params_.alpha, p);
    std::uint64_t acc = 1;
    for (int bit = std::bit_width(ev | sv) - 1; bit >= 0; --bit) {
      acc = mulmod(acc, acc, p);
      const bool eb = (ev >> bit) & 1;
      const bool sb = (sv >> bit) & 1;
      if (eb && sb) {
        acc = mulmod(acc, both, p);
      } else if (eb) {
        acc = mulmod(acc, yv, p);
      } else if (sb) {
        acc = mulmod(acc, params_.alpha, p);
      }
    }
    return put(acc, element_len_);
  }

  Buf mul(ByteView a, ByteView b) const override {
    return put(mulmod(get_be(a), get_be(b), params_.p), element_len_);
  }

  Buf scalar_from_u64(std::uint64_t v) const override { return put(v % params_.q, scalar_len_); }
  Buf scalar_add(ByteView a, ByteView b) const override {
    return put((get_be(a) + get_be(b)) % params_.q, scalar_len_);
  }
  Buf scalar_sub(ByteView a, ByteView b) const override {
    return put((get_be(a) + params_.q - get_be(b)) % params_.q, scalar_len_);
  }
  Buf scalar_mul(ByteView a, ByteView b) const override {
    return put(mulmod(get_be(a), get_be(b), params_.q), scalar_len_);
  }
  Buf scalar_inverse(ByteView a) const override {
    return put(powmod(get_be(a), params_.q - 2, params_.q), scalar_len_);
  }
  Buf reduce_wide(ByteView be) const override {
    std::uint64_t acc = 0;
    for (auto b : be) {
      acc = static_cast<std::uint64_t>(((static_cast<u128>(acc) << 8) | b) % params_.q);
    }
    return put(acc, scalar_len_);
  }

  bool scalar_canonical(ByteView s) const override {
    return s.size() == scalar_len_ && get_be(s) < params_.q;
  }
  bool element_valid(ByteView e) const override {
    if (e.size() != element_len_) return false;
    const std::uint64_t v = get_be(e);
    return v >= 1 && v < params_.p && powmod(v, params_.q, params_.p) == 1;
  }

 private:
  static Buf put(std::uint64_t v, std::size_t len) noexcept {
    Buf out{};
    for (std::size_t i = 0; i < len; ++i) {
      out[len - 1 - i] = static_cast<std::uint8_t>(v >> (8 * i));
    }
    return out;
  }

  ToyParams params_;
  std::size_t scalar_len_;
  std::size_t element_len_;
  unsigned order_bits_;
};

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

std::shared_ptr<const GroupBackend> make_toy_backend(const ToyParams& params) {
  const auto& [p, q, alpha] = params;
  if (p < 5 || p >= (std::uint64_t{1} << 32)) {
    throw Error(Errc::kInvalidArgument, "toy modulus p must lie in [5, 2^32)");
  }
  if (!is_prime(p) || !is_prime(q)) {
    throw Error(Errc::kInvalidArgument, "toy p and q must be prime");
  }
  if ((p - 1) % q != 0) {
    throw Error(Errc::kInvalidArgument, "toy q must divide p - 1");
  }
  if (alpha <= 1 || alpha >= p || powmod(alpha, q, p) != 1) {
    throw Error(Errc::kInvalidArgument, "toy alpha must have order q");
  }
  return std::make_shared<ToyBackend>(params);
}

ToyParams sieve_safe_prime(unsigned q_bits, std::uint64_t seed) {
  if (q_bits < 8 || q_bits > 30) {
    throw Error(Errc::kInvalidArgument, "toy q_bits must lie in [8, 30]");
  }
  const std::uint64_t lo = std::uint64_t{1} << (q_bits - 1);
  const std::uint64_t span = lo;
  // splitmix64 step for the start offset
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  std::uint64_t q = (lo + z % span) | 1;
  for (std::uint64_t tries = 0; tries < span; ++tries) {
    if (q >= 2 * lo) q = lo + 1;
    if (is_prime(q) && is_prime(2 * q + 1)) {
      return ToyParams{2 * q + 1, q, 4};
    }
    q += 2;
  }
  throw Error(Errc::kInvalidArgument, "no safe prime found");
}

}  // namespace semecs::detail
