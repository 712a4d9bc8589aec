#include "semecs/group.hpp"

#include <sodium.h>

#include <algorithm>
#include <cstring>

#include "group_backend.hpp"
#include "ristretto255.hpp"
#include "semecs/errors.hpp"
#include "semecs/rng.hpp"

namespace semecs {
namespace detail {

ToyParams sieve_safe_prime(unsigned q_bits, std::uint64_t seed);

namespace {

// l = 2^252 + 27742317777372353535851937790883648493, big-endian.
constexpr Buf kRistrettoOrder = {0x10, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00,
                                 0x00, 0x00, 0x00, 0x00, 0x00, 0x14, 0xde, 0xf9, 0xde, 0xa2, 0xf7,
                                 0x9c, 0xd6, 0x58, 0x12, 0x63, 0x1a, 0x5c, 0xf5, 0xd3, 0xed};

Buf reversed(ByteView in) noexcept {
  Buf out{};
  std::reverse_copy(in.begin(), in.end(), out.begin());
  return out;
}

Encoded to_encoded(ByteView in) noexcept {
  Encoded out{};
  std::copy(in.begin(), in.end(), out.begin());
  return out;
}

class RistrettoBackend final : public GroupBackend {
 public:
  RistrettoBackend() : generator_(ristretto_encode(ristretto_generator())) {}

  GroupId id() const noexcept override { return GroupId::kProduction; }
  std::string describe() const override { return "ristretto255"; }
  std::size_t scalar_len() const noexcept override { return 32; }
  std::size_t element_len() const noexcept override { return 32; }
  unsigned order_bits() const noexcept override { return 253; }
  Buf order() const override { return kRistrettoOrder; }

  Buf generator() const override { return generator_; }
  Buf identity() const override { return Buf{}; }

  Buf exp(ByteView base, ByteView k) const override {
    const ScalarLe kl = reversed(k);
    if (std::equal(base.begin(), base.end(), generator_.begin())) {
      return ristretto_encode(scalar_mul_generator(kl));
    }
    return ristretto_encode(detail::scalar_mul(decode(base), kl));
  }

  Buf double_exp(ByteView y, ByteView e, ByteView s) const override {
    return ristretto_encode(double_scalar_mul(decode(y), reversed(e), reversed(s)));
  }

  Buf mul(ByteView a, ByteView b) const override {
    return ristretto_encode(ed_add(decode(a), decode(b)));
  }

  Buf scalar_from_u64(std::uint64_t v) const override {
    Buf le{};
    for (int i = 0; i < 8; ++i) le[i] = static_cast<std::uint8_t>(v >> (8 * i));
    return reversed(le);
  }
  Buf scalar_add(ByteView a, ByteView b) const override {
    return binary(a, b, crypto_core_ristretto255_scalar_add);
  }
  Buf scalar_sub(ByteView a, ByteView b) const override {
    return binary(a, b, crypto_core_ristretto255_scalar_sub);
  }
  Buf scalar_mul(ByteView a, ByteView b) const override {
    return binary(a, b, crypto_core_ristretto255_scalar_mul);
  }
  Buf scalar_inverse(ByteView a) const override {
    const Buf al = reversed(a);
    Buf out{};
    crypto_core_ristretto255_scalar_invert(out.data(), al.data());
    return reversed(out);
  }
  Buf reduce_wide(ByteView be) const override {
    std::array<std::uint8_t, 64> le{};
    std::reverse_copy(be.begin(), be.end(), le.begin());
    Buf out{};
    crypto_core_ristretto255_scalar_reduce(out.data(), le.data());
    return reversed(out);
  }

  bool scalar_canonical(ByteView s) const override {
    return s.size() == 32 && std::lexicographical_compare(s.begin(), s.end(), kRistrettoOrder.begin(),
                                                          kRistrettoOrder.end());
  }
  bool element_valid(ByteView e) const override {
    return e.size() == 32 && ristretto_decode(to_encoded(e)).has_value();
  }

 private:
  using BinaryOp = void (*)(unsigned char*, const unsigned char*, const unsigned char*);

  static Buf binary(ByteView a, ByteView b, BinaryOp op) noexcept {
    const Buf al = reversed(a);
    const Buf bl = reversed(b);
    Buf out{};
    op(out.data(), al.data(), bl.data());
    return reversed(out);
  }

  static EdPoint decode(ByteView in) {
    auto p = ristretto_decode(to_encoded(in));
    if (!p) {
      throw Error(Errc::kMalformedEncoding, "invalid ristretto255 encoding");
    }
    return *p;
  }

  Buf generator_;
};

}  // namespace

std::shared_ptr<const GroupBackend> production_backend() {
  static const std::shared_ptr<const GroupBackend> backend = [] {
    if (sodium_init() < 0) {
      throw Error(Errc::kRngFailure, "libsodium initialisation failed");
    }
    return std::make_shared<RistrettoBackend>();
  }();
  return backend;
}

}  // namespace detail

bool Scalar::is_zero() const noexcept {
  std::uint8_t acc = 0;
  for (std::size_t i = 0; i < len_; ++i) acc |= data_[i];
  return acc == 0;
}

void Scalar::wipe() noexcept { secure_wipe(data_); }

OpCounts OpCounter::snapshot() const noexcept {
  return {exp_.load(std::memory_order_relaxed), double_exp_.load(std::memory_order_relaxed),
          mul_.load(std::memory_order_relaxed)};
}

void OpCounter::reset() noexcept {
  exp_.store(0, std::memory_order_relaxed);
  double_exp_.store(0, std::memory_order_relaxed);
  mul_.store(0, std::memory_order_relaxed);
}

Group::Group(std::shared_ptr<const detail::GroupBackend> backend)
    : backend_(std::move(backend)), counter_(std::make_shared<OpCounter>()) {}

Group Group::toy_default() { return toy(ToyParams{23, 11, 2}); }

Group Group::toy(const ToyParams& params) { return Group(detail::make_toy_backend(params)); }

Group Group::generate_toy(unsigned q_bits, std::uint64_t seed) {
  return toy(detail::sieve_safe_prime(q_bits, seed));
}

Group Group::production() { return Group(detail::production_backend()); }

Group Group::with_fresh_counter() const { return Group(backend_); }

GroupId Group::id() const noexcept { return backend_->id(); }
std::optional<ToyParams> Group::toy_params() const noexcept { return backend_->toy_params(); }
std::string Group::describe() const { return backend_->describe(); }

bool Group::same_group(const Group& other) const noexcept {
  return id() == other.id() && toy_params() == other.toy_params();
}

std::size_t Group::scalar_len() const noexcept { return backend_->scalar_len(); }
std::size_t Group::element_len() const noexcept { return backend_->element_len(); }
unsigned Group::order_bits() const noexcept { return backend_->order_bits(); }

Bytes Group::order_bytes() const {
  const auto q = backend_->order();
  return Bytes(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(scalar_len()));
}

namespace {
ByteView first(const detail::Buf& b, std::size_t n) noexcept { return {b.data(), n}; }
}  // namespace

Element Group::generator() const { return Element(first(backend_->generator(), element_len())); }
Element Group::identity() const { return Element(first(backend_->identity(), element_len())); }

Element Group::exp(const Element& base, const Scalar& k) const {
  counter_->count_exp();
  return Element(first(backend_->exp(base.bytes(), k.bytes()), element_len()));
}

Element Group::double_exp(const Element& y, const Scalar& e, const Scalar& s) const {
  counter_->count_double_exp();
  return Element(first(backend_->double_exp(y.bytes(), e.bytes(), s.bytes()), element_len()));
}

Element Group::mul(const Element& a, const Element& b) const {
  counter_->count_mul();
  return Element(first(backend_->mul(a.bytes(), b.bytes()), element_len()));
}

Scalar Group::scalar(std::uint64_t v) const {
  return Scalar(first(backend_->scalar_from_u64(v), scalar_len()));
}
Scalar Group::add(const Scalar& a, const Scalar& b) const {
  return Scalar(first(backend_->scalar_add(a.bytes(), b.bytes()), scalar_len()));
}
Scalar Group::sub(const Scalar& a, const Scalar& b) const {
  return Scalar(first(backend_->scalar_sub(a.bytes(), b.bytes()), scalar_len()));
}
Scalar Group::mul(const Scalar& a, const Scalar& b) const {
  return Scalar(first(backend_->scalar_mul(a.bytes(), b.bytes()), scalar_len()));
}

Scalar Group::inverse(const Scalar& a) const {
  if (a.is_zero()) {
    throw Error(Errc::kNotExtractable, "zero has no inverse mod q");
  }
  return Scalar(first(backend_->scalar_inverse(a.bytes()), scalar_len()));
}

Scalar Group::scalar_sub_mul(const Scalar& r, const Scalar& e, const Scalar& y) const {
  return sub(r, mul(e, y));
}

Scalar Group::reduce_wide(ByteView be) const {
  if (be.size() > 2 * scalar_len()) {
    throw Error(Errc::kInvalidArgument, "wide input too long for reduction");
  }
  return Scalar(first(backend_->reduce_wide(be), scalar_len()));
}

Scalar Group::random_scalar(RandomSource& rng) const {
  Bytes wide(2 * scalar_len());
  for (int attempt = 0; attempt < 128; ++attempt) {
    rng.fill(wide);
    Scalar s = reduce_wide(wide);
    if (!s.is_zero()) {
      secure_wipe(wide);
      return s;
    }
  }
  throw Error(Errc::kRngFailure, "random source keeps producing zero scalars");
}

std::uint64_t Group::toy_value(const Scalar& s) const {
  if (id() != GroupId::kToy) throw Error(Errc::kInvalidArgument, "toy_value on production group");
  return get_be(s.bytes());
}

std::uint64_t Group::toy_value(const Element& e) const {
  if (id() != GroupId::kToy) throw Error(Errc::kInvalidArgument, "toy_value on production group");
  return get_be(e.bytes());
}

Bytes Group::encode(const Scalar& s) const { return Bytes(s.bytes().begin(), s.bytes().end()); }
Bytes Group::encode(const Element& e) const { return Bytes(e.bytes().begin(), e.bytes().end()); }

Scalar Group::decode_scalar(ByteView in) const {
  if (in.size() != scalar_len()) {
    throw Error(Errc::kMalformedEncoding, "scalar has wrong length");
  }
  if (!backend_->scalar_canonical(in)) {
    throw Error(Errc::kMalformedEncoding, "scalar not reduced mod q");
  }
  return Scalar(in);
}

Element Group::decode_element(ByteView in) const {
  if (in.size() != element_len()) {
    throw Error(Errc::kMalformedEncoding, "element has wrong length");
  }
  if (!backend_->element_valid(in)) {
    throw Error(Errc::kMalformedEncoding, "not a canonical subgroup element");
  }
  return Element(in);
}

Scalar brute_force_dlog(const Group& group, const Element& y) {
  const auto params = group.toy_params();
  if (!params || params->q > (std::uint64_t{1} << 24)) {
    throw Error(Errc::kOracleRefused, "exhaustive search limited to toy groups with q <= 2^24");
  }
  const std::uint64_t target = group.toy_value(y);
  std::uint64_t acc = 1;
  for (std::uint64_t k = 0; k < params->q; ++k) {
    if (acc == target) {
      return group.scalar(k);
    }
    acc = acc * params->alpha % params->p;
  }
  throw Error(Errc::kOracleRefused, "element outside the subgroup");
}

}  // namespace semecs
