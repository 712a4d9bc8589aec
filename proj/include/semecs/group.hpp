#pragma once

// Prime-order group abstraction shared by all signature schemes.
//
// Two backends sit behind one handle type:
//   * toy: the order-q subgroup of Z_p^* for p < 2^32, small enough for
//     exhaustive oracles (canonical vector p=23, q=11, alpha=2);
//   * production: ristretto255, |q| = 253 bits, 32-octet scalars and
//     elements.
//
// Group operations are written multiplicatively throughout: exp is k-fold
// repeated multiplication, mul is the group law.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "semecs/bytes.hpp"

namespace semecs {

class RandomSource;

enum class GroupId : std::uint8_t {
  kToy = 0x01,
  kProduction = 0x02,
};

inline constexpr std::size_t kMaxScalarLen = 32;
inline constexpr std::size_t kMaxElementLen = 32;

namespace detail {

/// Canonical big-endian octet string of fixed length, stored inline.
template <std::size_t Cap>
class FixedOctets {
 public:
  FixedOctets() = default;

  [[nodiscard]] ByteView bytes() const noexcept { return {data_.data(), len_}; }
  [[nodiscard]] std::size_t size() const noexcept { return len_; }

  friend bool operator==(const FixedOctets& a, const FixedOctets& b) noexcept {
    return a.len_ == b.len_ && ct_equal(a.bytes(), b.bytes());
  }

 protected:
  explicit FixedOctets(ByteView b) : len_(static_cast<std::uint8_t>(b.size())) {
    std::copy(b.begin(), b.end(), data_.begin());
  }
  std::array<std::uint8_t, Cap> data_{};
  std::uint8_t len_ = 0;
};

class GroupBackend;

}  // namespace detail

/// Element of Z_q, always reduced. Only a Group can mint one.
class Scalar : public detail::FixedOctets<kMaxScalarLen> {
 public:
  Scalar() = default;
  [[nodiscard]] bool is_zero() const noexcept;
  void wipe() noexcept;

 private:
  friend class Group;
  explicit Scalar(ByteView b) : FixedOctets(b) {}
};

/// Member of the prime-order subgroup, held in its canonical encoding.
class Element : public detail::FixedOctets<kMaxElementLen> {
 public:
  Element() = default;

 private:
  friend class Group;
  explicit Element(ByteView b) : FixedOctets(b) {}
};

struct OpCounts {
  std::uint64_t exp = 0;
  std::uint64_t double_exp = 0;
  std::uint64_t mul = 0;

  friend OpCounts operator-(const OpCounts& a, const OpCounts& b) noexcept {
    return {a.exp - b.exp, a.double_exp - b.double_exp, a.mul - b.mul};
  }
  friend bool operator==(const OpCounts&, const OpCounts&) = default;
};

/// Exact count of group operations issued through a Group handle and its copies.
class OpCounter {
 public:
  [[nodiscard]] OpCounts snapshot() const noexcept;
  void reset() noexcept;

  void count_exp() noexcept { exp_.fetch_add(1, std::memory_order_relaxed); }
  void count_double_exp() noexcept { double_exp_.fetch_add(1, std::memory_order_relaxed); }
  void count_mul() noexcept { mul_.fetch_add(1, std::memory_order_relaxed); }

 private:
  std::atomic<std::uint64_t> exp_{0};
  std::atomic<std::uint64_t> double_exp_{0};
  std::atomic<std::uint64_t> mul_{0};
};

/// Parameters of a toy Schnorr group: subgroup of order q in Z_p^*.
struct ToyParams {
  std::uint64_t p = 0;
  std::uint64_t q = 0;
  std::uint64_t alpha = 0;

  friend bool operator==(const ToyParams&, const ToyParams&) = default;
};

/// Shared, immutable group description plus an operation counter that all
/// copies of the handle feed into.
class Group {
 public:
  /// p=23, q=11, alpha=2.
  static Group toy_default();
  /// Validates p, q prime, q | p-1, alpha of order q; p < 2^32.
  static Group toy(const ToyParams& params);
  /// Safe prime p = 2q+1 with q of exactly `q_bits` bits (8..30), found by
  /// sieving upward from a seed-derived start. alpha = 4.
  static Group generate_toy(unsigned q_bits, std::uint64_t seed);
  static Group production();

  /// Same parameters, fresh counter.
  [[nodiscard]] Group with_fresh_counter() const;

  [[nodiscard]] GroupId id() const noexcept;
  [[nodiscard]] std::optional<ToyParams> toy_params() const noexcept;
  [[nodiscard]] std::string describe() const;
  [[nodiscard]] bool same_group(const Group& other) const noexcept;

  [[nodiscard]] std::size_t scalar_len() const noexcept;
  [[nodiscard]] std::size_t element_len() const noexcept;
  [[nodiscard]] unsigned order_bits() const noexcept;
  /// q as a canonical big-endian octet string of scalar_len octets.
  [[nodiscard]] Bytes order_bytes() const;

  [[nodiscard]] Element generator() const;
  [[nodiscard]] Element identity() const;

  /// base^k
  [[nodiscard]] Element exp(const Element& base, const Scalar& k) const;
  /// Y^e * alpha^s, evaluated in one interleaved pass.
  [[nodiscard]] Element double_exp(const Element& y, const Scalar& e, const Scalar& s) const;
  /// a * b
  [[nodiscard]] Element mul(const Element& a, const Element& b) const;

  [[nodiscard]] Scalar scalar(std::uint64_t v) const;
  [[nodiscard]] Scalar add(const Scalar& a, const Scalar& b) const;
  [[nodiscard]] Scalar sub(const Scalar& a, const Scalar& b) const;
  [[nodiscard]] Scalar mul(const Scalar& a, const Scalar& b) const;
  /// Throws kNotExtractable for zero.
  [[nodiscard]] Scalar inverse(const Scalar& a) const;
  /// (r - e*y) mod q
  [[nodiscard]] Scalar scalar_sub_mul(const Scalar& r, const Scalar& e, const Scalar& y) const;
  /// Reduces a big-endian integer of at most 2*ceil(order_bits/8) octets mod q.
  [[nodiscard]] Scalar reduce_wide(ByteView be) const;
  /// Uniform in [1, q-1].
  [[nodiscard]] Scalar random_scalar(RandomSource& rng) const;
  /// Small integer value of a toy scalar (tests and oracles).
  [[nodiscard]] std::uint64_t toy_value(const Scalar& s) const;
  [[nodiscard]] std::uint64_t toy_value(const Element& e) const;

  [[nodiscard]] Bytes encode(const Scalar& s) const;
  [[nodiscard]] Bytes encode(const Element& e) const;
  /// kMalformedEncoding on wrong length or non-canonical value.
  [[nodiscard]] Scalar decode_scalar(ByteView in) const;
  /// kMalformedEncoding on wrong length, non-canonical, or non-member.
  [[nodiscard]] Element decode_element(ByteView in) const;

  [[nodiscard]] OpCounter& counter() const noexcept { return *counter_; }

 private:
  explicit Group(std::shared_ptr<const detail::GroupBackend> backend);

  std::shared_ptr<const detail::GroupBackend> backend_;
  std::shared_ptr<OpCounter> counter_;
};

/// Exhaustive discrete logarithm of Y to base alpha. Toy backend with
/// q <= 2^24 only; otherwise throws kOracleRefused.
[[nodiscard]] Scalar brute_force_dlog(const Group& group, const Element& y);

}  // namespace semecs
