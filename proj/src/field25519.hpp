#pragma once

// Arithmetic in GF(2^255 - 19), five 51-bit limbs. Internal to the
// production group backend.

#include <array>
#include <cstdint>

namespace semecs::detail {

struct Fe {
  std::array<std::uint64_t, 5> v{};
};

using FeBytes = std::array<std::uint8_t, 32>;

Fe fe_zero() noexcept;
Fe fe_one() noexcept;
Fe fe_from_u64(std::uint64_t x) noexcept;

/// Little-endian load; bit 255 is ignored.
Fe fe_from_bytes(const FeBytes& in) noexcept;
/// Canonical little-endian encoding (fully reduced).
FeBytes fe_to_bytes(const Fe& f) noexcept;

Fe fe_add(const Fe& a, const Fe& b) noexcept;
Fe fe_sub(const Fe& a, const Fe& b) noexcept;
Fe fe_neg(const Fe& a) noexcept;
Fe fe_mul(const Fe& a, const Fe& b) noexcept;
Fe fe_sq(const Fe& a) noexcept;
Fe fe_mul_small(const Fe& a, std::uint32_t k) noexcept;

Fe fe_invert(const Fe& z) noexcept;
/// z^((p-5)/8)
Fe fe_pow22523(const Fe& z) noexcept;

bool fe_is_negative(const Fe& f) noexcept;
bool fe_is_zero(const Fe& f) noexcept;
bool fe_equal(const Fe& a, const Fe& b) noexcept;

/// Returns b ? g : f without branching on b.
Fe fe_select(const Fe& f, const Fe& g, bool b) noexcept;
Fe fe_abs(const Fe& f) noexcept;

struct SqrtRatio {
  bool was_square;
  Fe root;
};
/// Non-negative sqrt(u/v), or sqrt(i*u/v) when u/v is not square.
SqrtRatio fe_sqrt_ratio_m1(const Fe& u, const Fe& v) noexcept;

/// sqrt(-1), non-negative representative.
const Fe& fe_sqrt_m1() noexcept;

}  // namespace semecs::detail
