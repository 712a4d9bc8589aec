#pragma once

// The ristretto255 prime-order group over edwards25519, extended
// coordinates. Internal to the production group backend.

#include <array>
#include <cstdint>
#include <optional>

#include "field25519.hpp"

namespace semecs::detail {

struct EdPoint {
  Fe X, Y, Z, T;
};

using Encoded = std::array<std::uint8_t, 32>;
/// Scalars for the multipliers below are 32-octet little-endian.
using ScalarLe = std::array<std::uint8_t, 32>;

EdPoint ed_identity() noexcept;
EdPoint ed_add(const EdPoint& p, const EdPoint& q) noexcept;
EdPoint ed_double(const EdPoint& p) noexcept;
EdPoint ed_select(const EdPoint& a, const EdPoint& b, bool choose_b) noexcept;

/// The ristretto255 generator (the edwards25519 base point).
const EdPoint& ristretto_generator() noexcept;

std::optional<EdPoint> ristretto_decode(const Encoded& in) noexcept;
Encoded ristretto_encode(const EdPoint& p) noexcept;

/// k * P with a fixed 4-bit window and branch-free table lookups.
EdPoint scalar_mul(const EdPoint& p, const ScalarLe& k) noexcept;
/// k * generator via a precomputed 64x16 table; branch-free.
EdPoint scalar_mul_generator(const ScalarLe& k) noexcept;
/// e * Y + s * generator, interleaved (Straus/Shamir). Variable time;
/// only for public inputs.
EdPoint double_scalar_mul(const EdPoint& y, const ScalarLe& e, const ScalarLe& s) noexcept;

}  // namespace semecs::detail
