#include "field25519.hpp"

namespace semecs::detail {
namespace {

using u128 = unsigned __int128;
constexpr std::uint64_t kMask51 = (std::uint64_t{1} << 51) - 1;

Fe carry(Fe f) noexcept {
  for (int i = 0; i < 4; ++i) {
    f.v[i + 1] += f.v[i] >> 51;
    f.v[i] &= kMask51;
  }
  f.v[0] += 19 * (f.v[4] >> 51);
  f.v[4] &= kMask51;
  f.v[1] += f.v[0] >> 51;
  f.v[0] &= kMask51;
  return f;
}

Fe sq_n(Fe f, int n) noexcept {
  for (int i = 0; i < n; ++i) {
    f = fe_sq(f);
  }
  return f;
}

// Returns z^(2^250 - 1) and z^11, shared by inversion and pow22523.
std::pair<Fe, Fe> pow_2_250_1(const Fe& z) noexcept {
  Fe z2 = fe_sq(z);
  Fe z8 = sq_n(z2, 2);
  Fe z9 = fe_mul(z, z8);
  Fe z11 = fe_mul(z2, z9);
  Fe z22 = fe_sq(z11);
  Fe t = fe_mul(z9, z22);                  // 2^5 - 1
  Fe t10 = fe_mul(sq_n(t, 5), t);          // 2^10 - 1
  Fe t20 = fe_mul(sq_n(t10, 10), t10);     // 2^20 - 1
  Fe t40 = fe_mul(sq_n(t20, 20), t20);     // 2^40 - 1
  Fe t50 = fe_mul(sq_n(t40, 10), t10);     // 2^50 - 1
  Fe t100 = fe_mul(sq_n(t50, 50), t50);    // 2^100 - 1
  Fe t200 = fe_mul(sq_n(t100, 100), t100); // 2^200 - 1
  Fe t250 = fe_mul(sq_n(t200, 50), t50);   // 2^250 - 1
  return {t250, z11};
}

Fe compute_sqrt_m1() noexcept {
  // 2^((p-1)/4) with (p-1)/4 = 2^253 - 5: square-and-multiply over the
  // public exponent bits.
  std::array<std::uint8_t, 32> e{};
  e.fill(0xff);
  e[31] = 0x1f;
  e[0] = 0xfb;
  Fe base = fe_from_u64(2);
  Fe acc = fe_one();
  for (int bit = 255; bit >= 0; --bit) {
    acc = fe_sq(acc);
    if ((e[bit / 8] >> (bit % 8)) & 1) {
      acc = fe_mul(acc, base);
    }
  }
  return fe_abs(acc);
}

}  // namespace

Fe fe_zero() noexcept { return Fe{}; }
Fe fe_one() noexcept { return fe_from_u64(1); }

Fe fe_from_u64(std::uint64_t x) noexcept {
  Fe f;
  f.v[0] = x & kMask51;
  f.v[1] = x >> 51;
  return f;
}

Fe fe_from_bytes(const FeBytes& in) noexcept {
  auto load64 = [&](int off) {
    std::uint64_t r = 0;
    for (int i = 7; i >= 0; --i) {
      r = (r << 8) | in[off + i];
    }
    return r;
  };
  Fe f;
  f.v[0] = load64(0) & kMask51;
  f.v[1] = (load64(6) >> 3) & kMask51;
  f.v[2] = (load64(12) >> 6) & kMask51;
  f.v[3] = (load64(19) >> 1) & kMask51;
  f.v[4] = (load64(24) >> 12) & kMask51;
  return f;
}

FeBytes fe_to_bytes(const Fe& in) noexcept {
  Fe f = carry(carry(in));
  // Now f < 2^255 + small; subtract p if f >= p.
  std::uint64_t q = (f.v[0] + 19) >> 51;
  q = (f.v[1] + q) >> 51;
  q = (f.v[2] + q) >> 51;
  q = (f.v[3] + q) >> 51;
  q = (f.v[4] + q) >> 51;
  f.v[0] += 19 * q;
  for (int i = 0; i < 4; ++i) {
    f.v[i + 1] += f.v[i] >> 51;
    f.v[i] &= kMask51;
  }
  f.v[4] &= kMask51;

  FeBytes out{};
  u128 acc = 0;
  int bits = 0;
  int pos = 0;
  for (int i = 0; i < 5; ++i) {
    acc |= static_cast<u128>(f.v[i]) << bits;
    bits += 51;
    while (bits >= 8 && pos < 32) {
      out[pos++] = static_cast<std::uint8_t>(acc);
      acc >>= 8;
      bits -= 8;
    }
  }
  while (pos < 32) {
    out[pos++] = static_cast<std::uint8_t>(acc);
    acc >>= 8;
  }
  return out;
}

Fe fe_add(const Fe& a, const Fe& b) noexcept {
  Fe r;
  for (int i = 0; i < 5; ++i) {
    r.v[i] = a.v[i] + b.v[i];
  }
  return carry(r);
}

Fe fe_sub(const Fe& a, const Fe& b) noexcept {
  // Add 4p so limbs stay non-negative for weakly reduced inputs.
  constexpr std::uint64_t k4p0 = 0x1fffffffffffb4;
  constexpr std::uint64_t k4pi = 0x1ffffffffffffc;
  Fe bb = carry(b);
  Fe r;
  r.v[0] = a.v[0] + k4p0 - bb.v[0];
  for (int i = 1; i < 5; ++i) {
    r.v[i] = a.v[i] + k4pi - bb.v[i];
  }
  return carry(r);
}

Fe fe_neg(const Fe& a) noexcept { return fe_sub(fe_zero(), a); }

Fe fe_mul(const Fe& a, const Fe& b) noexcept {
  const auto& x = a.v;
  const auto& y = b.v;
  const std::uint64_t y1_19 = 19 * y[1];
  const std::uint64_t y2_19 = 19 * y[2];
  const std::uint64_t y3_19 = 19 * y[3];
  const std::uint64_t y4_19 = 19 * y[4];

  u128 c0 = (u128)x[0] * y[0] + (u128)x[1] * y4_19 + (u128)x[2] * y3_19 + (u128)x[3] * y2_19 +
            (u128)x[4] * y1_19;
  u128 c1 = (u128)x[0] * y[1] + (u128)x[1] * y[0] + (u128)x[2] * y4_19 + (u128)x[3] * y3_19 +
            (u128)x[4] * y2_19;
  u128 c2 = (u128)x[0] * y[2] + (u128)x[1] * y[1] + (u128)x[2] * y[0] + (u128)x[3] * y4_19 +
            (u128)x[4] * y3_19;
  u128 c3 = (u128)x[0] * y[3] + (u128)x[1] * y[2] + (u128)x[2] * y[1] + (u128)x[3] * y[0] +
            (u128)x[4] * y4_19;
  u128 c4 = (u128)x[0] * y[4] + (u128)x[1] * y[3] + (u128)x[2] * y[2] + (u128)x[3] * y[1] +
            (u128)x[4] * y[0];

  c1 += static_cast<std::uint64_t>(c0 >> 51);
  c2 += static_cast<std::uint64_t>(c1 >> 51);
  c3 += static_cast<std::uint64_t>(c2 >> 51);
  c4 += static_cast<std::uint64_t>(c3 >> 51);
  Fe r;
  r.v[0] = static_cast<std::uint64_t>(c0) & kMask51;
  r.v[1] = static_cast<std::uint64_t>(c1) & kMask51;
  r.v[2] = static_cast<std::uint64_t>(c2) & kMask51;
  r.v[3] = static_cast<std::uint64_t>(c3) & kMask51;
  r.v[4] = static_cast<std::uint64_t>(c4) & kMask51;
  r.v[0] += 19 * static_cast<std::uint64_t>(c4 >> 51);
  r.v[1] += r.v[0] >> 51;
  r.v[0] &= kMask51;
  return r;
}

Fe fe_sq(const Fe& a) noexcept { return fe_mul(a, a); }

Fe fe_mul_small(const Fe& a, std::uint32_t k) noexcept { return fe_mul(a, fe_from_u64(k)); }

Fe fe_invert(const Fe& z) noexcept {
  auto [t250, z11] = pow_2_250_1(z);
  return fe_mul(sq_n(t250, 5), z11);  // 2^255 - 21
}

Fe fe_pow22523(const Fe& z) noexcept {
  auto [t250, z11] = pow_2_250_1(z);
  (void)z11;
  return fe_mul(sq_n(t250, 2), z);  // 2^252 - 3
}

bool fe_is_negative(const Fe& f) noexcept { return (fe_to_bytes(f)[0] & 1) != 0; }

bool fe_is_zero(const Fe& f) noexcept {
  const FeBytes b = fe_to_bytes(f);
  std::uint8_t acc = 0;
  for (auto x : b) {
    acc |= x;
  }
  return acc == 0;
}

bool fe_equal(const Fe& a, const Fe& b) noexcept { return fe_is_zero(fe_sub(a, b)); }

Fe fe_select(const Fe& f, const Fe& g, bool b) noexcept {
  const std::uint64_t mask = 0 - static_cast<std::uint64_t>(b);
  Fe r;
  for (int i = 0; i < 5; ++i) {
    r.v[i] = f.v[i] ^ (mask & (f.v[i] ^ g.v[i]));
  }
  return r;
}

Fe fe_abs(const Fe& f) noexcept { return fe_select(f, fe_neg(f), fe_is_negative(f)); }

SqrtRatio fe_sqrt_ratio_m1(const Fe& u, const Fe& v) noexcept {
  const Fe v3 = fe_mul(fe_sq(v), v);
  const Fe v7 = fe_mul(fe_sq(v3), v);
  Fe r = fe_mul(fe_mul(u, v3), fe_pow22523(fe_mul(u, v7)));
  const Fe check = fe_mul(v, fe_sq(r));

  const Fe neg_u = fe_neg(u);
  const bool correct_sign = fe_equal(check, u);
  const bool flipped_sign = fe_equal(check, neg_u);
  const bool flipped_sign_i = fe_equal(check, fe_mul(neg_u, fe_sqrt_m1()));

  const Fe r_prime = fe_mul(fe_sqrt_m1(), r);
  r = fe_select(r, r_prime, flipped_sign | flipped_sign_i);
  return {correct_sign | flipped_sign, fe_abs(r)};
}

const Fe& fe_sqrt_m1() noexcept {
  static const Fe k = compute_sqrt_m1();
  return k;
}

}  // namespace semecs::detail
