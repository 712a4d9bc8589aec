#include "ristretto255.hpp"

#include <vector>

namespace semecs::detail {
namespace {

const Fe& edwards_d() noexcept {
  // d = -121665 / 121666
  static const Fe d = fe_neg(fe_mul(fe_from_u64(121665), fe_invert(fe_from_u64(121666))));
  return d;
}

const Fe& edwards_2d() noexcept {
  static const Fe d2 = fe_add(edwards_d(), edwards_d());
  return d2;
}

const Fe& invsqrt_a_minus_d() noexcept {
  // 1 / sqrt(a - d) with a = -1.
  static const Fe k = fe_sqrt_ratio_m1(fe_one(), fe_sub(fe_neg(fe_one()), edwards_d())).root;
  return k;
}

EdPoint compute_generator() noexcept {
  // y = 4/5, x non-negative.
  const Fe y = fe_mul(fe_from_u64(4), fe_invert(fe_from_u64(5)));
  const Fe yy = fe_sq(y);
  const Fe u = fe_sub(yy, fe_one());
  const Fe v = fe_add(fe_mul(edwards_d(), yy), fe_one());
  const Fe x = fe_sqrt_ratio_m1(u, v).root;
  return EdPoint{x, y, fe_one(), fe_mul(x, y)};
}

int nibble(const ScalarLe& k, int i) noexcept { return (k[i / 2] >> (4 * (i & 1))) & 0x0f; }

using Row = std::array<EdPoint, 16>;

Row multiples(const EdPoint& p) noexcept {
  Row row;
  row[0] = ed_identity();
  row[1] = p;
  for (int d = 2; d < 16; ++d) {
    row[d] = (d % 2 == 0) ? ed_double(row[d / 2]) : ed_add(row[d - 1], p);
  }
  return row;
}

EdPoint ct_lookup(const Row& row, int index) noexcept {
  EdPoint out = ed_identity();
  for (int d = 0; d < 16; ++d) {
    out = ed_select(out, row[d], d == index);
  }
  return out;
}

// table[i][d] = d * 16^i * G
const std::vector<Row>& generator_table() {
  static const std::vector<Row> table = [] {
    std::vector<Row> t(64);
    EdPoint base = ristretto_generator();
    for (int i = 0; i < 64; ++i) {
      t[i] = multiples(base);
      for (int k = 0; k < 4; ++k) {
        base = ed_double(base);
      }
    }
    return t;
  }();
  return table;
}

}  // namespace

EdPoint ed_identity() noexcept { return EdPoint{fe_zero(), fe_one(), fe_one(), fe_zero()}; }

EdPoint ed_add(const EdPoint& p, const EdPoint& q) noexcept {
  const Fe a = fe_mul(fe_sub(p.Y, p.X), fe_sub(q.Y, q.X));
  const Fe b = fe_mul(fe_add(p.Y, p.X), fe_add(q.Y, q.X));
  const Fe c = fe_mul(fe_mul(p.T, edwards_2d()), q.T);
  const Fe zz = fe_mul(p.Z, q.Z);
  const Fe d = fe_add(zz, zz);
  const Fe e = fe_sub(b, a);
  const Fe f = fe_sub(d, c);
  const Fe g = fe_add(d, c);
  const Fe h = fe_add(b, a);
  return EdPoint{fe_mul(e, f), fe_mul(g, h), fe_mul(f, g), fe_mul(e, h)};
}

EdPoint ed_double(const EdPoint& p) noexcept {
  const Fe a = fe_sq(p.X);
  const Fe b = fe_sq(p.Y);
  const Fe zz = fe_sq(p.Z);
  const Fe c = fe_add(zz, zz);
  const Fe d = fe_neg(a);
  const Fe e = fe_sub(fe_sub(fe_sq(fe_add(p.X, p.Y)), a), b);
  const Fe g = fe_add(d, b);
  const Fe f = fe_sub(g, c);
  const Fe h = fe_sub(d, b);
  return EdPoint{fe_mul(e, f), fe_mul(g, h), fe_mul(f, g), fe_mul(e, h)};
}

EdPoint ed_select(const EdPoint& a, const EdPoint& b, bool choose_b) noexcept {
  return EdPoint{fe_select(a.X, b.X, choose_b), fe_select(a.Y, b.Y, choose_b),
                 fe_select(a.Z, b.Z, choose_b), fe_select(a.T, b.T, choose_b)};
}

const EdPoint& ristretto_generator() noexcept {
  static const EdPoint g = compute_generator();
  return g;
}

std::optional<EdPoint> ristretto_decode(const Encoded& in) noexcept {
  const Fe s = fe_from_bytes(in);
  // Canonical and non-negative.
  if (fe_to_bytes(s) != in || fe_is_negative(s)) {
    return std::nullopt;
  }
  const Fe ss = fe_sq(s);
  const Fe u1 = fe_sub(fe_one(), ss);
  const Fe u2 = fe_add(fe_one(), ss);
  const Fe u2_sqr = fe_sq(u2);
  const Fe v = fe_sub(fe_neg(fe_mul(edwards_d(), fe_sq(u1))), u2_sqr);

  const SqrtRatio inv = fe_sqrt_ratio_m1(fe_one(), fe_mul(v, u2_sqr));
  const Fe den_x = fe_mul(inv.root, u2);
  const Fe den_y = fe_mul(fe_mul(inv.root, den_x), v);

  const Fe x = fe_abs(fe_mul(fe_add(s, s), den_x));
  const Fe y = fe_mul(u1, den_y);
  const Fe t = fe_mul(x, y);
  if (!inv.was_square || fe_is_negative(t) || fe_is_zero(y)) {
    return std::nullopt;
  }
  return EdPoint{x, y, fe_one(), t};
}

Encoded ristretto_encode(const EdPoint& p) noexcept {
  const Fe u1 = fe_mul(fe_add(p.Z, p.Y), fe_sub(p.Z, p.Y));
  const Fe u2 = fe_mul(p.X, p.Y);
  const Fe invsqrt = fe_sqrt_ratio_m1(fe_one(), fe_mul(u1, fe_sq(u2))).root;
  const Fe den1 = fe_mul(invsqrt, u1);
  const Fe den2 = fe_mul(invsqrt, u2);
  const Fe z_inv = fe_mul(fe_mul(den1, den2), p.T);

  const Fe ix0 = fe_mul(p.X, fe_sqrt_m1());
  const Fe iy0 = fe_mul(p.Y, fe_sqrt_m1());
  const Fe enchanted = fe_mul(den1, invsqrt_a_minus_d());
  const bool rotate = fe_is_negative(fe_mul(p.T, z_inv));

  const Fe x = fe_select(p.X, iy0, rotate);
  Fe y = fe_select(p.Y, ix0, rotate);
  const Fe den_inv = fe_select(den2, enchanted, rotate);

  y = fe_select(y, fe_neg(y), fe_is_negative(fe_mul(x, z_inv)));
  const Fe s = fe_abs(fe_mul(den_inv, fe_sub(p.Z, y)));
  return fe_to_bytes(s);
}

EdPoint scalar_mul(const EdPoint& p, const ScalarLe& k) noexcept {
  const Row row = multiples(p);
  EdPoint acc = ed_identity();
  for (int i = 63; i >= 0; --i) {
    for (int d = 0; d < 4; ++d) {
      acc = ed_double(acc);
    }
    acc = ed_add(acc, ct_lookup(row, nibble(k, i)));
  }
  return acc;
}

EdPoint scalar_mul_generator(const ScalarLe& k) noexcept {
  const auto& table = generator_table();
  EdPoint acc = ed_identity();
  for (int i = 0; i < 64; ++i) {
    acc = ed_add(acc, ct_lookup(table[i], nibble(k, i)));
  }
  return acc;
}

EdPoint double_scalar_mul(const EdPoint& y, const ScalarLe& e, const ScalarLe& s) noexcept {
  const Row y_row = multiples(y);
  const Row& g_row = generator_table()[0];
  EdPoint acc = ed_identity();
  for (int i = 63; i >= 0; --i) {
    for (int d = 0; d < 4; ++d) {
      acc = ed_double(acc);
    }
    if (const int ne = nibble(e, i); ne != 0) {
      acc = ed_add(acc, y_row[ne]);
    }
    if (const int ns = nibble(s, i); ns != 0) {
      acc = ed_add(acc, g_row[ns]);
    }
  }
  return acc;
}

}  // namespace semecs::detail
