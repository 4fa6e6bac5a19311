#pragma once

#include "octolat/grid.hpp"
#include "octolat/octonion.hpp"
#include "octolat/weyl.hpp"

namespace octolat {

enum class DiffDir { forward, backward };

template <typename V>
GridFunction<V> diff(const GridFunction<V>& f, int axis, DiffDir dir) {
  return dir == DiffDir::forward ? fdiff(f, axis) : bdiff(f, axis);
}

/// Sup norm over support of the pointwise value norms.
inline double value_sup_norm(double v) { return v < 0 ? -v : v; }
inline double value_sup_norm(const Octonion& v) { return oct_sup_norm(v); }
inline double value_sup_norm(const ModuleElement& v) { return v.sup_norm(); }

template <typename V>
double grid_sup_norm(const GridFunction<V>& f) {
  double m = 0.0;
  for (const auto& [p, v] : f.values) m = std::max(m, value_sup_norm(v));
  return m;
}

// ============================================================================
// Octonion-coefficient operators
// ============================================================================

/// Dirac-type operator sum_j e_j d_j with one-sided differences; conjugated
/// flips the sign of every imaginary unit, leaving e_0 alone.
inline GridFunction<Octonion> apply_cr(const GridFunction<Octonion>& f, DiffDir dir,
                                       bool conjugated = false) {
  GridFunction<Octonion> out;
  out.h = f.h;
  for (int j = 0; j < 8; ++j) {
    const double sign = (conjugated && j > 0) ? -1.0 : 1.0;
    const Octonion unit = Octonion::unit(j) * sign;
    const GridFunction<Octonion> dj = diff(f, j, dir);
    for (const auto& [p, v] : dj.values) out.add(p, oct_mul(unit, v));
  }
  return out;
}

/// Star Laplacian: sum_j [f(m+e_j) - 2 f(m) + f(m-e_j)] / h^2.
template <typename V>
GridFunction<V> apply_laplacian(const GridFunction<V>& f) {
  GridFunction<V> out;
  out.h = f.h;
  const double inv_h2 = 1.0 / (f.h * f.h);
  for (const auto& [p, v] : f.values) {
    out.add(p, v * (-16.0 * inv_h2));
    for (int j = 0; j < 8; ++j) {
      out.add(shifted(p, j, +1), v * inv_h2);
      out.add(shifted(p, j, -1), v * inv_h2);
    }
  }
  return out;
}

/// (1/2)(D+ Dbar- + D- Dbar+) f - Laplacian f; identically zero.
inline GridFunction<Octonion> classic_factorization_residual(const GridFunction<Octonion>& f) {
  GridFunction<Octonion> out;
  out.h = f.h;
  const GridFunction<Octonion> a = apply_cr(apply_cr(f, DiffDir::backward, true), DiffDir::forward);
  const GridFunction<Octonion> b = apply_cr(apply_cr(f, DiffDir::forward, true), DiffDir::backward);
  for (const auto& [p, v] : a.values) out.add(p, v * 0.5);
  for (const auto& [p, v] : b.values) out.add(p, v * 0.5);
  for (const auto& [p, v] : apply_laplacian(f).values) out.add(p, -v);
  return out;
}

// ============================================================================
// Split-unit operators
// ============================================================================

/// Which split sign rides the forward difference; the other takes the
/// backward one. The pairing is the same whether the units multiply from the
/// left or from the right.
enum class WeylVariant { plus_minus, minus_plus };

constexpr SplitGenerator forward_unit(WeylVariant v, int axis) {
  return v == WeylVariant::plus_minus ? eplus(axis) : eminus(axis);
}

constexpr SplitGenerator backward_unit(WeylVariant v, int axis) {
  return v == WeylVariant::plus_minus ? eminus(axis) : eplus(axis);
}

inline GridFunction<ModuleElement> embed_grid(const GridFunction<Octonion>& f) {
  GridFunction<ModuleElement> out;
  out.h = f.h;
  for (const auto& [p, v] : f.values) out.set(p, embed_oct(v));
  return out;
}

/// First application: units multiply the embedded octonion differences from
/// the left, products kept as written (degree 2).
inline GridFunction<ModuleElement> apply_weyl(const GridFunction<Octonion>& f, WeylVariant v) {
  GridFunction<ModuleElement> out;
  out.h = f.h;
  for (int j = 0; j < 8; ++j) {
    const GridFunction<Octonion> df = fdiff(f, j);
    const GridFunction<Octonion> db = bdiff(f, j);
    for (const auto& [p, x] : df.values) out.add(p, lmul_gen(forward_unit(v, j), embed_oct(x)));
    for (const auto& [p, x] : db.values) out.add(p, lmul_gen(backward_unit(v, j), embed_oct(x)));
  }
  return out;
}

/// Units multiplying from the right, differences falling on g, with the same
/// sign pairing as the left-sided operator of the given variant; the pairs
/// carry g's unit in the first slot and the operator unit in the second.
inline GridFunction<ModuleElement> apply_weyl_right(const GridFunction<Octonion>& g,
                                                    WeylVariant v) {
  GridFunction<ModuleElement> out;
  out.h = g.h;
  for (int j = 0; j < 8; ++j) {
    const GridFunction<Octonion> df = fdiff(g, j);
    const GridFunction<Octonion> db = bdiff(g, j);
    for (const auto& [p, x] : df.values) out.add(p, rmul_gen(embed_oct(x), forward_unit(v, j)));
    for (const auto& [p, x] : db.values) out.add(p, rmul_gen(embed_oct(x), backward_unit(v, j)));
  }
  return out;
}

/// Second application onto an element-valued grid; the convention decides how
/// the incoming unit meets the stored products.
inline GridFunction<ModuleElement> apply_weyl_step(const GridFunction<ModuleElement>& F,
                                                   WeylVariant v, MulConvention conv) {
  GridFunction<ModuleElement> out;
  out.h = F.h;
  for (int j = 0; j < 8; ++j) {
    const GridFunction<ModuleElement> df = fdiff(F, j);
    const GridFunction<ModuleElement> db = bdiff(F, j);
    for (const auto& [p, x] : df.values) out.add(p, lmul_gen(forward_unit(v, j), x, conv));
    for (const auto& [p, x] : db.values) out.add(p, lmul_gen(backward_unit(v, j), x, conv));
  }
  return out;
}

inline GridFunction<ModuleElement> weyl_square(const GridFunction<Octonion>& f, WeylVariant v,
                                               MulConvention conv) {
  return apply_weyl_step(apply_weyl(f, v), v, conv);
}

/// Squared operator plus the embedded Laplacian; identically zero under the
/// flat convention.
inline GridFunction<ModuleElement> weyl_square_residual(const GridFunction<Octonion>& f,
                                                        WeylVariant v, MulConvention conv) {
  GridFunction<ModuleElement> out = weyl_square(f, v, conv);
  for (const auto& [p, x] : apply_laplacian(f).values) out.add(p, embed_oct(x));
  return out;
}

/// Degree-3 part of the squared operator; under the flat convention it
/// cancels pointwise before the scalar part is even compared.
inline double weyl_square_degree3_sup(const GridFunction<Octonion>& f, WeylVariant v,
                                      MulConvention conv) {
  const GridFunction<ModuleElement> sq = weyl_square(f, v, conv);
  double m = 0.0;
  for (const auto& [p, x] : sq.values) m = std::max(m, x.component(3).sup_norm());
  return m;
}

/// Rewrites each triple a*(b*c) by first undoing the nesting, (a*b)*c taken
/// with the anti-associative sign, then reducing a*b. Lower degrees pass
/// through. Satisfies reduce_leading(nested product) == -(flat product).
inline ModuleElement reduce_leading(const ModuleElement& e) {
  ElementAccumulator acc;
  for (const auto& [m, c] : e) {
    if (m.degree() < 3) {
      acc.add(m, c);
      continue;
    }
    const detail::PairNF nf = detail::canon_pair_nf(m.slot_a(), m.slot_b());
    if (nf.unit_coeff != 0.0) acc.add(RawMonomial::gen(m.slot_c()), -c * nf.unit_coeff);
    if (nf.pair_coeff != 0.0) {
      acc.add(RawMonomial::triple(nf.pair.slot_b(), nf.pair.slot_c(), m.slot_c()),
              c * nf.pair_coeff);
    }
  }
  return acc.take();
}

inline GridFunction<ModuleElement> reduce_leading(const GridFunction<ModuleElement>& F) {
  GridFunction<ModuleElement> out;
  out.h = F.h;
  for (const auto& [p, x] : F.values) out.set(p, reduce_leading(x));
  return out;
}

}  // namespace octolat
