#pragma once

#include <cstdlib>
#include <map>

#include "octolat/grid.hpp"
#include "octolat/octonion.hpp"
#include "octolat/operators.hpp"
#include "octolat/weyl.hpp"

namespace octolat {

/// Pointwise integrand of the two-sided identity: the right-operator term
/// acting on f minus g times the left-operator term. Purely degree 3; its
/// support sits inside supp f union supp g.
inline GridFunction<ModuleElement> stokes_density(const GridFunction<Octonion>& f,
                                                  const GridFunction<Octonion>& g) {
  const GridFunction<ModuleElement> right = apply_weyl_right(g, WeylVariant::minus_plus);
  const GridFunction<ModuleElement> left = apply_weyl(f, WeylVariant::plus_minus);
  GridFunction<ModuleElement> out;
  out.h = f.h;
  for (const auto& [p, fv] : f.values) {
    const ModuleElement r = right.at(p);
    if (!r.empty()) out.add(p, rmul_oct(r, fv));
  }
  for (const auto& [p, gv] : g.values) {
    const ModuleElement l = left.at(p);
    if (!l.empty()) out.add(p, -lmul_oct(gv, l));
  }
  return out;
}

inline ModuleElement stokes_sum(const GridFunction<ModuleElement>& density,
                                Region region = Region::whole()) {
  return lattice_sum(density, region);
}

// ============================================================================
// Telescoping oracle
// ============================================================================

namespace detail {

/// sum over the region of a(m) b(m+e_j) - a(m-e_j) b(m): the exact pairwise
/// telescope along axis j. Evaluated straight off the two grids.
inline double telescope_sum(const GridFunction<Octonion>& a, int ca,
                            const GridFunction<Octonion>& b, int cb, int axis, Region region) {
  double s = 0.0;
  for (const auto& [p, av] : a.values) {
    const double ai = av[ca];
    if (ai == 0.0) continue;
    // a(m) b(m+e_j) for m = p
    if (region.contains(p)) s += ai * b.at(shifted(p, axis, +1))[cb];
    // a(m-e_j) b(m) for m = p + e_j
    const LatticePoint q = shifted(p, axis, +1);
    if (region.contains(q)) s -= ai * b.at(q)[cb];
  }
  return s;
}

}  // namespace detail

/// Independent evaluation of the region sum of the density: assembles, for
/// every axis and component pair, the telescoped coefficient of each triple
/// directly from f and g, never touching the density or the operators. The
/// coefficient weight is h^8 with the difference-quotient 1/h absorbed, which
/// keeps the agreement with the region sum exact at every h.
inline ModuleElement telescope_residue(const GridFunction<Octonion>& f,
                                       const GridFunction<Octonion>& g, Region region) {
  double h7 = 1.0;
  for (int k = 0; k < 7; ++k) h7 *= f.h;
  ElementAccumulator acc;
  for (int j = 0; j < 8; ++j) {
    for (int i = 0; i < 8; ++i) {
      for (int k = 0; k < 8; ++k) {
        const double s_fwd = detail::telescope_sum(g, i, f, k, j, region);
        const double s_bwd = detail::telescope_sum(f, k, g, i, j, region);
        if (s_fwd == 0.0 && s_bwd == 0.0) continue;
        for (SplitSign t : {SplitSign::plus, SplitSign::minus}) {
          const SplitGenerator gi{static_cast<std::uint8_t>(i), t};
          for (SplitSign u : {SplitSign::plus, SplitSign::minus}) {
            const SplitGenerator fk{static_cast<std::uint8_t>(k), u};
            acc.add(RawMonomial::triple(gi, eplus(j), fk), -h7 * s_fwd);
            acc.add(RawMonomial::triple(gi, eminus(j), fk), -h7 * s_bwd);
          }
        }
      }
    }
  }
  return acc.take();
}

// ============================================================================
// Boundary readings for the half-space identities
// ============================================================================

enum class HalfSide { upper, lower };

/// Summation domain for a half-space run: base 1 gives m_7 >= 1 / m_7 <= -1,
/// the convention whose boundary couples the layer pairs (0,1) and (-1,0);
/// base 0 shifts both cuts one step toward the other side.
constexpr Region half_region(HalfSide side, int base_layer = 1) {
  return side == HalfSide::upper ? Region::upper(base_layer) : Region::lower(-base_layer);
}

/// How the surviving layer-pair products are turned into module elements.
/// SlotPreserving keeps each component product attached to its own split
/// units, the conormal unit in the middle slot. OctonionFirst multiplies the
/// layer values as octonions first and only then attaches the conormal unit
/// from the left.
enum class BoundaryInterpretation { octonion_first, slot_preserving };

inline const char* interpretation_name(BoundaryInterpretation i) {
  return i == BoundaryInterpretation::slot_preserving ? "SlotPreserving" : "OctonionFirst";
}

namespace detail {

/// Accumulates the boundary bracket of one ordered layer pair: a drawn from
/// layer la, b from layer lb, conormal unit e_7 with the given split sign.
inline void boundary_pair(const GridFunction<Octonion>& a, int la, const GridFunction<Octonion>& b,
                          int lb, SplitSign conormal, double weight,
                          BoundaryInterpretation interp, ElementAccumulator& acc) {
  const SplitGenerator e7{7, conormal};
  for (const auto& [p, av] : a.values) {
    if (p[kDim - 1] != la) continue;
    LatticePoint q = p;
    q[kDim - 1] = lb;
    const Octonion bv = b.at(q);
    if (is_zero(bv)) continue;
    if (interp == BoundaryInterpretation::slot_preserving) {
      for (int i = 0; i < 8; ++i) {
        if (av[i] == 0.0) continue;
        for (int k = 0; k < 8; ++k) {
          if (bv[k] == 0.0) continue;
          const double c = weight * av[i] * bv[k];
          for (SplitSign t : {SplitSign::plus, SplitSign::minus}) {
            const SplitGenerator gi{static_cast<std::uint8_t>(i), t};
            for (SplitSign u : {SplitSign::plus, SplitSign::minus}) {
              const SplitGenerator fk{static_cast<std::uint8_t>(k), u};
              acc.add(RawMonomial::triple(gi, e7, fk), c);
            }
          }
        }
      }
    } else {
      acc.add(lmul_gen(e7, embed_oct(oct_mul(av, bv))), weight);
    }
  }
}

}  // namespace detail

/// Closed-form boundary value of a half-space sum: layer pairs (0,1) for the
/// upper side, (-1,0) with a leading minus for the lower side, combined under
/// the chosen interpretation. The layer pairs are fixed and do not move with
/// the summation-domain convention; running a shifted domain exposes the
/// mismatch on purpose.
inline ModuleElement boundary_rhs(const GridFunction<Octonion>& f, const GridFunction<Octonion>& g,
                                  HalfSide side, BoundaryInterpretation interp) {
  double h7 = 1.0;
  for (int k = 0; k < 7; ++k) h7 *= f.h;
  ElementAccumulator acc;
  if (side == HalfSide::upper) {
    detail::boundary_pair(g, 0, f, 1, SplitSign::plus, h7, interp, acc);
    detail::boundary_pair(g, 1, f, 0, SplitSign::minus, h7, interp, acc);
  } else {
    detail::boundary_pair(g, -1, f, 0, SplitSign::plus, -h7, interp, acc);
    detail::boundary_pair(g, 0, f, -1, SplitSign::minus, -h7, interp, acc);
  }
  return acc.take();
}

/// Four-way comparison for one half-space run: region sum, independent
/// telescoping oracle, and the stated boundary value under both readings.
struct HalfSpaceComparison {
  HalfSide side = HalfSide::upper;
  int base_layer = 1;
  ModuleElement lhs;        // stokes_sum over the half region
  ModuleElement telescope;  // telescope_residue over the same region
  ModuleElement rhs_octonion_first;
  ModuleElement rhs_slot_preserving;

  double lhs_vs_telescope() const { return (lhs - telescope).sup_norm(); }
  double lhs_vs_rhs(BoundaryInterpretation i) const {
    const ModuleElement& r =
        i == BoundaryInterpretation::slot_preserving ? rhs_slot_preserving : rhs_octonion_first;
    return (lhs - r).sup_norm();
  }
};

inline HalfSpaceComparison half_space_compare(const GridFunction<Octonion>& f,
                                              const GridFunction<Octonion>& g, HalfSide side,
                                              int base_layer = 1) {
  HalfSpaceComparison cmp;
  cmp.side = side;
  cmp.base_layer = base_layer;
  const Region region = half_region(side, base_layer);
  cmp.lhs = stokes_sum(stokes_density(f, g), region);
  cmp.telescope = telescope_residue(f, g, region);
  cmp.rhs_octonion_first = boundary_rhs(f, g, side, BoundaryInterpretation::octonion_first);
  cmp.rhs_slot_preserving = boundary_rhs(f, g, side, BoundaryInterpretation::slot_preserving);
  return cmp;
}

// ============================================================================
// Associator probe
// ============================================================================

/// h^8 sum over m of the associators [e_j, (D g_j)(m), f(m)], one per scalar
/// component g_j of g, with D built from one-sided differences in the chosen
/// direction. Vanishing of the two-sided identity does not force this to
/// vanish; it does collapse for real-valued data.
inline Octonion associator_probe(const GridFunction<Octonion>& f, const GridFunction<Octonion>& g,
                                 DiffDir dir = DiffDir::forward) {
  GridFunction<Octonion> acc;
  acc.h = f.h;
  for (int j = 0; j < 8; ++j) {
    // scalar component g_j as a real-valued grid
    GridFunction<Octonion> gj;
    gj.h = g.h;
    for (const auto& [p, v] : g.values) gj.set(p, Octonion::real(v[j]));
    const GridFunction<Octonion> dgj = apply_cr(gj, dir);
    const Octonion ej = Octonion::unit(j);
    for (const auto& [p, d] : dgj.values) {
      const Octonion fv = f.at(p);
      if (is_zero(fv)) continue;
      acc.add(p, associator(ej, d, fv));
    }
  }
  return lattice_sum(acc);
}

}  // namespace octolat
