#include <catch2/catch_amalgamated.hpp>

#include "octolat/stokes.hpp"

using namespace octolat;

namespace {

LatticePoint origin_pt() { return LatticePoint{}; }

LatticePoint layer7(int m7) {
  LatticePoint p{};
  p[7] = m7;
  return p;
}

GridFunction<Octonion> point_mass(const Octonion& x, LatticePoint p = {}, double h = 1.0) {
  GridFunction<Octonion> f;
  f.h = h;
  f.set(p, x);
  return f;
}

ModuleElement sum_canonicalized(const GridFunction<ModuleElement>& density, Region region) {
  GridFunction<ModuleElement> c;
  c.h = density.h;
  for (const auto& [p, x] : density.values) c.set(p, canonicalize(x));
  return lattice_sum(c, region);
}

// all four sign spreads of Triple(e_i^t, mid, e_k^v) with one coefficient
ModuleElement spread_triple(int i, SplitGenerator mid, int k, double c) {
  ModuleElement e;
  for (SplitSign t : {SplitSign::plus, SplitSign::minus}) {
    for (SplitSign v : {SplitSign::plus, SplitSign::minus}) {
      e.add_term(RawMonomial::triple(SplitGenerator{static_cast<std::uint8_t>(i), t}, mid,
                                     SplitGenerator{static_cast<std::uint8_t>(k), v}),
                 c);
    }
  }
  return e;
}

}  // namespace

TEST_CASE("whole-space sum vanishes on seeded pairs, raw and canonicalized") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const GridFunction<Octonion> f =
        random_gridfn(2 * seed + 1, LatticeWindow::centered(1), 24, 3);
    const GridFunction<Octonion> g =
        random_gridfn(2 * seed + 2, LatticeWindow::centered(1), 24, 3);
    const GridFunction<ModuleElement> density = stokes_density(f, g);
    CHECK(stokes_sum(density).empty());
    CHECK(sum_canonicalized(density, Region::whole()).empty());
    CHECK(telescope_residue(f, g, Region::whole()).empty());
  }
}

TEST_CASE("density is purely degree 3 and supported where f or g live") {
  const GridFunction<Octonion> f = random_gridfn(5u, LatticeWindow::centered(1), 0, 3);
  const GridFunction<Octonion> g = random_gridfn(6u, LatticeWindow::centered(1), 0, 3);
  const GridFunction<ModuleElement> density = stokes_density(f, g);
  CHECK(!density.values.empty());
  for (const auto& [p, x] : density.values) {
    CHECK(x.component(3) == x);
    CHECK((f.values.count(p) + g.values.count(p)) > 0);
  }
}

TEST_CASE("coincident point masses cancel pointwise") {
  // both bracket terms generate the same triples at the shared point, so the
  // density itself is zero, not only its sum
  const GridFunction<Octonion> f = point_mass(Octonion::unit(1));
  const GridFunction<Octonion> g = point_mass(Octonion::unit(2));
  CHECK(stokes_density(f, g).values.empty());
}

TEST_CASE("offset point masses produce the frozen density") {
  const GridFunction<Octonion> f = point_mass(Octonion::unit(1));
  const GridFunction<Octonion> g = point_mass(Octonion::unit(2), layer7(1));
  const GridFunction<ModuleElement> density = stokes_density(f, g);
  REQUIRE(density.values.size() == 2);
  const ModuleElement expected = spread_triple(2, eminus(7), 1, 1.0);
  CHECK(density.at(origin_pt()) == -expected);
  CHECK(density.at(layer7(1)) == expected);
  CHECK(stokes_sum(density).empty());
  // only the mass at layer 1 sits in the upper region
  CHECK(stokes_sum(density, Region::upper(1)) == expected);
  CHECK(telescope_residue(f, g, Region::upper(1)) == expected);
  CHECK(boundary_rhs(f, g, HalfSide::upper, BoundaryInterpretation::slot_preserving) == expected);
  // the octonion-first reading collapses to degree 2 and cannot match
  const ModuleElement i1 =
      boundary_rhs(f, g, HalfSide::upper, BoundaryInterpretation::octonion_first);
  CHECK(i1.max_degree() == 2);
  CHECK(i1 != expected);
}

TEST_CASE("separated supports yield a vanishing density") {
  const GridFunction<Octonion> f = point_mass(Octonion::unit(1));
  LatticePoint far{};
  far[0] = 3;
  const GridFunction<Octonion> g = point_mass(Octonion::unit(2), far);
  CHECK(stokes_density(f, g).values.empty());
  CHECK(telescope_residue(f, g, Region::upper(1)).empty());
  CHECK(boundary_rhs(f, g, HalfSide::upper, BoundaryInterpretation::slot_preserving).empty());
}

TEST_CASE("half-space sum reduces to the whole-space identity away from the cut") {
  // supports strictly above layer 3: the upper sum sees every density point
  LatticeWindow w = LatticeWindow::centered(1);
  w.origin[7] = 3;
  const GridFunction<Octonion> f = random_gridfn(11u, w, 16, 3);
  const GridFunction<Octonion> g = random_gridfn(12u, w, 16, 3);
  CHECK(stokes_sum(stokes_density(f, g), Region::upper(1)).empty());
  CHECK(telescope_residue(f, g, Region::upper(1)).empty());
  CHECK(boundary_rhs(f, g, HalfSide::upper, BoundaryInterpretation::slot_preserving).empty());
  CHECK(boundary_rhs(f, g, HalfSide::upper, BoundaryInterpretation::octonion_first).empty());
}

TEST_CASE("printed single-mass boundary golden") {
  // f massed on layer 1, g on layer 0, both real units
  const GridFunction<Octonion> f = point_mass(Octonion::unit(0), layer7(1));
  const GridFunction<Octonion> g = point_mass(Octonion::unit(0));
  const ModuleElement expected = spread_triple(0, eplus(7), 0, 1.0);
  CHECK(telescope_residue(f, g, Region::upper(1)) == expected);
  CHECK(stokes_sum(stokes_density(f, g), Region::upper(1)) == expected);
  CHECK(boundary_rhs(f, g, HalfSide::upper, BoundaryInterpretation::slot_preserving) == expected);
  // octonion-first reading: degree-2 pairs with the conormal in front
  ModuleElement i1;
  i1.add_term(RawMonomial::pair(eplus(7), eplus(0)), 1.0);
  i1.add_term(RawMonomial::pair(eplus(7), eminus(0)), 1.0);
  CHECK(boundary_rhs(f, g, HalfSide::upper, BoundaryInterpretation::octonion_first) == i1);
}

TEST_CASE("half-space comparisons agree with the oracle on straddling seeds") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const GridFunction<Octonion> f =
        random_gridfn(100 + 2 * seed, LatticeWindow::centered(1), 20, 3);
    const GridFunction<Octonion> g =
        random_gridfn(101 + 2 * seed, LatticeWindow::centered(1), 20, 3);
    for (HalfSide side : {HalfSide::upper, HalfSide::lower}) {
      const HalfSpaceComparison cmp = half_space_compare(f, g, side);
      CHECK(cmp.lhs_vs_telescope() == 0.0);
      CHECK(cmp.lhs_vs_rhs(BoundaryInterpretation::slot_preserving) == 0.0);
    }
  }
}

TEST_CASE("partition of the whole lattice") {
  const GridFunction<Octonion> f = random_gridfn(201u, LatticeWindow::centered(1), 20, 3);
  const GridFunction<Octonion> g = random_gridfn(202u, LatticeWindow::centered(1), 20, 3);
  const GridFunction<ModuleElement> density = stokes_density(f, g);
  const ModuleElement whole = stokes_sum(density);
  const ModuleElement parts = stokes_sum(density, Region::upper(1)) +
                              stokes_sum(density, Region::lower(-1)) +
                              stokes_sum(density, Region::slab(0));
  CHECK(whole == parts);
  CHECK(whole.empty());
  // upper + lower residues and the middle slab also cancel via the oracle
  const ModuleElement oracle_parts = telescope_residue(f, g, Region::upper(1)) +
                                     telescope_residue(f, g, Region::lower(-1)) +
                                     telescope_residue(f, g, Region::slab(0));
  CHECK(oracle_parts.empty());
}

TEST_CASE("translation invariance along the first seven axes") {
  const GridFunction<Octonion> f0 = random_gridfn(301u, LatticeWindow::centered(1), 10, 3);
  const GridFunction<Octonion> g0 = random_gridfn(302u, LatticeWindow::centered(1), 10, 3);
  GridFunction<Octonion> f1, g1;
  f1.h = g1.h = 1.0;
  for (const auto& [p, v] : f0.values) f1.set(shifted(shifted(p, 0, 2), 4, -1), v);
  for (const auto& [p, v] : g0.values) g1.set(shifted(shifted(p, 0, 2), 4, -1), v);
  for (HalfSide side : {HalfSide::upper, HalfSide::lower}) {
    const HalfSpaceComparison a = half_space_compare(f0, g0, side);
    const HalfSpaceComparison b = half_space_compare(f1, g1, side);
    CHECK(a.lhs == b.lhs);
    CHECK(a.telescope == b.telescope);
    CHECK(a.rhs_slot_preserving == b.rhs_slot_preserving);
    CHECK(a.rhs_octonion_first == b.rhs_octonion_first);
  }
}

TEST_CASE("fractional meshes keep the identities exact") {
  // h = 1/2: every weight is a power of two, so equality stays bitwise
  const GridFunction<Octonion> f = random_gridfn(401u, LatticeWindow::centered(1), 16, 3, 0.5);
  const GridFunction<Octonion> g = random_gridfn(402u, LatticeWindow::centered(1), 16, 3, 0.5);
  CHECK(stokes_sum(stokes_density(f, g)).empty());
  for (HalfSide side : {HalfSide::upper, HalfSide::lower}) {
    const HalfSpaceComparison cmp = half_space_compare(f, g, side);
    CHECK(cmp.lhs_vs_telescope() == 0.0);
    CHECK(cmp.lhs_vs_rhs(BoundaryInterpretation::slot_preserving) == 0.0);
  }
}

TEST_CASE("shifted summation domain exposes the printed-layer mismatch") {
  // base layer 0 moves the cut; the telescope follows the domain, the
  // printed right-hand side does not
  const GridFunction<Octonion> f = point_mass(Octonion::unit(0), layer7(0));
  const GridFunction<Octonion> g = point_mass(Octonion::unit(0), layer7(-1));
  const HalfSpaceComparison cmp = half_space_compare(f, g, HalfSide::upper, 0);
  CHECK(cmp.lhs_vs_telescope() == 0.0);
  CHECK(!cmp.lhs.empty());
  CHECK(cmp.lhs_vs_rhs(BoundaryInterpretation::slot_preserving) > 0.0);
}

TEST_CASE("associator probe on crossed unit masses") {
  const GridFunction<Octonion> f = point_mass(Octonion::unit(2));
  const GridFunction<Octonion> g = point_mass(Octonion::unit(1));
  Octonion expected;  // 2e7 - 2e6 + 2e5 - 2e3
  expected[7] = 2.0;
  expected[6] = -2.0;
  expected[5] = 2.0;
  expected[3] = -2.0;
  CHECK(associator_probe(f, g) == expected);
  CHECK(associator_probe(f, g, DiffDir::backward) == -expected);
  // the whole-space sum stays zero for the same data
  CHECK(stokes_sum(stokes_density(f, g)).empty());
}

TEST_CASE("associator probe vanishes for real data and disjoint supports") {
  const GridFunction<Octonion> fr = point_mass(Octonion::real(3.0));
  const GridFunction<Octonion> gr = point_mass(Octonion::real(-2.0));
  CHECK(is_zero(associator_probe(fr, gr)));
  const GridFunction<Octonion> f = random_gridfn(501u, LatticeWindow::centered(1), 12, 3);
  const GridFunction<Octonion> g = random_gridfn(502u, LatticeWindow::centered(1), 12, 3);
  CHECK(is_zero(associator_probe(real_part_only(f), real_part_only(g))));
  LatticePoint far{};
  far[2] = 5;
  CHECK(is_zero(associator_probe(point_mass(Octonion::unit(1)),
                                 point_mass(Octonion::unit(2), far))));
}

TEST_CASE("probe is generically nonzero while the sum is zero") {
  int nonzero = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const GridFunction<Octonion> f =
        random_gridfn(600 + 2 * seed, LatticeWindow::centered(1), 16, 3);
    const GridFunction<Octonion> g =
        random_gridfn(601 + 2 * seed, LatticeWindow::centered(1), 16, 3);
    CHECK(stokes_sum(stokes_density(f, g)).empty());
    if (!is_zero(associator_probe(f, g))) ++nonzero;
  }
  CHECK(nonzero > 0);
}
